// Truncated Laurent symbols in 1/lambda for pseudodifferential brackets, and
// Dirac reduction of a PVA by constraints.
#pragma once

#include "lbcalc/pva.hpp"

namespace lbc {

// Finite map exponent -> DiffPoly with an explicit truncation floor; every
// operation discards exponents below the floor.
class LaurentSymbol {
  public:
    LaurentSymbol() = default;
    explicit LaurentSymbol(int floor) : floor_(floor) {}
    LaurentSymbol(int floor, const LambdaPoly &p);

    int floor() const { return floor_; }
    const std::map<int, DiffPoly> &coeffs() const { return c_; }
    DiffPoly coeff(int k) const;
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? floor_ - 1 : c_.rbegin()->first; }

    void add(int k, const DiffPoly &f);
    LaurentSymbol operator+(const LaurentSymbol &o) const;
    LaurentSymbol operator-(const LaurentSymbol &o) const;
    LaurentSymbol scaled(const Coeff &c) const;
    bool operator==(const LaurentSymbol &o) const { return floor_ == o.floor_ && c_ == o.c_; }

    // Retruncate to a shallower floor (drop coefficients below it).
    LaurentSymbol truncated(int floor) const;

    std::string str(const std::vector<std::string> &gen_names,
                    const std::string &lambda_name = "l") const;

  private:
    int floor_ = 0;
    std::map<int, DiffPoly> c_;
};

// (lambda + d)^n applied to a symbol; n may be negative (geometric expansion,
// truncated at the floor).
LaurentSymbol binom_apply(int n, const LaurentSymbol &x);

// Composition of symbols: (A o B)(lambda) = A(lambda + d)->B(lambda).
LaurentSymbol symbol_compose(const LaurentSymbol &a, const LaurentSymbol &b);

// Display form of the operator (lambda+d)^n truncated at floor -m:
// list of (k, C(n,k)) for the d^k lambda^{n-k} terms.
std::vector<std::pair<int, Int>> binom_expand(int n, int m);
std::string binom_expand_str(int n, int m);

using SymbolMatrix = std::vector<std::vector<LaurentSymbol>>;

// Inverse of a matrix symbol whose leading coefficient matrix is constant and
// invertible; C o C^-1 = C^-1 o C = 1 within truncation.
SymbolMatrix symbol_invert(const SymbolMatrix &c, int m);
SymbolMatrix symbol_mat_compose(const SymbolMatrix &a, const SymbolMatrix &b);

struct DiracResult {
    // Reduced table over all original generators, constraints not yet set to 0.
    SymbolMatrix full_table;
    // Quotient data when every constraint is a plain generator: remaining
    // generator indices and the reduced table with constraints substituted by 0.
    std::vector<int> kept;
    SymbolMatrix table;
    std::vector<std::string> names;
    bool constraints_central = false; // correction vanished identically
};

DiracResult dirac_reduce(const PvaSpec &s, const std::vector<DiffPoly> &constraints, int m);

struct NlsReport {
    DiracResult reduced_h, reduced_k;
    DiffPoly du_dt, dv_dt; // t_2 flow specialized by the constraint
    Coeff kappa_eff;
    bool shape_ok = false; // du/dt = u'' + kappa_eff u^2 v, dv/dt = -v'' - kappa_eff u v^2
};

// Dirac reduction of V^1(sl2, s) with (e_a|e_m) = (s|s) = -kappa, plus the
// constrained t_2 flow of the homogeneous hierarchy.
NlsReport nls_demo(const Coeff &kappa, int m);

} // namespace lbc
