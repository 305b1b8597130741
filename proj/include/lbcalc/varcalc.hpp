// Variational calculus on the jet algebra: variational and Frechet
// derivatives, exactness tests, homotopy reconstruction, evolutionary fields,
// and the canonical reduction modulo total derivatives.
#pragma once

#include "lbcalc/diffalg.hpp"

#include <optional>

namespace lbc {

using Characteristic = std::vector<DiffPoly>;

// delta f / delta u_i = sum_n (-d)^n df/du_i^(n), for i < ell.
Characteristic variational_derivative(const DiffPoly &f, int ell);

// (D_F)_{ij} = sum_n (dF_i/du_j^(n)) d^n.
DiffOp frechet_derivative(const Characteristic &f, int ell);

// Helmholtz criterion: D_F selfadjoint.
bool is_closed(const Characteristic &f, int ell);

// Canonical representative of f modulo Im d, by leading-term elimination.
// If witness is non-null it receives g with f - reduced = d(g).
DiffPoly reduce_mod_total_derivatives(const DiffPoly &f, DiffPoly *witness = nullptr);

// Witness g with d(g) = f exactly, when one exists.
std::optional<DiffPoly> is_total_derivative(const DiffPoly &f);

// h with delta h / delta u = xi, via the degree vector field inverse applied
// to u.xi. Requires xi closed; throws otherwise.
DiffPoly homotopy_integrate(const Characteristic &xi, int ell);

// Evolutionary vector field X_P applied to f.
DiffPoly evol_apply(const Characteristic &p, const DiffPoly &f);

// [F,G] = X_F G - X_G F.
Characteristic evol_bracket(const Characteristic &f, const Characteristic &g);

// Local functional: density stored as its canonical reduced representative.
class FunctionalClass {
  public:
    FunctionalClass() = default;
    explicit FunctionalClass(const DiffPoly &density)
        : rep_(reduce_mod_total_derivatives(density)) {}

    const DiffPoly &rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool operator==(const FunctionalClass &o) const { return rep_ == o.rep_; }
    bool operator!=(const FunctionalClass &o) const { return !(*this == o); }

    std::string str(const std::vector<std::string> &gen_names) const {
        return rep_.str(gen_names);
    }

  private:
    DiffPoly rep_;
};

// int F.G in V/dV, the pairing of the Lenard lemma.
FunctionalClass pair_functional(const Characteristic &f, const Characteristic &g);

} // namespace lbc
