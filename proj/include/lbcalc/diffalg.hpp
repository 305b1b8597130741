// Differential polynomial algebra P_l: jet variables u_i^(n), total and
// partial derivatives, matrix differential operators and lambda-symbols.
#pragma once

#include "lbcalc/coeff.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lbc {

// Jet variable u_i^(n): generator index (0-based) and derivative order.
struct DerivVar {
    int gen = 0;
    int ord = 0;
    friend bool operator==(const DerivVar &a, const DerivVar &b) {
        return a.gen == b.gen && a.ord == b.ord;
    }
    friend bool operator<(const DerivVar &a, const DerivVar &b) {
        return a.gen != b.gen ? a.gen < b.gen : a.ord < b.ord;
    }
};

// Power product of DerivVars, sorted, exponents > 0.
using Mono = std::vector<std::pair<DerivVar, int>>;

struct MonoLess {
    bool operator()(const Mono &a, const Mono &b) const;
};

Mono mono_mul(const Mono &a, const Mono &b);
int mono_total_degree(const Mono &a);
int mono_max_order(const Mono &a);

// Element of P_l over Q(parameters). Canonical: no zero coefficients.
class DiffPoly {
  public:
    using Terms = std::map<Mono, Coeff, MonoLess>;

    DiffPoly() = default;
    explicit DiffPoly(Coeff c);
    DiffPoly(long n) : DiffPoly(Coeff(n)) {}
    static DiffPoly var(int gen, int ord = 0);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Coeff constant_term() const;
    const Terms &terms() const { return terms_; }

    DiffPoly operator-() const;
    DiffPoly operator+(const DiffPoly &o) const;
    DiffPoly operator-(const DiffPoly &o) const;
    DiffPoly operator*(const DiffPoly &o) const;
    DiffPoly operator*(const Coeff &c) const;
    DiffPoly &operator+=(const DiffPoly &o) { return *this = *this + o; }
    DiffPoly &operator-=(const DiffPoly &o) { return *this = *this - o; }
    bool operator==(const DiffPoly &o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly &o) const { return !(*this == o); }

    int total_degree() const;
    int max_order() const; // max derivative order appearing, -1 if none
    std::vector<DerivVar> variables() const;

    void add_term(const Mono &m, const Coeff &c);

    // Substitute generator -> value (applied to every jet order via the
    // value's total derivatives).
    DiffPoly substituted_gen(int gen, const DiffPoly &value) const;
    DiffPoly param_substituted(const std::string &name, const Int &v) const;

    std::string str(const std::vector<std::string> &gen_names) const;

  private:
    Terms terms_;
};

DiffPoly total_derivative(const DiffPoly &f);
DiffPoly total_derivative(const DiffPoly &f, int times);
DiffPoly partial_derivative(const DiffPoly &f, int gen, int ord);

// Matrix differential operator, entries sum_k f_k d^k with coefficients on
// the left. Degenerate zero operator is rows x cols of empty entries.
class DiffOp {
  public:
    using Entry = std::vector<DiffPoly>; // index = power of d

    DiffOp() = default;
    DiffOp(int rows, int cols);
    static DiffOp scalar(Entry e); // 1x1
    static DiffOp identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Entry &at(int r, int c) const { return e_[size_t(r * cols_ + c)]; }
    void set(int r, int c, Entry e);
    int order() const;

    DiffOp operator+(const DiffOp &o) const;
    DiffOp operator-(const DiffOp &o) const;
    bool operator==(const DiffOp &o) const;
    bool is_zero() const;

    std::string str(const std::vector<std::string> &gen_names) const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Entry> e_;
};

DiffOp diffop_compose(const DiffOp &a, const DiffOp &b);
DiffOp diffop_adjoint(const DiffOp &a);
std::vector<DiffPoly> diffop_apply(const DiffOp &a, const std::vector<DiffPoly> &f);

// Polynomial in lambda with DiffPoly coefficients.
class LambdaPoly {
  public:
    LambdaPoly() = default;
    explicit LambdaPoly(DiffPoly c); // constant in lambda
    static LambdaPoly lambda(int power = 1);

    bool is_zero() const { return c_.empty(); }
    const std::map<int, DiffPoly> &coeffs() const { return c_; }
    DiffPoly coeff(int k) const;
    int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }

    LambdaPoly operator-() const;
    LambdaPoly operator+(const LambdaPoly &o) const;
    LambdaPoly operator-(const LambdaPoly &o) const;
    LambdaPoly operator*(const LambdaPoly &o) const; // lambda commutes with V
    LambdaPoly operator*(const DiffPoly &f) const;
    LambdaPoly &operator+=(const LambdaPoly &o) { return *this = *this + o; }
    bool operator==(const LambdaPoly &o) const { return c_ == o.c_; }
    bool operator!=(const LambdaPoly &o) const { return !(*this == o); }

    void add(int k, const DiffPoly &f);

    std::string str(const std::vector<std::string> &gen_names,
                    const std::string &lambda_name = "l") const;

  private:
    std::map<int, DiffPoly> c_;
};

// (lambda + d)^q applied to a lambda-polynomial; d acts as total derivative
// on the coefficients. sign = -1 gives (-lambda - d)^q.
LambdaPoly lambda_shift_apply(int q, const LambdaPoly &x, int sign = +1);
LambdaPoly lambda_shift_apply(int q, const DiffPoly &x, int sign = +1);

// B(lambda+d)->(x): substitute lambda -> lambda + d in the symbol B, with the
// d-powers acting to the right on x (Remark 5.1 arrow convention).
LambdaPoly arrow_apply(const LambdaPoly &b, const LambdaPoly &x);

// Symbol <-> operator: H(d) entry from its symbol and back.
DiffOp::Entry entry_from_symbol(const LambdaPoly &s);
LambdaPoly symbol_of_entry(const DiffOp::Entry &e);

Int binomial(int n, int k);

} // namespace lbc
