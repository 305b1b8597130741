// Exact coefficient arithmetic: multivariate integer polynomials in named
// parameters and the field of reduced fractions built from them.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

namespace lbc {

using Int = boost::multiprecision::cpp_int;

// Power product of parameters, e.g. c^2*k. Kept sorted by name, exponents > 0.
using ParamMono = std::vector<std::pair<std::string, int>>;

// True lexicographic monomial order (earlier parameter name = more significant,
// higher exponent = larger). Multiplicative, so leading-term division works.
struct ParamMonoLess {
    bool operator()(const ParamMono &a, const ParamMono &b) const;
};

// Multivariate polynomial over Int. No zero coefficients stored.
class PPoly {
  public:
    using Terms = std::map<ParamMono, Int, ParamMonoLess>;

    PPoly() = default;
    explicit PPoly(Int n);
    explicit PPoly(long n) : PPoly(Int(n)) {}
    static PPoly param(const std::string &name, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (coefficient of the empty monomial).
    Int constant() const;
    const Terms &terms() const { return terms_; }

    PPoly operator-() const;
    PPoly operator+(const PPoly &o) const;
    PPoly operator-(const PPoly &o) const;
    PPoly operator*(const PPoly &o) const;
    bool operator==(const PPoly &o) const { return terms_ == o.terms_; }
    bool operator!=(const PPoly &o) const { return !(*this == o); }

    // Leading term under the monomial order.
    const std::pair<const ParamMono, Int> &leading() const;
    int degree_in(const std::string &name) const;
    std::vector<std::string> variables() const;

    // GCD of all integer coefficients, non-negative.
    Int int_content() const;
    PPoly divided_by_int(const Int &d) const;

    // Exact division; aborts if not divisible (internal use after gcd).
    PPoly divexact(const PPoly &d) const;

    // Substitute a parameter by a constant.
    PPoly substituted(const std::string &name, const Int &value) const;

    void add_term(const ParamMono &m, const Int &c);

    std::string str() const;

  private:
    Terms terms_;
};

PPoly gcd(const PPoly &a, const PPoly &b);

// Element of Q(parameters): reduced fraction of integer polynomials.
// Invariants: den != 0, gcd(num, den) = 1 (including integer content up to
// sign), leading coefficient of den positive. Equality is structural.
class Coeff {
  public:
    Coeff() : num_(), den_(Int(1)) {}
    Coeff(long n) : num_(Int(n)), den_(Int(1)) {}
    Coeff(long n, long d);
    Coeff(Int n) : num_(std::move(n)), den_(Int(1)) {}
    Coeff(PPoly n, PPoly d);
    explicit Coeff(PPoly n) : num_(std::move(n)), den_(Int(1)) {}
    static Coeff param(const std::string &name);
    static Coeff rational(const Int &n, const Int &d);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    const PPoly &num() const { return num_; }
    const PPoly &den() const { return den_; }

    Coeff operator-() const;
    Coeff operator+(const Coeff &o) const;
    Coeff operator-(const Coeff &o) const;
    Coeff operator*(const Coeff &o) const;
    Coeff operator/(const Coeff &o) const;
    Coeff &operator+=(const Coeff &o) { return *this = *this + o; }
    Coeff &operator-=(const Coeff &o) { return *this = *this - o; }
    Coeff &operator*=(const Coeff &o) { return *this = *this * o; }
    Coeff &operator/=(const Coeff &o) { return *this = *this / o; }
    Coeff inverse() const;

    bool operator==(const Coeff &o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Coeff &o) const { return !(*this == o); }

    Coeff substituted(const std::string &name, const Int &value) const;

    // Printed form, e.g. "3/2", "c", "-(k+2)" as "(-k-2)" style kept simple.
    std::string str() const;

  private:
    void reduce();
    PPoly num_, den_;
};

} // namespace lbc
