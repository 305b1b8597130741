// Vertex-algebra lambda-bracket calculus on normally ordered polynomials in
// free generators: Wick formula, quasiassociativity/quasicommutativity
// normalization, Virasoro-form extraction and the Sugawara construction.
#pragma once

#include "lbcalc/liealg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lbc {

// One factor T^m g inside a normally ordered word.
struct VaFactor {
    int gen = 0;
    int tpow = 0;
    friend bool operator==(const VaFactor &a, const VaFactor &b) {
        return a.gen == b.gen && a.tpow == b.tpow;
    }
    friend bool operator<(const VaFactor &a, const VaFactor &b) {
        return a.gen != b.gen ? a.gen < b.gen : a.tpow < b.tpow;
    }
};

// Right-nested word; canonical when sorted by generator ascending and, within
// a generator, T-power descending. The empty word is the vacuum.
using VaWord = std::vector<VaFactor>;

struct VaWordLess {
    bool operator()(const VaWord &a, const VaWord &b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

// Linear combination of canonical words over the coefficient field.
using VaExpr = std::map<VaWord, Coeff, VaWordLess>;

// Bracket value: polynomial in lambda with VaExpr coefficients.
using VaLambda = std::map<int, VaExpr>;

// Generator data and bracket table of a Lie conformal algebra, with central
// elements already evaluated as multiples of the vacuum.
struct LcaSpec {
    std::vector<std::string> names;
    std::vector<int> parity; // 0 even, 1 odd
    std::vector<std::optional<Coeff>> weight;
    std::vector<std::vector<VaLambda>> table;

    int n() const { return int(names.size()); }
};

VaExpr va_zero();
VaExpr va_vacuum();
VaExpr va_gen(int g, int tpow = 0);
VaExpr va_scale(const VaExpr &a, const Coeff &c);
VaExpr va_add(const VaExpr &a, const VaExpr &b);
VaExpr va_sub(const VaExpr &a, const VaExpr &b);
bool va_is_zero(const VaExpr &a);
int word_parity(const LcaSpec &s, const VaWord &w);

// T as a derivation; result in canonical form.
VaExpr t_apply(const LcaSpec &s, const VaExpr &a, int times = 1);

// Normally ordered product :ab: in canonical form.
VaExpr no_product(const LcaSpec &s, const VaExpr &a, const VaExpr &b);

// [a_l b] by sesquilinearity, skewsymmetry and the non-commutative Wick
// formula over the generator table.
VaLambda va_bracket(const LcaSpec &s, const VaExpr &a, const VaExpr &b);

VaLambda va_lambda_scale(const VaLambda &a, const Coeff &c);
VaLambda va_lambda_add(const VaLambda &a, const VaLambda &b);
bool va_lambda_is_zero(const VaLambda &a);
VaExpr va_lambda_coeff(const VaLambda &a, int k);

// Quasicommutativity correction int_{-T}^0 [a_l b] dl.
VaExpr quasicomm_integral(const LcaSpec &s, const VaExpr &a, const VaExpr &b);

struct VirasoroForm {
    bool is_virasoro = false;
    Coeff central_charge;
    std::string residual;
};
// Matches [L_l L] against (T + 2l)L + (l^3/12) c |0>.
VirasoroForm virasoro_extract(const LcaSpec &s, const VaExpr &l);

// [L_l a] = Ta + delta l a exactly (no higher terms).
bool primary_check(const LcaSpec &s, const VaExpr &l, const VaExpr &a, const Coeff &delta);

struct LcaIssue {
    std::string kind; // "skewsymmetry" | "jacobi" | "weight"
    int i = -1, j = -1, k = -1;
    std::string detail;
};
struct LcaReport {
    std::vector<LcaIssue> issues;
    bool ok() const { return issues.empty(); }
};
LcaReport check_lca(const LcaSpec &s);

// Bundled Lie conformal algebras (central elements evaluated).
LcaSpec virasoro_lca(const Coeff &c, const Coeff &alpha);
LcaSpec current_lca(const LieAlgebraData &l, const Coeff &k);
LcaSpec current_lca_twisted(const LieAlgebraData &l, const Coeff &k, const LieVec &s);
LcaSpec free_boson_lca();
LcaSpec free_fermion_lca();

// Sugawara vector over current_lca(l, k); level + dual Coxeter number must be
// invertible. Returns the vector; the spec to compute with is current_lca.
VaExpr sugawara(const LieAlgebraData &l, const Coeff &k);

// Dual Coxeter number relative to the declared form (0 for abelian algebras).
Coeff dual_coxeter(const LieAlgebraData &l);

std::string va_str(const LcaSpec &s, const VaExpr &a);
std::string va_lambda_str(const LcaSpec &s, const VaLambda &a,
                          const std::string &lambda_name = "l");

} // namespace lbc
