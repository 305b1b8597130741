// Finite-dimensional Lie algebra data: structure constants, invariant form,
// dual bases, adjoint Casimir, and the centralizer split along a semisimple
// element.
#pragma once

#include "lbcalc/cmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lbc {

// Element of the algebra as coordinates in the declared basis.
using LieVec = std::vector<Coeff>;

struct RootDatum {
    std::vector<int> cartan;                 // basis indices spanning the Cartan
    std::vector<std::vector<Coeff>> roots;   // root functionals on the Cartan coords
    std::vector<int> root_vectors;           // basis index of e_alpha per root
};

struct LieAlgebraData {
    std::vector<std::string> labels;
    // sc[i][j][k] = coefficient of x_k in [x_i, x_j].
    std::vector<std::vector<LieVec>> sc;
    CMatrix form;
    std::optional<RootDatum> roots;

    int dim() const { return int(labels.size()); }
    LieVec bracket(const LieVec &a, const LieVec &b) const;
    Coeff pairing(const LieVec &a, const LieVec &b) const;
    LieVec basis_vec(int i) const;
};

struct ValidationIssue {
    std::string identity; // "antisymmetry", "jacobi", "form-symmetry", "invariance"
    int i = -1, j = -1, k = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate(const LieAlgebraData &l);

// Pairs (a^i, b^i) with (b^i | a^j) = delta_ij; a^i is the declared basis.
struct DualBases {
    std::vector<LieVec> a, b;
};
DualBases dual_bases(const LieAlgebraData &l); // throws on degenerate form

// Eigenvalue of sum_i ad(a^i) ad(b^i) on the adjoint module (= 2 h-vee).
// Throws when the action is not a nonzero scalar.
Coeff casimir_adjoint_eigenvalue(const LieAlgebraData &l);

// g = h (+) h-perp along a semisimple s, with the inverse of ad s on h-perp.
struct SDecomposition {
    std::vector<LieVec> centralizer;      // basis of h
    std::vector<LieVec> complement;       // basis of h-perp = Im(ad s)
    CMatrix ad_s;                         // matrix of ad s in the declared basis
    CMatrix inv_on_complement;            // right inverse: ad_s o inv = id on h-perp
    // Projections onto h / h-perp in the declared basis.
    CMatrix proj_h, proj_perp;
};
SDecomposition s_decomposition(const LieAlgebraData &l, const LieVec &s);

// Bundled presentations.
LieAlgebraData sl2_standard();              // e, h, f with the trace form
LieAlgebraData sl2_root(const Coeff &pair); // e_a, e_m, s with (e_a|e_m) = pair
LieAlgebraData gl_n(int n);                 // elementary matrices, trace form
LieAlgebraData sl_n(int n);

} // namespace lbc
