// Poisson vertex algebra structures on differential polynomial algebras:
// bracket tables, the Master Formula, functional brackets and the verifiers.
#pragma once

#include "lbcalc/liealg.hpp"
#include "lbcalc/varcalc.hpp"

#include <string>
#include <vector>

namespace lbc {

// Generator bracket table {u_i l u_j}. The Poisson-structure matrix is the
// transpose-indexed table: H_ji(l) = B[i][j].
struct PvaSpec {
    int ell = 0;
    std::vector<std::string> names;
    std::vector<std::vector<LambdaPoly>> table;

    const LambdaPoly &entry(int i, int j) const { return table[size_t(i)][size_t(j)]; }
};

// Two-variable polynomial in (l, m) with DiffPoly coefficients; carrier of
// Jacobi residuals.
using LambdaMuPoly = std::map<std::pair<int, int>, DiffPoly>;

struct PvaIssue {
    std::string kind; // "skewsymmetry" | "jacobi"
    int i = -1, j = -1, k = -1;
    std::string residual;
};

struct PvaReport {
    std::vector<PvaIssue> issues;
    bool ok() const { return issues.empty(); }
};

// Master Formula extension of the table bracket to arbitrary f, g.
LambdaPoly master_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s);

// {int f, int g} = int {f_l g}|_{l=0}.
FunctionalClass functional_bracket(const FunctionalClass &f, const FunctionalClass &g,
                                   const PvaSpec &s);
FunctionalClass functional_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s);

// {int h, g} = {h_l g}|_{l=0}: generator of the Hamiltonian flow.
DiffPoly hamiltonian_flow(const DiffPoly &h, const DiffPoly &g, const PvaSpec &s);

PvaReport check_skewsymmetry(const PvaSpec &s);
PvaReport check_jacobi(const PvaSpec &s);
PvaReport check_compatibility(const PvaSpec &h, const PvaSpec &k);

// B[j][i] transposed into the matrix differential operator H.
DiffOp poisson_structure(const PvaSpec &s);

// Substituted-value bracket {X_l u_k} for the Jacobi nesting: returns the
// lambda-polynomial of {f_nu g} with nu left formal.
LambdaPoly value_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s);

// Builders.
PvaSpec gfz();
PvaSpec magri_virasoro(const Coeff &c, const Coeff &alpha);
PvaSpec affine(const LieAlgebraData &l, const Coeff &k, const LieVec &s); // Eq. of V^k(g,s)
PvaSpec affine_h(const LieAlgebraData &l, const Coeff &k);                // [a,b] + (a|b) l k
PvaSpec affine_k(const LieAlgebraData &l, const LieVec &s);               // (s|[a,b])

} // namespace lbc
