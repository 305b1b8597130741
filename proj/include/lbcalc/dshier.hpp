// Homogeneous Drinfeld-Sokolov hierarchy: gauging the Lax operator to the
// centralizer of s, density extraction and the Lenard-Magri verification for
// the affine pair.
#pragma once

#include "lbcalc/hierarchy.hpp"

namespace lbc {

// Element of g (x) V: one DiffPoly per basis index.
using GValued = std::vector<DiffPoly>;

// Truncated series sum_{n=0..N} c_n z^-n with g (x) V coefficients.
struct ZSeries {
    std::vector<GValued> c;
    int trunc() const { return int(c.size()) - 1; }
};

GValued g_bracket(const LieAlgebraData &l, const GValued &a, const GValued &b);
GValued g_apply(const CMatrix &m, const GValued &a);
DiffPoly g_pair(const LieAlgebraData &l, const LieVec &a, const GValued &x);
bool g_is_zero(const GValued &a);

struct DsGauge {
    ZSeries u; // in h-perp (x) V, u.c[0] = 0
    ZSeries f; // in h (x) V
    SDecomposition split;
};

// Solve e^{ad U(z)} (d + sum_i u^i (x) u_i - z s (x) 1) = d + f(z) - z s (x) 1
// through order z^-N.
DsGauge ds_gauge(const LieAlgebraData &l, const LieVec &s, int n);

// Residual of the gauge identity, recomputed from scratch; all-zero on success.
// Entry k is the z^-k coefficient (k = 0..N) of e^{ad U} L - (d + f - z s).
std::vector<GValued> ds_gauge_residual(const LieAlgebraData &l, const LieVec &s,
                                       const DsGauge &g);

// h^a_n = z^-n coefficient of (a (x) 1 | f(z)), reduced in V/dV.
// Requires a central in the centralizer of s.
std::vector<FunctionalClass> ds_densities(const LieAlgebraData &l, const LieVec &a,
                                          const DsGauge &g);

// F^a(z) = e^{-ad U(z)}(a (x) 1), truncated like U.
ZSeries ds_characteristics(const LieAlgebraData &l, const LieVec &a, const DsGauge &g);

struct DsVerifyIssue {
    std::string kind; // "lenard-magri" | "involution" | "variational"
    int n = -1, gen = -1, m = -1;
    std::string residual;
};

struct DsVerifyReport {
    std::vector<DsVerifyIssue> issues;
    // Flow of each generator under {int h_n, .}_H, per density index.
    std::vector<std::vector<DiffPoly>> flows;
    bool ok() const { return issues.empty(); }
};

// Checks {int h_n, u}_H = {int h_{n+1}, u}_K on every generator for
// n <= N-1, pairwise involution, and Theorem 6.4(a): the assembled
// variational derivative of h^a(z) equals F^a(z) through the truncation.
DsVerifyReport ds_verify(const LieAlgebraData &l, const LieVec &a, const LieVec &s,
                         const DsGauge &g, const PvaSpec &h_spec, const PvaSpec &k_spec);

} // namespace lbc
