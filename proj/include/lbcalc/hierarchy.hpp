// Lenard-Magri scheme over a compatible Poisson pair: stepping, density
// reconstruction, involution tables and linear-independence reporting.
#pragma once

#include "lbcalc/pva.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lbc {

// Supported shapes of K(d) for solving K xi = g.
struct KSolverDTimesConst {
    CMatrix d, d_inv; // K = D o d
};
struct KSolverConstSkew {
    CMatrix k, k_inv; // constant invertible skewsymmetric matrix
};
using KSolver = std::variant<KSolverDTimesConst, KSolverConstSkew>;

std::optional<KSolver> classify_k(const DiffOp &k);

// Basis of Ker K within constant-coefficient characteristics.
std::vector<Characteristic> seed_kernel(const DiffOp &k);

struct LmStepError {
    std::string message;
    Characteristic obstruction; // non-integrable residue, when meaningful
};

// Solve K xi' = H xi; the returned representative has no Ker K component.
std::variant<Characteristic, LmStepError> lm_step(const DiffOp &h, const DiffOp &k,
                                                  const Characteristic &xi);

struct HierarchyState {
    PvaSpec h_spec, k_spec;
    DiffOp h_op, k_op;
    std::vector<Characteristic> xi;
    std::vector<FunctionalClass> dens;
    std::vector<Characteristic> eq; // eq_n = H xi_n
};

// Run the scheme from a seed in Ker K for n = 0..steps.
std::variant<HierarchyState, LmStepError> lm_run(const PvaSpec &h_spec, const PvaSpec &k_spec,
                                                 const Characteristic &xi0, int steps);

struct InvolutionTable {
    std::vector<std::vector<FunctionalClass>> under_h, under_k;
    bool all_zero() const;
};
InvolutionTable involution_table(const HierarchyState &s);

struct IndependenceReport {
    std::vector<int> orders;  // differential order of each equation
    bool independent = false; // linear independence over the coefficient field
};
IndependenceReport independence_check(const HierarchyState &s);

} // namespace lbc
