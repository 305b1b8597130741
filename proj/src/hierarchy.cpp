#include "lbcalc/hierarchy.hpp"

#include <stdexcept>

namespace lbc {

std::optional<KSolver> classify_k(const DiffOp &k) {
    if (k.rows() != k.cols())
        return std::nullopt;
    int n = k.rows();
    bool pure_d1 = true, pure_const = true;
    for (int i = 0; i < n && (pure_d1 || pure_const); ++i)
        for (int j = 0; j < n; ++j) {
            const DiffOp::Entry &e = k.at(i, j);
            for (size_t p = 0; p < e.size(); ++p) {
                if (e[p].is_zero())
                    continue;
                if (!e[p].is_constant()) {
                    pure_d1 = pure_const = false;
                    break;
                }
                if (p != 1)
                    pure_d1 = false;
                if (p != 0)
                    pure_const = false;
            }
        }
    if (pure_d1) {
        CMatrix d((size_t)(n), std::vector<Coeff>((size_t)(n), Coeff(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const DiffOp::Entry &e = k.at(i, j);
                if (e.size() > 1)
                    d[size_t(i)][size_t(j)] = e[1].constant_term();
            }
        auto inv = cmat_inverse(d);
        if (inv)
            return KSolver{KSolverDTimesConst{d, *inv}};
        return std::nullopt;
    }
    if (pure_const) {
        CMatrix m((size_t)(n), std::vector<Coeff>((size_t)(n), Coeff(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const DiffOp::Entry &e = k.at(i, j);
                if (!e.empty())
                    m[size_t(i)][size_t(j)] = e[0].constant_term();
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (m[size_t(i)][size_t(j)] != -m[size_t(j)][size_t(i)])
                    return std::nullopt;
        auto inv = cmat_inverse(m);
        if (inv)
            return KSolver{KSolverConstSkew{m, *inv}};
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Characteristic> seed_kernel(const DiffOp &k) {
    auto cls = classify_k(k);
    if (!cls)
        throw std::invalid_argument("seed_kernel: unsupported K class");
    int n = k.rows();
    std::vector<Characteristic> basis;
    if (std::holds_alternative<KSolverDTimesConst>(*cls)) {
        // Ker(D o d) on constant characteristics: all constants.
        for (int i = 0; i < n; ++i) {
            Characteristic c((size_t)(n));
            c[size_t(i)] = DiffPoly(1);
            basis.push_back(std::move(c));
        }
    }
    // Constant invertible matrix: trivial kernel.
    return basis;
}

std::variant<Characteristic, LmStepError> lm_step(const DiffOp &h, const DiffOp &k,
                                                  const Characteristic &xi) {
    auto cls = classify_k(k);
    if (!cls)
        return LmStepError{"unsupported K class", {}};
    std::vector<DiffPoly> g = diffop_apply(h, xi);
    int n = k.rows();
    if (auto *dc = std::get_if<KSolverDTimesConst>(&*cls)) {
        // d xi' = D^-1 g, then integrate componentwise.
        Characteristic rhs((size_t)(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!dc->d_inv[size_t(i)][size_t(j)].is_zero())
                    rhs[size_t(i)] += g[size_t(j)] * dc->d_inv[size_t(i)][size_t(j)];
        Characteristic out((size_t)(n));
        Characteristic residue((size_t)(n));
        bool failed = false;
        for (int i = 0; i < n; ++i) {
            DiffPoly wit;
            DiffPoly rem = reduce_mod_total_derivatives(rhs[size_t(i)], &wit);
            if (!rem.is_zero()) {
                failed = true;
                residue[size_t(i)] = rem;
            }
            out[size_t(i)] = wit;
        }
        if (failed)
            return LmStepError{"H xi is not in Im K", residue};
        return out;
    }
    auto &ks = std::get<KSolverConstSkew>(*cls);
    Characteristic out((size_t)(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!ks.k_inv[size_t(i)][size_t(j)].is_zero())
                out[size_t(i)] += g[size_t(j)] * ks.k_inv[size_t(i)][size_t(j)];
    return out;
}

std::variant<HierarchyState, LmStepError> lm_run(const PvaSpec &h_spec, const PvaSpec &k_spec,
                                                 const Characteristic &xi0, int steps) {
    HierarchyState st;
    st.h_spec = h_spec;
    st.k_spec = k_spec;
    st.h_op = poisson_structure(h_spec);
    st.k_op = poisson_structure(k_spec);
    // Seed must lie in Ker K.
    for (const DiffPoly &c : diffop_apply(st.k_op, xi0))
        if (!c.is_zero())
            return LmStepError{"seed is not in Ker K", xi0};
    st.xi.push_back(xi0);
    for (int n = 1; n <= steps; ++n) {
        auto next = lm_step(st.h_op, st.k_op, st.xi.back());
        if (auto *err = std::get_if<LmStepError>(&next))
            return *err;
        st.xi.push_back(std::get<Characteristic>(next));
    }
    for (const Characteristic &xi : st.xi) {
        if (!is_closed(xi, h_spec.ell)) {
            DiffOp d = frechet_derivative(xi, h_spec.ell);
            DiffOp defect = d - diffop_adjoint(d);
            return LmStepError{"characteristic is not closed; defect " +
                                   defect.str(h_spec.names),
                               xi};
        }
        st.dens.emplace_back(homotopy_integrate(xi, h_spec.ell));
        st.eq.push_back(diffop_apply(st.h_op, xi));
    }
    return st;
}

bool InvolutionTable::all_zero() const {
    for (auto &row : under_h)
        for (auto &f : row)
            if (!f.is_zero())
                return false;
    for (auto &row : under_k)
        for (auto &f : row)
            if (!f.is_zero())
                return false;
    return true;
}

InvolutionTable involution_table(const HierarchyState &s) {
    InvolutionTable t;
    size_t n = s.dens.size();
    t.under_h.assign(n, std::vector<FunctionalClass>(n));
    t.under_k = t.under_h;
    for (size_t m = 0; m < n; ++m)
        for (size_t k = 0; k < n; ++k) {
            t.under_h[m][k] = functional_bracket(s.dens[m], s.dens[k], s.h_spec);
            t.under_k[m][k] = functional_bracket(s.dens[m], s.dens[k], s.k_spec);
        }
    return t;
}

IndependenceReport independence_check(const HierarchyState &s) {
    IndependenceReport rep;
    // Coordinates: distinct (component, monomial) pairs across all equations.
    std::map<std::pair<size_t, Mono>, size_t,
             bool (*)(const std::pair<size_t, Mono> &, const std::pair<size_t, Mono> &)>
        coords([](const std::pair<size_t, Mono> &a, const std::pair<size_t, Mono> &b) {
            if (a.first != b.first)
                return a.first < b.first;
            return MonoLess{}(a.second, b.second);
        });
    for (const Characteristic &eq : s.eq) {
        int ord = -1;
        for (size_t c = 0; c < eq.size(); ++c) {
            ord = std::max(ord, eq[c].max_order());
            for (auto &[m, v] : eq[c].terms())
                coords.try_emplace({c, m}, coords.size());
        }
        rep.orders.push_back(ord);
    }
    CMatrix mat(s.eq.size(), std::vector<Coeff>(coords.size(), Coeff(0)));
    for (size_t r = 0; r < s.eq.size(); ++r)
        for (size_t c = 0; c < s.eq[r].size(); ++c)
            for (auto &[m, v] : s.eq[r][c].terms())
                mat[r][coords[{c, m}]] = v;
    rep.independent = cmat_rank(mat) == s.eq.size();
    return rep;
}

} // namespace lbc
