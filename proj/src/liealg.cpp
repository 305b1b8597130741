#include "lbcalc/liealg.hpp"

#include <sstream>
#include <stdexcept>

namespace lbc {

LieVec LieAlgebraData::basis_vec(int i) const {
    LieVec v((size_t)(dim()), Coeff(0));
    v[size_t(i)] = Coeff(1);
    return v;
}

LieVec LieAlgebraData::bracket(const LieVec &a, const LieVec &b) const {
    int n = dim();
    LieVec r((size_t)(n), Coeff(0));
    for (int i = 0; i < n; ++i) {
        if (a[size_t(i)].is_zero())
            continue;
        for (int j = 0; j < n; ++j) {
            if (b[size_t(j)].is_zero())
                continue;
            Coeff f = a[size_t(i)] * b[size_t(j)];
            for (int k = 0; k < n; ++k) {
                const Coeff &c = sc[size_t(i)][size_t(j)][size_t(k)];
                if (!c.is_zero())
                    r[size_t(k)] += f * c;
            }
        }
    }
    return r;
}

Coeff LieAlgebraData::pairing(const LieVec &a, const LieVec &b) const {
    Coeff r(0);
    int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r += a[size_t(i)] * b[size_t(j)] * form[size_t(i)][size_t(j)];
    return r;
}

ValidationReport validate(const LieAlgebraData &l) {
    ValidationReport rep;
    int n = l.dim();
    auto add = [&](const std::string &id, int i, int j, int k, const std::string &d) {
        rep.issues.push_back({id, i, j, k, d});
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Coeff s = l.sc[size_t(i)][size_t(j)][size_t(k)] +
                          l.sc[size_t(j)][size_t(i)][size_t(k)];
                if (!s.is_zero())
                    add("antisymmetry", i, j, k, "c_ij^k + c_ji^k = " + s.str());
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Coeff s = l.form[size_t(i)][size_t(j)] - l.form[size_t(j)][size_t(i)];
            if (!s.is_zero())
                add("form-symmetry", i, j, -1, s.str());
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                // Jacobi: [[xi,xj],xk] + [[xj,xk],xi] + [[xk,xi],xj] = 0
                LieVec r = l.bracket(l.bracket(l.basis_vec(i), l.basis_vec(j)), l.basis_vec(k));
                LieVec r2 = l.bracket(l.bracket(l.basis_vec(j), l.basis_vec(k)), l.basis_vec(i));
                LieVec r3 = l.bracket(l.bracket(l.basis_vec(k), l.basis_vec(i)), l.basis_vec(j));
                bool bad = false;
                for (int t = 0; t < n; ++t)
                    if (!(r[size_t(t)] + r2[size_t(t)] + r3[size_t(t)]).is_zero())
                        bad = true;
                if (bad)
                    add("jacobi", i, j, k, "");
                // Invariance: (xi|[xj,xk]) = ([xi,xj]|xk)
                Coeff lhs = l.pairing(l.basis_vec(i), l.bracket(l.basis_vec(j), l.basis_vec(k)));
                Coeff rhs = l.pairing(l.bracket(l.basis_vec(i), l.basis_vec(j)), l.basis_vec(k));
                if (lhs != rhs)
                    add("invariance", i, j, k, (lhs - rhs).str());
            }
    return rep;
}

DualBases dual_bases(const LieAlgebraData &l) {
    auto inv = cmat_inverse(l.form);
    if (!inv)
        throw std::invalid_argument("dual_bases: degenerate form");
    DualBases d;
    int n = l.dim();
    for (int i = 0; i < n; ++i) {
        d.a.push_back(l.basis_vec(i));
        // b^i = sum_j (G^-1)_{ij} x_j so that (b^i | a^j) = delta_ij.
        LieVec b((size_t)(n), Coeff(0));
        for (int j = 0; j < n; ++j)
            b[size_t(j)] = (*inv)[size_t(i)][size_t(j)];
        d.b.push_back(std::move(b));
    }
    return d;
}

static CMatrix ad_matrix(const LieAlgebraData &l, const LieVec &x) {
    int n = l.dim();
    CMatrix m((size_t)(n), std::vector<Coeff>((size_t)(n), Coeff(0)));
    for (int j = 0; j < n; ++j) {
        LieVec col = l.bracket(x, l.basis_vec(j));
        for (int i = 0; i < n; ++i)
            m[size_t(i)][size_t(j)] = col[size_t(i)];
    }
    return m;
}

Coeff casimir_adjoint_eigenvalue(const LieAlgebraData &l) {
    DualBases d = dual_bases(l);
    int n = l.dim();
    CMatrix cas((size_t)(n), std::vector<Coeff>((size_t)(n), Coeff(0)));
    for (int i = 0; i < n; ++i) {
        CMatrix ma = ad_matrix(l, d.a[size_t(i)]);
        CMatrix mb = ad_matrix(l, d.b[size_t(i)]);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                for (int t = 0; t < n; ++t)
                    cas[size_t(r)][size_t(c)] += ma[size_t(r)][size_t(t)] * mb[size_t(t)][size_t(c)];
    }
    Coeff eig = cas[0][0];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const Coeff want = (r == c) ? eig : Coeff(0);
            if (cas[size_t(r)][size_t(c)] != want)
                throw std::invalid_argument(
                    "casimir_adjoint_eigenvalue: Casimir is not scalar on the adjoint module");
        }
    if (eig.is_zero())
        throw std::invalid_argument("casimir_adjoint_eigenvalue: zero Casimir (non-simple input)");
    return eig;
}

SDecomposition s_decomposition(const LieAlgebraData &l, const LieVec &s) {
    int n = l.dim();
    SDecomposition d;
    d.ad_s = ad_matrix(l, s);

    // Kernel of ad s: solve ad_s x = 0 by elimination, collecting free columns.
    CMatrix a = d.ad_s;
    std::vector<int> pivot_of_col((size_t)(n), -1);
    size_t rank = 0;
    for (int col = 0; col < n && int(rank) < n; ++col) {
        size_t piv = rank;
        while (piv < size_t(n) && a[piv][size_t(col)].is_zero())
            ++piv;
        if (piv == size_t(n))
            continue;
        std::swap(a[piv], a[rank]);
        Coeff dd = a[rank][size_t(col)];
        for (int j = 0; j < n; ++j)
            a[rank][size_t(j)] /= dd;
        for (size_t r = 0; r < size_t(n); ++r) {
            if (r == rank || a[r][size_t(col)].is_zero())
                continue;
            Coeff f = a[r][size_t(col)];
            for (int j = 0; j < n; ++j)
                a[r][size_t(j)] -= f * a[rank][size_t(j)];
        }
        pivot_of_col[size_t(col)] = int(rank);
        ++rank;
    }
    for (int col = 0; col < n; ++col) {
        if (pivot_of_col[size_t(col)] >= 0)
            continue;
        LieVec v((size_t)(n), Coeff(0));
        v[size_t(col)] = Coeff(1);
        for (int c2 = 0; c2 < n; ++c2)
            if (pivot_of_col[size_t(c2)] >= 0)
                v[size_t(c2)] = -a[size_t(pivot_of_col[size_t(c2)])][size_t(col)];
        d.centralizer.push_back(std::move(v));
    }

    // Image of ad s: columns of ad_s spanning it.
    CMatrix img_rows;
    std::vector<int> img_cols;
    for (int col = 0; col < n; ++col) {
        LieVec v((size_t)(n));
        for (int r = 0; r < n; ++r)
            v[size_t(r)] = d.ad_s[size_t(r)][size_t(col)];
        CMatrix trial = img_rows;
        trial.push_back(v);
        if (cmat_rank(trial) > cmat_rank(img_rows)) {
            img_rows = std::move(trial);
            img_cols.push_back(col);
            d.complement.push_back(std::move(v));
        }
    }
    if (d.centralizer.size() + d.complement.size() != size_t(n))
        throw std::invalid_argument("s_decomposition: ad s not semisimple on the given basis");
    // Direct sum check: h intersect Im(ad s) = 0.
    CMatrix both = img_rows;
    for (auto &v : d.centralizer)
        both.push_back(v);
    if (cmat_rank(both) != size_t(n))
        throw std::invalid_argument("s_decomposition: centralizer meets Im(ad s)");

    // Projections: express e_i = h-part + perp-part in the combined basis.
    CMatrix basis((size_t)(n), std::vector<Coeff>((size_t)(n)));
    size_t nh = d.centralizer.size();
    for (size_t t = 0; t < nh; ++t)
        for (int r = 0; r < n; ++r)
            basis[size_t(r)][t] = d.centralizer[t][size_t(r)];
    for (size_t t = 0; t < d.complement.size(); ++t)
        for (int r = 0; r < n; ++r)
            basis[size_t(r)][nh + t] = d.complement[t][size_t(r)];
    auto binv = cmat_inverse(basis);
    if (!binv)
        throw std::invalid_argument("s_decomposition: basis assembly failed");
    d.proj_h = CMatrix(size_t(n), std::vector<Coeff>(size_t(n), Coeff(0)));
    d.proj_perp = d.proj_h;
    for (int col = 0; col < n; ++col)
        for (int r = 0; r < n; ++r) {
            // coordinates of e_col in the combined basis
            Coeff c = (*binv)[size_t(r)][size_t(col)];
            if (c.is_zero())
                continue;
            if (size_t(r) < nh) {
                for (int t = 0; t < n; ++t)
                    d.proj_h[size_t(t)][size_t(col)] += c * d.centralizer[size_t(r)][size_t(t)];
            } else {
                for (int t = 0; t < n; ++t)
                    d.proj_perp[size_t(t)][size_t(col)] +=
                        c * d.complement[size_t(r) - nh][size_t(t)];
            }
        }

    // Inverse of ad s on the complement: for each complement basis vector v,
    // solve ad_s x = v with x in the complement.
    d.inv_on_complement = CMatrix(size_t(n), std::vector<Coeff>(size_t(n), Coeff(0)));
    // Build the matrix of ad s restricted to complement coordinates.
    size_t np = d.complement.size();
    CMatrix rest((size_t)(n), std::vector<Coeff>(np));
    for (size_t c = 0; c < np; ++c) {
        LieVec av = LieVec(size_t(n), Coeff(0));
        for (int r = 0; r < n; ++r)
            for (int t = 0; t < n; ++t)
                av[size_t(r)] += d.ad_s[size_t(r)][size_t(t)] * d.complement[c][size_t(t)];
        for (int r = 0; r < n; ++r)
            rest[size_t(r)][c] = av[size_t(r)];
    }
    // inv(e_col projected to perp) expressed back in the declared basis.
    for (int col = 0; col < n; ++col) {
        std::vector<Coeff> target((size_t)(n));
        for (int r = 0; r < n; ++r)
            target[size_t(r)] = d.proj_perp[size_t(r)][size_t(col)];
        auto sol = cmat_solve(rest, target);
        if (!sol)
            throw std::invalid_argument("s_decomposition: ad s not invertible on complement");
        for (int r = 0; r < n; ++r) {
            Coeff acc(0);
            for (size_t c = 0; c < np; ++c)
                acc += d.complement[c][size_t(r)] * (*sol)[c];
            d.inv_on_complement[size_t(r)][size_t(col)] = acc;
        }
    }
    return d;
}

// ---- bundled presentations -------------------------------------------------

static LieAlgebraData make(int n, std::vector<std::string> labels) {
    LieAlgebraData l;
    l.labels = std::move(labels);
    l.sc.assign(size_t(n), std::vector<LieVec>(size_t(n), LieVec(size_t(n), Coeff(0))));
    l.form.assign(size_t(n), std::vector<Coeff>(size_t(n), Coeff(0)));
    return l;
}

static void set_bracket(LieAlgebraData &l, int i, int j, std::initializer_list<std::pair<int, Coeff>> terms) {
    for (auto &[k, c] : terms) {
        l.sc[size_t(i)][size_t(j)][size_t(k)] = c;
        l.sc[size_t(j)][size_t(i)][size_t(k)] = -c;
    }
}

LieAlgebraData sl2_standard() {
    // basis e, h, f; [e,f] = h, [h,e] = 2e, [h,f] = -2f; trace form.
    LieAlgebraData l = make(3, {"e", "h", "f"});
    set_bracket(l, 0, 2, {{1, Coeff(1)}});
    set_bracket(l, 1, 0, {{0, Coeff(2)}});
    set_bracket(l, 1, 2, {{2, Coeff(-2)}});
    l.form[0][2] = l.form[2][0] = Coeff(1);
    l.form[1][1] = Coeff(2);
    return l;
}

LieAlgebraData sl2_root(const Coeff &pair) {
    // basis e_a, e_m, s; [e_a,e_m] = s, [s,e_{+-a}] = +-e_{+-a};
    // (e_a|e_m) = (s|s) = pair (forced equal by invariance).
    LieAlgebraData l = make(3, {"ea", "em", "s"});
    set_bracket(l, 0, 1, {{2, Coeff(1)}});
    set_bracket(l, 2, 0, {{0, Coeff(1)}});
    set_bracket(l, 2, 1, {{1, Coeff(-1)}});
    l.form[0][1] = l.form[1][0] = pair;
    l.form[2][2] = pair;
    RootDatum rd;
    rd.cartan = {2};
    rd.roots = {{Coeff(1)}, {Coeff(-1)}};
    rd.root_vectors = {0, 1};
    l.roots = rd;
    return l;
}

LieAlgebraData gl_n(int n) {
    // Elementary matrices E_ij, [E_ij, E_kl] = d_jk E_il - d_li E_kj,
    // (A|B) = tr(AB).
    int d = n * n;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    LieAlgebraData l = make(d, std::move(labels));
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    LieVec &v = l.sc[size_t(idx(i, j))][size_t(idx(k, m))];
                    if (j == k)
                        v[size_t(idx(i, m))] += Coeff(1);
                    if (m == i)
                        v[size_t(idx(k, j))] -= Coeff(1);
                }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            l.form[size_t(idx(i, j))][size_t(idx(j, i))] = Coeff(1);
    return l;
}

LieAlgebraData sl_n(int n) {
    // Basis: E_ij (i != j) and H_i = E_ii - E_{i+1,i+1}; trace form.
    LieAlgebraData g = gl_n(n);
    int d = n * n - 1;
    auto gidx = [n](int i, int j) { return i * n + j; };
    // Coordinates of the sl_n basis inside gl_n.
    std::vector<LieVec> emb;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            LieVec v((size_t)(n * n), Coeff(0));
            v[size_t(gidx(i, j))] = Coeff(1);
            emb.push_back(std::move(v));
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    for (int i = 0; i + 1 < n; ++i) {
        LieVec v((size_t)(n * n), Coeff(0));
        v[size_t(gidx(i, i))] = Coeff(1);
        v[size_t(gidx(i + 1, i + 1))] = Coeff(-1);
        emb.push_back(std::move(v));
        labels.push_back("H" + std::to_string(i + 1));
    }
    // Express gl_n vectors back in the sl_n basis (valid for traceless ones).
    CMatrix sys((size_t)(n * n), std::vector<Coeff>((size_t)(d)));
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < n * n; ++r)
            sys[size_t(r)][size_t(c)] = emb[size_t(c)][size_t(r)];
    LieAlgebraData l = make(d, std::move(labels));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            LieVec br = g.bracket(emb[size_t(i)], emb[size_t(j)]);
            auto sol = cmat_solve(sys, br);
            if (!sol)
                throw std::logic_error("sl_n: bracket left the subalgebra");
            l.sc[size_t(i)][size_t(j)] = *sol;
            l.form[size_t(i)][size_t(j)] = g.pairing(emb[size_t(i)], emb[size_t(j)]);
        }
    return l;
}

} // namespace lbc
