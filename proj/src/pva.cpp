#include "lbcalc/pva.hpp"

#include <sstream>
#include <stdexcept>

namespace lbc {

LambdaPoly master_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s) {
    LambdaPoly r;
    int fo = f.max_order(), go = g.max_order();
    for (int j = 0; j < s.ell; ++j) {
        for (int q = 0; q <= go; ++q) {
            DiffPoly gq = partial_derivative(g, j, q);
            if (gq.is_zero())
                continue;
            for (int i = 0; i < s.ell; ++i) {
                const LambdaPoly &bij = s.entry(i, j);
                if (bij.is_zero())
                    continue;
                for (int p = 0; p <= fo; ++p) {
                    DiffPoly fp = partial_derivative(f, i, p);
                    if (fp.is_zero())
                        continue;
                    LambdaPoly inner = arrow_apply(bij, lambda_shift_apply(p, fp, -1));
                    r += lambda_shift_apply(q, inner, +1) * gq;
                }
            }
        }
    }
    return r;
}

LambdaPoly value_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s) {
    return master_bracket(f, g, s);
}

FunctionalClass functional_bracket(const DiffPoly &f, const DiffPoly &g, const PvaSpec &s) {
    return FunctionalClass(master_bracket(f, g, s).coeff(0));
}

FunctionalClass functional_bracket(const FunctionalClass &f, const FunctionalClass &g,
                                   const PvaSpec &s) {
    return functional_bracket(f.rep(), g.rep(), s);
}

DiffPoly hamiltonian_flow(const DiffPoly &h, const DiffPoly &g, const PvaSpec &s) {
    return master_bracket(h, g, s).coeff(0);
}

// {u_j -l-d u_i}: substitute -l-d into the table value, d acting on the
// coefficients.
static LambdaPoly opposite_entry(const PvaSpec &s, int j, int i) {
    LambdaPoly r;
    for (auto &[k, b] : s.entry(j, i).coeffs())
        r += lambda_shift_apply(k, b, -1);
    return r;
}

PvaReport check_skewsymmetry(const PvaSpec &s) {
    PvaReport rep;
    for (int i = 0; i < s.ell; ++i)
        for (int j = 0; j < s.ell; ++j) {
            LambdaPoly res = s.entry(i, j) + opposite_entry(s, j, i);
            if (!res.is_zero())
                rep.issues.push_back({"skewsymmetry", i, j, -1, res.str(s.names)});
        }
    return rep;
}

// lambda-poly -> (l, m) carrier at fixed second exponent.
static void add_scaled(LambdaMuPoly &acc, const LambdaPoly &p, int mu_pow, const Coeff &c) {
    for (auto &[a, f] : p.coeffs()) {
        auto key = std::make_pair(a, mu_pow);
        auto it = acc.find(key);
        DiffPoly v = f * c;
        if (it == acc.end()) {
            if (!v.is_zero())
                acc[key] = v;
        } else {
            it->second += v;
            if (it->second.is_zero())
                acc.erase(it);
        }
    }
}

static LambdaMuPoly jacobi_residual(const PvaSpec &s, int i, int j, int k) {
    LambdaMuPoly acc;
    DiffPoly ui = DiffPoly::var(i), uj = DiffPoly::var(j);
    // {u_i l {u_j m u_k}}
    for (auto &[b, v] : s.entry(j, k).coeffs())
        add_scaled(acc, master_bracket(ui, v, s), b, Coeff(1));
    // - {u_j m {u_i l u_k}}: swap the roles of the formal variables.
    for (auto &[a, w] : s.entry(i, k).coeffs()) {
        LambdaPoly br = master_bracket(uj, w, s); // polynomial in m
        for (auto &[b, f] : br.coeffs()) {
            auto key = std::make_pair(a, b);
            auto it = acc.find(key);
            DiffPoly nv = -f;
            if (it == acc.end()) {
                if (!nv.is_zero())
                    acc[key] = nv;
            } else {
                it->second += nv;
                if (it->second.is_zero())
                    acc.erase(it);
            }
        }
    }
    // - {{u_i l u_j} l+m u_k}: nu-polynomial with nu -> l+m expanded binomially.
    DiffPoly uk = DiffPoly::var(k);
    for (auto &[a, r] : s.entry(i, j).coeffs()) {
        LambdaPoly br = master_bracket(r, uk, s); // polynomial in nu
        for (auto &[t, f] : br.coeffs()) {
            for (int c = 0; c <= t; ++c) {
                Coeff bc(binomial(t, c));
                auto key = std::make_pair(a + c, t - c);
                auto it = acc.find(key);
                DiffPoly nv = f * -bc;
                if (it == acc.end()) {
                    if (!nv.is_zero())
                        acc[key] = nv;
                } else {
                    it->second += nv;
                    if (it->second.is_zero())
                        acc.erase(it);
                }
            }
        }
    }
    return acc;
}

static std::string lm_poly_str(const LambdaMuPoly &p, const std::vector<std::string> &names) {
    std::ostringstream os;
    bool first = true;
    for (auto &[km, f] : p) {
        if (!first)
            os << " + ";
        first = false;
        os << "l^" << km.first << "*m^" << km.second << "*(" << f.str(names) << ")";
    }
    return first ? "0" : os.str();
}

PvaReport check_jacobi(const PvaSpec &s) {
    PvaReport rep;
    for (int i = 0; i < s.ell; ++i)
        for (int j = 0; j < s.ell; ++j)
            for (int k = 0; k < s.ell; ++k) {
                LambdaMuPoly res = jacobi_residual(s, i, j, k);
                if (!res.empty())
                    rep.issues.push_back({"jacobi", i, j, k, lm_poly_str(res, s.names)});
            }
    return rep;
}

PvaReport check_compatibility(const PvaSpec &h, const PvaSpec &k) {
    if (h.ell != k.ell)
        throw std::invalid_argument("check_compatibility: mismatched generator counts");
    PvaSpec sum;
    sum.ell = h.ell;
    sum.names = h.names;
    Coeff t = Coeff::param("t");
    sum.table.assign(size_t(h.ell), std::vector<LambdaPoly>(size_t(h.ell)));
    for (int i = 0; i < h.ell; ++i)
        for (int j = 0; j < h.ell; ++j) {
            LambdaPoly e = h.entry(i, j);
            for (auto &[p, f] : k.entry(i, j).coeffs())
                e.add(p, f * t);
            sum.table[size_t(i)][size_t(j)] = e;
        }
    return check_jacobi(sum);
}

DiffOp poisson_structure(const PvaSpec &s) {
    DiffOp h(s.ell, s.ell);
    for (int i = 0; i < s.ell; ++i)
        for (int j = 0; j < s.ell; ++j)
            h.set(j, i, entry_from_symbol(s.entry(i, j)));
    return h;
}

PvaSpec gfz() {
    PvaSpec s;
    s.ell = 1;
    s.names = {"u"};
    s.table = {{LambdaPoly::lambda()}};
    return s;
}

PvaSpec magri_virasoro(const Coeff &c, const Coeff &alpha) {
    PvaSpec s;
    s.ell = 1;
    s.names = {"u"};
    LambdaPoly b;
    b.add(0, DiffPoly::var(0, 1));
    b.add(1, DiffPoly::var(0) * Coeff(2) + DiffPoly(alpha));
    b.add(3, DiffPoly(c));
    s.table = {{b}};
    return s;
}

static LambdaPoly affine_entry(const LieAlgebraData &l, int i, int j, const Coeff &k,
                               const LieVec *s) {
    LambdaPoly b;
    const LieVec &br = l.sc[size_t(i)][size_t(j)];
    DiffPoly cur;
    for (int t = 0; t < l.dim(); ++t)
        if (!br[size_t(t)].is_zero())
            cur += DiffPoly::var(t) * br[size_t(t)];
    b += LambdaPoly(cur);
    Coeff pair = l.form[size_t(i)][size_t(j)] * k;
    if (!pair.is_zero())
        b.add(1, DiffPoly(pair));
    if (s) {
        Coeff cocycle(0);
        for (int t = 0; t < l.dim(); ++t)
            cocycle += (*s)[size_t(t)] * l.pairing(l.basis_vec(t), br);
        if (!cocycle.is_zero())
            b.add(0, DiffPoly(cocycle));
    }
    return b;
}

PvaSpec affine(const LieAlgebraData &l, const Coeff &k, const LieVec &s) {
    PvaSpec sp;
    sp.ell = l.dim();
    sp.names = l.labels;
    sp.table.assign(size_t(sp.ell), std::vector<LambdaPoly>(size_t(sp.ell)));
    for (int i = 0; i < sp.ell; ++i)
        for (int j = 0; j < sp.ell; ++j)
            sp.table[size_t(i)][size_t(j)] = affine_entry(l, i, j, k, &s);
    return sp;
}

PvaSpec affine_h(const LieAlgebraData &l, const Coeff &k) {
    PvaSpec sp;
    sp.ell = l.dim();
    sp.names = l.labels;
    sp.table.assign(size_t(sp.ell), std::vector<LambdaPoly>(size_t(sp.ell)));
    for (int i = 0; i < sp.ell; ++i)
        for (int j = 0; j < sp.ell; ++j)
            sp.table[size_t(i)][size_t(j)] = affine_entry(l, i, j, k, nullptr);
    return sp;
}

PvaSpec affine_k(const LieAlgebraData &l, const LieVec &s) {
    PvaSpec sp;
    sp.ell = l.dim();
    sp.names = l.labels;
    sp.table.assign(size_t(sp.ell), std::vector<LambdaPoly>(size_t(sp.ell)));
    for (int i = 0; i < sp.ell; ++i)
        for (int j = 0; j < sp.ell; ++j) {
            LambdaPoly b;
            const LieVec &br = l.sc[size_t(i)][size_t(j)];
            Coeff cocycle(0);
            for (int t = 0; t < l.dim(); ++t)
                cocycle += s[size_t(t)] * l.pairing(l.basis_vec(t), br);
            if (!cocycle.is_zero())
                b.add(0, DiffPoly(cocycle));
            sp.table[size_t(i)][size_t(j)] = b;
        }
    return sp;
}

} // namespace lbc
