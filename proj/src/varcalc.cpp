#include "lbcalc/varcalc.hpp"

#include <stdexcept>

namespace lbc {

Characteristic variational_derivative(const DiffPoly &f, int ell) {
    Characteristic r((size_t)(ell));
    int maxord = f.max_order();
    for (int i = 0; i < ell; ++i) {
        for (int n = 0; n <= maxord; ++n) {
            DiffPoly p = partial_derivative(f, i, n);
            if (p.is_zero())
                continue;
            // (-d)^n p
            p = total_derivative(p, n);
            r[size_t(i)] += (n % 2 == 0) ? p : -p;
        }
    }
    return r;
}

DiffOp frechet_derivative(const Characteristic &f, int ell) {
    DiffOp d(int(f.size()), ell);
    for (size_t i = 0; i < f.size(); ++i) {
        int maxord = f[i].max_order();
        for (int j = 0; j < ell; ++j) {
            DiffOp::Entry e;
            for (int n = 0; n <= maxord; ++n) {
                DiffPoly p = partial_derivative(f[i], j, n);
                if (p.is_zero())
                    continue;
                if (e.size() <= size_t(n))
                    e.resize(size_t(n) + 1);
                e[size_t(n)] = p;
            }
            d.set(int(i), j, std::move(e));
        }
    }
    return d;
}

bool is_closed(const Characteristic &f, int ell) {
    DiffOp d = frechet_derivative(f, ell);
    return d == diffop_adjoint(d);
}

// Elimination order on variables: derivative order first, then generator.
static bool elim_less(const DerivVar &a, const DerivVar &b) {
    return a.ord != b.ord ? a.ord < b.ord : a.gen < b.gen;
}

// Largest variable of a monomial in elimination order.
static DerivVar mono_top(const Mono &m) {
    DerivVar top = m.front().first;
    for (auto &[v, e] : m)
        if (elim_less(top, v))
            top = v;
    return top;
}

// A monomial c*M*v is eliminable iff its top variable v has ord >= 1, occurs
// linearly, and every other variable is <= (v.ord - 1, v.gen) in elimination
// order. Any nonzero total derivative contains an eliminable monomial, and no
// d-image can be formed out of non-eliminable ones, so iterating yields a
// canonical representative mod Im d.
static bool mono_eliminable(const Mono &m, DerivVar &top_out) {
    DerivVar v = mono_top(m);
    if (v.ord < 1)
        return false;
    DerivVar pred{v.gen, v.ord - 1};
    for (auto &[x, e] : m) {
        if (x == v) {
            if (e != 1)
                return false;
        } else if (elim_less(pred, x)) {
            return false;
        }
    }
    top_out = v;
    return true;
}

// Polynomial antiderivative with respect to the variable w.
static DiffPoly antiderivative_in(const DiffPoly &a, const DerivVar &w) {
    DiffPoly r;
    for (auto &[m, c] : a.terms()) {
        Mono out;
        int e = 0;
        for (auto &[v, k] : m) {
            if (v == w)
                e = k;
            else
                out.push_back({v, k});
        }
        out = mono_mul(out, Mono{{w, e + 1}});
        r.add_term(out, c / Coeff(e + 1));
    }
    return r;
}

DiffPoly reduce_mod_total_derivatives(const DiffPoly &f, DiffPoly *witness) {
    DiffPoly cur = f, acc;
    while (true) {
        bool found = false;
        DerivVar best{};
        for (auto &[m, c] : cur.terms()) {
            if (m.empty())
                continue;
            DerivVar v;
            if (mono_eliminable(m, v) && (!found || elim_less(best, v))) {
                best = v;
                found = true;
            }
        }
        if (!found)
            break;
        DerivVar w{best.gen, best.ord - 1};
        // Collect the full eliminable slice at this top variable.
        DiffPoly a;
        for (auto &[m, c] : cur.terms()) {
            if (m.empty())
                continue;
            DerivVar v;
            if (mono_eliminable(m, v) && v == best) {
                Mono rest;
                for (auto &[x, e] : m)
                    if (!(x == best))
                        rest.push_back({x, e});
                a.add_term(rest, c);
            }
        }
        DiffPoly anti = antiderivative_in(a, w);
        cur -= total_derivative(anti);
        acc += anti;
    }
    if (witness)
        *witness = acc;
    return cur;
}

std::optional<DiffPoly> is_total_derivative(const DiffPoly &f) {
    DiffPoly g;
    DiffPoly rem = reduce_mod_total_derivatives(f, &g);
    if (!rem.is_zero())
        return std::nullopt;
    return g;
}

DiffPoly homotopy_integrate(const Characteristic &xi, int ell) {
    if (!is_closed(xi, ell))
        throw std::invalid_argument("homotopy_integrate: characteristic is not closed");
    DiffPoly uxi;
    for (size_t i = 0; i < xi.size(); ++i)
        uxi += DiffPoly::var(int(i)) * xi[i];
    DiffPoly h;
    for (auto &[m, c] : uxi.terms()) {
        int d = mono_total_degree(m);
        if (d == 0)
            throw std::invalid_argument("homotopy_integrate: degree-0 monomial");
        h.add_term(m, c / Coeff(d));
    }
    return h;
}

DiffPoly evol_apply(const Characteristic &p, const DiffPoly &f) {
    DiffPoly r;
    for (const DerivVar &v : f.variables()) {
        if (v.gen >= int(p.size()))
            continue;
        DiffPoly pf = partial_derivative(f, v.gen, v.ord);
        if (pf.is_zero())
            continue;
        r += total_derivative(p[size_t(v.gen)], v.ord) * pf;
    }
    return r;
}

Characteristic evol_bracket(const Characteristic &f, const Characteristic &g) {
    Characteristic r(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        r[i] = evol_apply(f, g[i]) - evol_apply(g, f[i]);
    return r;
}

FunctionalClass pair_functional(const Characteristic &f, const Characteristic &g) {
    DiffPoly s;
    for (size_t i = 0; i < f.size() && i < g.size(); ++i)
        s += f[i] * g[i];
    return FunctionalClass(s);
}

} // namespace lbc
