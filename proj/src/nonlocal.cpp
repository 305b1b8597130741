#include "lbcalc/nonlocal.hpp"

#include <algorithm>

#include "lbcalc/dshier.hpp"

#include <sstream>
#include <stdexcept>

namespace lbc {

LaurentSymbol::LaurentSymbol(int floor, const LambdaPoly &p) : floor_(floor) {
    for (auto &[k, f] : p.coeffs())
        add(k, f);
}

DiffPoly LaurentSymbol::coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? DiffPoly() : it->second;
}

void LaurentSymbol::add(int k, const DiffPoly &f) {
    if (k < floor_ || f.is_zero())
        return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_[k] = f;
    } else {
        it->second += f;
        if (it->second.is_zero())
            c_.erase(it);
    }
}

LaurentSymbol LaurentSymbol::operator+(const LaurentSymbol &o) const {
    LaurentSymbol r = *this;
    for (auto &[k, f] : o.c_)
        r.add(k, f);
    return r;
}

LaurentSymbol LaurentSymbol::operator-(const LaurentSymbol &o) const {
    LaurentSymbol r = *this;
    for (auto &[k, f] : o.c_)
        r.add(k, -f);
    return r;
}

LaurentSymbol LaurentSymbol::scaled(const Coeff &c) const {
    LaurentSymbol r(floor_);
    if (c.is_zero())
        return r;
    for (auto &[k, f] : c_)
        r.c_[k] = f * c;
    return r;
}

LaurentSymbol LaurentSymbol::truncated(int floor) const {
    LaurentSymbol r(floor);
    for (auto &[k, f] : c_)
        r.add(k, f);
    return r;
}

LaurentSymbol binom_apply(int n, const LaurentSymbol &x) {
    LaurentSymbol r(x.floor());
    for (auto &[j, f] : x.coeffs()) {
        // (lambda+d)^n f lambda^j = sum_k C(n,k) d^k(f) lambda^{n-k+j}
        int kmax = n >= 0 ? n : (n + j - x.floor());
        for (int k = 0; k <= kmax; ++k) {
            Int b = binomial(n, k);
            if (b == 0)
                continue;
            r.add(n - k + j, total_derivative(f, k) * Coeff(b));
        }
    }
    return r;
}

LaurentSymbol symbol_compose(const LaurentSymbol &a, const LaurentSymbol &b) {
    LaurentSymbol r(std::min(a.floor(), b.floor()));
    for (auto &[m, f] : a.coeffs()) {
        LaurentSymbol shifted = binom_apply(m, b.truncated(r.floor()));
        for (auto &[k, g] : shifted.coeffs())
            r.add(k, g * f);
    }
    return r;
}

std::vector<std::pair<int, Int>> binom_expand(int n, int m) {
    std::vector<std::pair<int, Int>> terms;
    int kmax = n >= 0 ? n : (n + m);
    for (int k = 0; k <= kmax; ++k) {
        Int b = binomial(n, k);
        if (b != 0)
            terms.emplace_back(k, b);
    }
    return terms;
}

std::string binom_expand_str(int n, int m) {
    auto terms = binom_expand(n, m);
    std::ostringstream os;
    bool first = true;
    for (auto &[k, b] : terms) {
        bool neg = b < 0;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Int ab = boost::multiprecision::abs(b);
        int lpow = n - k;
        std::string lp = lpow == 0 ? "" : (lpow == 1 ? "l" : "l^" + std::to_string(lpow));
        std::string dp = k == 0 ? "" : (k == 1 ? "D" : "D^" + std::to_string(k));
        std::string body;
        if (!lp.empty() && !dp.empty())
            body = lp + "*" + dp;
        else if (!lp.empty())
            body = lp;
        else if (!dp.empty())
            body = dp;
        else
            body = "1";
        if (ab == 1)
            os << body;
        else
            os << ab << "*" << body;
    }
    return first ? "0" : os.str();
}

SymbolMatrix symbol_mat_compose(const SymbolMatrix &a, const SymbolMatrix &b) {
    size_t n = a.size(), p = b[0].size(), mid = b.size();
    int floor = a[0][0].floor();
    SymbolMatrix r(n, std::vector<LaurentSymbol>(p, LaurentSymbol(floor)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j)
            for (size_t t = 0; t < mid; ++t)
                r[i][j] = r[i][j] + symbol_compose(a[i][t], b[t][j]);
    return r;
}

SymbolMatrix symbol_invert(const SymbolMatrix &c, int m) {
    size_t n = c.size();
    int floor = -m;
    // Leading order and leading (constant) coefficient matrix.
    int deg = floor - 1;
    for (auto &row : c)
        for (auto &e : row)
            deg = std::max(deg, e.degree());
    CMatrix lead(n, std::vector<Coeff>(n, Coeff(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            DiffPoly f = c[i][j].coeff(deg);
            if (!f.is_constant())
                throw std::invalid_argument("symbol_invert: leading form is not constant");
            lead[i][j] = f.constant_term();
        }
    auto lead_inv = cmat_inverse(lead);
    if (!lead_inv)
        throw std::invalid_argument("symbol_invert: singular leading form");
    // D0 = lead^-1 lambda^-deg; then C o D0 = 1 + E with ord(E) < 0.
    SymbolMatrix d0(n, std::vector<LaurentSymbol>(n, LaurentSymbol(floor)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            d0[i][j].add(-deg, DiffPoly((*lead_inv)[i][j]));
    SymbolMatrix e = symbol_mat_compose(c, d0);
    for (size_t i = 0; i < n; ++i)
        e[i][i].add(0, DiffPoly(-1));
    // C^-1 = D0 o sum_j (-E)^j.
    SymbolMatrix acc(n, std::vector<LaurentSymbol>(n, LaurentSymbol(floor)));
    SymbolMatrix term = acc;
    for (size_t i = 0; i < n; ++i) {
        acc[i][i].add(0, DiffPoly(1));
        term[i][i].add(0, DiffPoly(1));
    }
    for (int it = 0; it < 2 * m + 4; ++it) {
        term = symbol_mat_compose(term, e);
        for (auto &row : term)
            for (auto &x : row)
                x = x.scaled(Coeff(-1));
        bool zero = true;
        for (auto &row : term)
            for (auto &x : row)
                if (!x.is_zero())
                    zero = false;
        if (zero)
            break;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                acc[i][j] = acc[i][j] + term[i][j];
    }
    return symbol_mat_compose(d0, acc);
}

// {theta_b lambda+d g}-> X with the table bracket computed by the Master
// Formula; k >= 0 powers only.
static LaurentSymbol arrow_apply_symbol(const LambdaPoly &p, const LaurentSymbol &x) {
    LaurentSymbol r(x.floor());
    for (auto &[k, f] : p.coeffs()) {
        LaurentSymbol t = binom_apply(k, x);
        for (auto &[j, g] : t.coeffs())
            r.add(j, g * f);
    }
    return r;
}

DiracResult dirac_reduce(const PvaSpec &s, const std::vector<DiffPoly> &constraints, int m) {
    DiracResult out;
    int floor = -m;
    size_t nc = constraints.size();
    int ell = s.ell;

    // Brackets with the constraints.
    std::vector<std::vector<LambdaPoly>> gen_theta((size_t)(ell), std::vector<LambdaPoly>(nc));
    std::vector<std::vector<LambdaPoly>> theta_gen(nc, std::vector<LambdaPoly>(size_t(ell)));
    bool central = true;
    for (size_t a = 0; a < nc; ++a) {
        for (int j = 0; j < ell; ++j) {
            gen_theta[size_t(j)][a] = master_bracket(DiffPoly::var(j), constraints[a], s);
            theta_gen[a][size_t(j)] = master_bracket(constraints[a], DiffPoly::var(j), s);
            if (!gen_theta[size_t(j)][a].is_zero() || !theta_gen[a][size_t(j)].is_zero())
                central = false;
        }
    }
    out.constraints_central = central;

    out.full_table.assign(size_t(ell), std::vector<LaurentSymbol>(size_t(ell), LaurentSymbol(floor)));
    if (central || nc == 0) {
        for (int i = 0; i < ell; ++i)
            for (int j = 0; j < ell; ++j)
                out.full_table[size_t(i)][size_t(j)] = LaurentSymbol(floor, s.entry(i, j));
    } else {
        SymbolMatrix c(nc, std::vector<LaurentSymbol>(nc, LaurentSymbol(floor)));
        for (size_t a = 0; a < nc; ++a)
            for (size_t b = 0; b < nc; ++b)
                c[a][b] = LaurentSymbol(floor, master_bracket(constraints[b], constraints[a], s));
        SymbolMatrix cinv = symbol_invert(c, m);
        for (int i = 0; i < ell; ++i)
            for (int j = 0; j < ell; ++j) {
                LaurentSymbol acc(floor, s.entry(i, j));
                for (size_t b = 0; b < nc; ++b) {
                    // X_b = sum_a (C^-1)_{ba}(l+d) {u_i l theta_a}
                    LaurentSymbol xb(floor);
                    for (size_t a = 0; a < nc; ++a) {
                        LaurentSymbol y(floor, gen_theta[size_t(i)][a]);
                        LaurentSymbol z(floor);
                        for (auto &[t, q] : cinv[b][a].coeffs()) {
                            LaurentSymbol sh = binom_apply(t, y);
                            for (auto &[kk, g] : sh.coeffs())
                                z.add(kk, g * q);
                        }
                        xb = xb + z;
                    }
                    acc = acc - arrow_apply_symbol(theta_gen[b][size_t(j)], xb);
                }
                out.full_table[size_t(i)][size_t(j)] = acc;
            }
    }

    // Quotient when the constraints are plain generators.
    std::vector<int> constrained;
    bool plain = true;
    for (auto &t : constraints) {
        if (t.terms().size() == 1) {
            const Mono &mm = t.terms().begin()->first;
            if (mm.size() == 1 && mm[0].second == 1 && mm[0].first.ord == 0 &&
                t.terms().begin()->second.is_one()) {
                constrained.push_back(mm[0].first.gen);
                continue;
            }
        }
        plain = false;
        break;
    }
    if (plain) {
        for (int g = 0; g < ell; ++g)
            if (std::find(constrained.begin(), constrained.end(), g) == constrained.end())
                out.kept.push_back(g);
        out.table.assign(out.kept.size(),
                         std::vector<LaurentSymbol>(out.kept.size(), LaurentSymbol(floor)));
        for (size_t i = 0; i < out.kept.size(); ++i)
            for (size_t j = 0; j < out.kept.size(); ++j) {
                LaurentSymbol e = out.full_table[size_t(out.kept[i])][size_t(out.kept[j])];
                LaurentSymbol sub(floor);
                for (auto &[k, f] : e.coeffs()) {
                    DiffPoly g = f;
                    for (int cg : constrained)
                        g = g.substituted_gen(cg, DiffPoly());
                    sub.add(k, g);
                }
                out.table[i][j] = sub;
            }
        for (int g : out.kept)
            out.names.push_back(s.names[size_t(g)]);
    }
    return out;
}

NlsReport nls_demo(const Coeff &kappa, int m) {
    if (kappa.is_zero())
        throw std::invalid_argument("nls_demo: kappa must be nonzero");
    NlsReport rep;
    LieAlgebraData l = sl2_root(-kappa);
    LieVec s_elt = l.basis_vec(2);
    PvaSpec h = affine_h(l, Coeff(1));
    PvaSpec k = affine_k(l, s_elt);
    std::vector<DiffPoly> theta{DiffPoly::var(2)};
    rep.reduced_h = dirac_reduce(h, theta, m);
    rep.reduced_k = dirac_reduce(k, theta, m);

    // t_2 flow of the homogeneous hierarchy for a = s, specialized by the
    // constraint (s and its derivatives set to 0).
    DsGauge g = ds_gauge(l, s_elt, 3);
    std::vector<FunctionalClass> dens = ds_densities(l, s_elt, g);
    DiffPoly du = hamiltonian_flow(dens[2].rep(), DiffPoly::var(0), h);
    DiffPoly dv = hamiltonian_flow(dens[2].rep(), DiffPoly::var(1), h);
    du = du.substituted_gen(2, DiffPoly());
    dv = dv.substituted_gen(2, DiffPoly());
    rep.du_dt = du;
    rep.dv_dt = dv;

    // Expected shape: du/dt = u'' + kappa_eff u^2 v, dv/dt = -v'' - kappa_eff u v^2.
    Mono uuv{{DerivVar{0, 0}, 2}, {DerivVar{1, 0}, 1}};
    auto it = du.terms().find(uuv);
    if (it != du.terms().end()) {
        rep.kappa_eff = it->second;
        DiffPoly want_du = DiffPoly::var(0, 2);
        want_du.add_term(uuv, rep.kappa_eff);
        DiffPoly want_dv = -DiffPoly::var(1, 2);
        Mono uvv{{DerivVar{0, 0}, 1}, {DerivVar{1, 0}, 2}};
        want_dv.add_term(uvv, -rep.kappa_eff);
        rep.shape_ok = (du == want_du) && (dv == want_dv);
    }
    return rep;
}

std::string LaurentSymbol::str(const std::vector<std::string> &gen_names,
                               const std::string &lambda_name) const {
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        std::string body = it->second.str(gen_names);
        bool multi = it->second.terms().size() > 1;
        std::string lpow;
        if (it->first == 1)
            lpow = lambda_name;
        else if (it->first != 0)
            lpow = lambda_name + "^" + std::to_string(it->first);
        if (lpow.empty())
            os << (multi ? "(" + body + ")" : body);
        else if (body == "1")
            os << lpow;
        else
            os << (multi ? "(" + body + ")" : body) << "*" << lpow;
    }
    os << " + O(" << lambda_name << "^" << floor_ - 1 << ")";
    return os.str();
}

} // namespace lbc
