#include "lbcalc/quantum.hpp"

#include "lbcalc/diffalg.hpp"

#include <sstream>
#include <stdexcept>

namespace lbc {

VaExpr va_zero() { return {}; }

VaExpr va_vacuum() { return {{VaWord{}, Coeff(1)}}; }

VaExpr va_gen(int g, int tpow) { return {{VaWord{VaFactor{g, tpow}}, Coeff(1)}}; }

bool va_is_zero(const VaExpr &a) { return a.empty(); }

static void va_add_term(VaExpr &acc, const VaWord &w, const Coeff &c) {
    if (c.is_zero())
        return;
    auto it = acc.find(w);
    if (it == acc.end()) {
        acc[w] = c;
    } else {
        it->second += c;
        if (it->second.is_zero())
            acc.erase(it);
    }
}

VaExpr va_scale(const VaExpr &a, const Coeff &c) {
    VaExpr r;
    if (c.is_zero())
        return r;
    for (auto &[w, k] : a)
        r[w] = k * c;
    return r;
}

VaExpr va_add(const VaExpr &a, const VaExpr &b) {
    VaExpr r = a;
    for (auto &[w, c] : b)
        va_add_term(r, w, c);
    return r;
}

VaExpr va_sub(const VaExpr &a, const VaExpr &b) {
    VaExpr r = a;
    for (auto &[w, c] : b)
        va_add_term(r, w, -c);
    return r;
}

int word_parity(const LcaSpec &s, const VaWord &w) {
    int p = 0;
    for (auto &f : w)
        p ^= s.parity[size_t(f.gen)] & 1;
    return p;
}

VaLambda va_lambda_scale(const VaLambda &a, const Coeff &c) {
    VaLambda r;
    if (c.is_zero())
        return r;
    for (auto &[k, e] : a) {
        VaExpr v = va_scale(e, c);
        if (!va_is_zero(v))
            r[k] = std::move(v);
    }
    return r;
}

static void va_lambda_add_at(VaLambda &acc, int k, const VaExpr &e) {
    if (va_is_zero(e))
        return;
    auto it = acc.find(k);
    if (it == acc.end()) {
        acc[k] = e;
    } else {
        it->second = va_add(it->second, e);
        if (va_is_zero(it->second))
            acc.erase(it);
    }
}

VaLambda va_lambda_add(const VaLambda &a, const VaLambda &b) {
    VaLambda r = a;
    for (auto &[k, e] : b)
        va_lambda_add_at(r, k, e);
    return r;
}

bool va_lambda_is_zero(const VaLambda &a) { return a.empty(); }

VaExpr va_lambda_coeff(const VaLambda &a, int k) {
    auto it = a.find(k);
    return it == a.end() ? VaExpr{} : it->second;
}

// ---- recursion machinery ----------------------------------------------

namespace {

struct DepthGuard {
    static thread_local int depth;
    DepthGuard() {
        if (++depth > 400)
            throw std::logic_error("va recursion depth exceeded (non-terminating table?)");
    }
    ~DepthGuard() { --depth; }
};
thread_local int DepthGuard::depth = 0;

VaExpr word_expr(const VaWord &w) { return {{w, Coeff(1)}}; }

VaWord word_tail(const VaWord &w) { return VaWord(w.begin() + 1, w.end()); }

} // namespace

static VaExpr insert_factor(const LcaSpec &s, const VaFactor &d, const VaWord &w);
static VaLambda bracket_ww(const LcaSpec &s, const VaWord &a, const VaWord &b);

// Bilinear product entry point.
static VaExpr word_times_word(const LcaSpec &s, const VaWord &v, const VaWord &w);

VaExpr no_product(const LcaSpec &s, const VaExpr &a, const VaExpr &b) {
    VaExpr r;
    for (auto &[wa, ca] : a)
        for (auto &[wb, cb] : b) {
            VaExpr p = word_times_word(s, wa, wb);
            r = va_add(r, va_scale(p, ca * cb));
        }
    return r;
}

VaLambda va_bracket(const LcaSpec &s, const VaExpr &a, const VaExpr &b) {
    VaLambda r;
    for (auto &[wa, ca] : a)
        for (auto &[wb, cb] : b)
            r = va_lambda_add(r, va_lambda_scale(bracket_ww(s, wa, wb), ca * cb));
    return r;
}

VaExpr t_apply(const LcaSpec &s, const VaExpr &a, int times) {
    VaExpr cur = a;
    for (int t = 0; t < times; ++t) {
        VaExpr next;
        for (auto &[w, c] : cur) {
            for (size_t i = 0; i < w.size(); ++i) {
                VaWord bumped = w;
                bumped[i].tpow += 1;
                // Renormalize right-nested: fold factors in from the right.
                VaExpr acc = va_vacuum();
                for (size_t j = bumped.size(); j-- > 0;) {
                    VaExpr step;
                    for (auto &[aw, ac] : acc)
                        step = va_add(step, va_scale(insert_factor(s, bumped[j], aw), ac));
                    acc = std::move(step);
                }
                next = va_add(next, va_scale(acc, c));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

VaExpr quasicomm_integral(const LcaSpec &s, const VaExpr &a, const VaExpr &b) {
    // int_{-T}^0 [a_l b] dl = sum_j (-1)^j/(j+1) T^{j+1}(coeff_j).
    VaLambda br = va_bracket(s, a, b);
    VaExpr r;
    for (auto &[j, e] : br) {
        Coeff c = Coeff((j % 2 == 0) ? 1 : -1, j + 1);
        r = va_add(r, va_scale(t_apply(s, e, j + 1), c));
    }
    return r;
}

static VaExpr insert_factor(const LcaSpec &s, const VaFactor &d, const VaWord &w) {
    DepthGuard guard;
    if (w.empty())
        return word_expr(VaWord{d});
    const VaFactor &e = w.front();
    bool in_order = d.gen < e.gen || (d.gen == e.gen && d.tpow > e.tpow);
    bool equal = d == e;
    int pd = s.parity[size_t(d.gen)], pe = s.parity[size_t(e.gen)];
    if (in_order || (equal && pd == 0)) {
        VaWord out;
        out.reserve(w.size() + 1);
        out.push_back(d);
        out.insert(out.end(), w.begin(), w.end());
        return word_expr(out);
    }
    VaWord rest = word_tail(w);
    VaExpr corr = quasicomm_integral(s, word_expr(VaWord{d}), word_expr(VaWord{e}));
    VaExpr corr_w = no_product(s, corr, word_expr(rest));
    if (equal) {
        // Odd equal factors: 2 :ddW: = :(int [d_l d]) W:.
        return va_scale(corr_w, Coeff(1, 2));
    }
    // :d(eW): = (-1)^{p(d)p(e)} :e(dW): + :(int_{-T}^0 [d_l e] dl) W:.
    VaExpr swapped;
    VaExpr dw = insert_factor(s, d, rest);
    for (auto &[ww, cc] : dw)
        swapped = va_add(swapped, va_scale(insert_factor(s, e, ww), cc));
    Coeff sign((pd & pe & 1) ? -1 : 1);
    return va_add(va_scale(swapped, sign), corr_w);
}

static VaExpr word_times_word(const LcaSpec &s, const VaWord &v, const VaWord &w) {
    DepthGuard guard;
    if (v.empty())
        return word_expr(w);
    if (w.empty())
        return word_expr(v);
    if (v.size() == 1)
        return insert_factor(s, v.front(), w);
    // Quasiassociativity with a = head, b = tail, c = w:
    // ::ab:c: = :a:bc:: + :(int_0^T dl a)[b_l c]: + (-1)^{p(a)p(b)} :(int_0^T dl b)[a_l c]:
    VaFactor head = v.front();
    VaWord tail = word_tail(v);
    VaExpr r;
    {
        VaExpr bc = word_times_word(s, tail, w);
        for (auto &[ww, cc] : bc)
            r = va_add(r, va_scale(insert_factor(s, head, ww), cc));
    }
    {
        VaLambda br = bracket_ww(s, tail, w);
        for (auto &[j, e] : br) {
            VaFactor shifted = head;
            shifted.tpow += j + 1;
            VaExpr prod = no_product(s, word_expr(VaWord{shifted}), e);
            r = va_add(r, va_scale(prod, Coeff(1, j + 1)));
        }
    }
    {
        VaLambda br = bracket_ww(s, VaWord{head}, w);
        int pa = s.parity[size_t(head.gen)], pb = word_parity(s, tail);
        Coeff sign((pa & pb & 1) ? -1 : 1);
        for (auto &[j, e] : br) {
            VaExpr tshift = t_apply(s, word_expr(tail), j + 1);
            VaExpr prod = no_product(s, tshift, e);
            r = va_add(r, va_scale(prod, sign * Coeff(1, j + 1)));
        }
    }
    return r;
}

// (l+T)^n applied to a bracket value, T acting on the coefficients.
static VaLambda lambda_t_shift(const LcaSpec &s, VaLambda v, int n) {
    for (int t = 0; t < n; ++t) {
        VaLambda next;
        for (auto &[k, e] : v) {
            va_lambda_add_at(next, k + 1, e);
            va_lambda_add_at(next, k, t_apply(s, e));
        }
        v = std::move(next);
    }
    return v;
}

static VaLambda bracket_ww(const LcaSpec &s, const VaWord &a, const VaWord &b) {
    DepthGuard guard;
    if (a.empty() || b.empty())
        return {};
    if (b.size() >= 2) {
        // Non-commutative Wick formula on b = :d c:.
        VaFactor d = b.front();
        VaWord c = word_tail(b);
        VaLambda r;
        VaLambda ad = bracket_ww(s, a, VaWord{d});
        for (auto &[j, e] : ad)
            va_lambda_add_at(r, j, no_product(s, e, word_expr(c)));
        {
            VaLambda ac = bracket_ww(s, a, c);
            int pa = word_parity(s, a), pd = s.parity[size_t(d.gen)];
            Coeff sign((pa & pd & 1) ? -1 : 1);
            for (auto &[j, e] : ac)
                va_lambda_add_at(r, j, va_scale(no_product(s, word_expr(VaWord{d}), e), sign));
        }
        // int_0^l [[a_l d]_m c] dm.
        for (auto &[j, e] : ad) {
            VaLambda inner = va_bracket(s, e, word_expr(c));
            for (auto &[t, f] : inner)
                va_lambda_add_at(r, j + t + 1, va_scale(f, Coeff(1, t + 1)));
        }
        return r;
    }
    if (a.size() >= 2) {
        // Skewsymmetry: [a_l b] = -(-1)^{p(a)p(b)} [b_{-l-T} a].
        VaLambda rba = bracket_ww(s, b, a);
        int pa = word_parity(s, a), pb = word_parity(s, b);
        Coeff outer((pa & pb & 1) ? 1 : -1);
        VaLambda r;
        for (auto &[j, e] : rba) {
            for (int i = 0; i <= j; ++i) {
                Coeff c = outer * Coeff((j % 2 == 0) ? 1 : -1) * Coeff(binomial(j, i));
                va_lambda_add_at(r, j - i, va_scale(t_apply(s, e, i), c));
            }
        }
        return r;
    }
    // Base case: table entry with sesquilinearity for the T-powers.
    const VaFactor &fa = a.front(), &fb = b.front();
    VaLambda v = s.table[size_t(fa.gen)][size_t(fb.gen)];
    v = lambda_t_shift(s, std::move(v), fb.tpow);
    if (fa.tpow > 0) {
        VaLambda shifted;
        Coeff sign(fa.tpow % 2 == 0 ? 1 : -1);
        for (auto &[k, e] : v)
            va_lambda_add_at(shifted, k + fa.tpow, va_scale(e, sign));
        v = std::move(shifted);
    }
    return v;
}

// ---- structural checks ------------------------------------------------

VirasoroForm virasoro_extract(const LcaSpec &s, const VaExpr &l) {
    VirasoroForm out;
    VaLambda br = va_bracket(s, l, l);
    VaLambda expect;
    va_lambda_add_at(expect, 0, t_apply(s, l));
    va_lambda_add_at(expect, 1, va_scale(l, Coeff(2)));
    VaLambda rest = va_lambda_add(br, va_lambda_scale(expect, Coeff(-1)));
    // What remains must be exactly (l^3/12) c |0>.
    VaExpr cubic = va_lambda_coeff(rest, 3);
    Coeff c(0);
    if (!va_is_zero(cubic)) {
        if (cubic.size() != 1 || !cubic.begin()->first.empty()) {
            out.residual = "l^3 coefficient is not a vacuum multiple";
            return out;
        }
        c = cubic.begin()->second * Coeff(12);
    }
    VaLambda final_res = rest;
    final_res.erase(3);
    if (!va_lambda_is_zero(final_res)) {
        out.residual = va_lambda_str(s, final_res);
        return out;
    }
    out.is_virasoro = true;
    out.central_charge = c;
    return out;
}

bool primary_check(const LcaSpec &s, const VaExpr &l, const VaExpr &a, const Coeff &delta) {
    VaLambda br = va_bracket(s, l, a);
    VaLambda expect;
    va_lambda_add_at(expect, 0, t_apply(s, a));
    va_lambda_add_at(expect, 1, va_scale(a, delta));
    return va_lambda_is_zero(va_lambda_add(br, va_lambda_scale(expect, Coeff(-1))));
}

using VaLambdaMu = std::map<std::pair<int, int>, VaExpr>;

static void lm_add(VaLambdaMu &acc, int a, int b, const VaExpr &e, const Coeff &c) {
    VaExpr v = va_scale(e, c);
    if (va_is_zero(v))
        return;
    auto key = std::make_pair(a, b);
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc[key] = v;
    } else {
        it->second = va_add(it->second, v);
        if (va_is_zero(it->second))
            acc.erase(it);
    }
}

static VaLambdaMu lca_jacobi_residual(const LcaSpec &s, int i, int j, int k) {
    VaLambdaMu acc;
    VaExpr gi = va_gen(i), gj = va_gen(j), gk = va_gen(k);
    // [g_i l [g_j m g_k]]
    for (auto &[b, v] : va_bracket(s, gj, gk))
        for (auto &[a, w] : va_bracket(s, gi, v))
            lm_add(acc, a, b, w, Coeff(1));
    // -(-1)^{p_i p_j} [g_j m [g_i l g_k]]
    int sign_jac = (s.parity[size_t(i)] & s.parity[size_t(j)] & 1) ? 1 : -1;
    for (auto &[a, v] : va_bracket(s, gi, gk))
        for (auto &[b, w] : va_bracket(s, gj, v))
            lm_add(acc, a, b, w, Coeff(sign_jac));
    // -[[g_i l g_j]_{l+m} g_k]
    for (auto &[a, v] : va_bracket(s, gi, gj))
        for (auto &[t, w] : va_bracket(s, v, gk))
            for (int c = 0; c <= t; ++c)
                lm_add(acc, a + c, t - c, w, Coeff(-binomial(t, c)));
    return acc;
}

LcaReport check_lca(const LcaSpec &s) {
    LcaReport rep;
    int n = s.n();
    // Skewsymmetry of the table.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            VaLambda lhs = s.table[size_t(i)][size_t(j)];
            VaLambda rba = s.table[size_t(j)][size_t(i)];
            int sign = (s.parity[size_t(i)] & s.parity[size_t(j)] & 1) ? 1 : -1;
            VaLambda expect;
            for (auto &[t, e] : rba)
                for (int c = 0; c <= t; ++c) {
                    Coeff f = Coeff(sign) * Coeff(t % 2 == 0 ? 1 : -1) * Coeff(binomial(t, c));
                    va_lambda_add_at(expect, t - c, va_scale(t_apply(s, e, c), f));
                }
            VaLambda res = va_lambda_add(lhs, va_lambda_scale(expect, Coeff(-1)));
            if (!va_lambda_is_zero(res))
                rep.issues.push_back({"skewsymmetry", i, j, -1, va_lambda_str(s, res)});
        }
    // Jacobi identity on generator triples.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                VaLambdaMu res = lca_jacobi_residual(s, i, j, k);
                if (!res.empty()) {
                    std::ostringstream os;
                    for (auto &[ab, e] : res)
                        os << "l^" << ab.first << " m^" << ab.second << ": "
                           << va_str(s, e) << "; ";
                    rep.issues.push_back({"jacobi", i, j, k, os.str()});
                }
            }
    // Conformal-weight grading, when every generator is weighted.
    bool weighted = true;
    for (auto &w : s.weight)
        if (!w)
            weighted = false;
    if (weighted) {
        auto word_weight = [&](const VaWord &w) {
            Coeff acc(0);
            for (auto &f : w)
                acc += *s.weight[size_t(f.gen)] + Coeff(f.tpow);
            return acc;
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (auto &[t, e] : s.table[size_t(i)][size_t(j)]) {
                    Coeff want = *s.weight[size_t(i)] + *s.weight[size_t(j)] - Coeff(t + 1);
                    for (auto &[w, c] : e)
                        if (word_weight(w) != want)
                            rep.issues.push_back({"weight", i, j, t, va_str(s, e)});
                }
    }
    return rep;
}

// ---- bundled algebras ---------------------------------------------------

LcaSpec virasoro_lca(const Coeff &c, const Coeff &alpha) {
    LcaSpec s;
    s.names = {"L"};
    s.parity = {0};
    s.weight = {alpha.is_zero() ? std::optional<Coeff>(Coeff(2)) : std::nullopt};
    VaLambda ll;
    ll[0] = va_gen(0, 1);
    ll[1] = va_scale(va_gen(0), Coeff(2));
    VaExpr ac = va_scale(va_vacuum(), alpha * c);
    if (!va_is_zero(ac))
        ll[1] = va_add(ll[1], ac);
    VaExpr cc = va_scale(va_vacuum(), c * Coeff(1, 12));
    if (!va_is_zero(cc))
        ll[3] = cc;
    s.table = {{ll}};
    return s;
}

static LcaSpec current_common(const LieAlgebraData &l, const Coeff &k, const LieVec *s_elt) {
    LcaSpec s;
    s.names = l.labels;
    int n = l.dim();
    s.parity.assign(size_t(n), 0);
    s.weight.assign(size_t(n), s_elt ? std::nullopt : std::optional<Coeff>(Coeff(1)));
    s.table.assign(size_t(n), std::vector<VaLambda>(size_t(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            VaLambda e;
            const LieVec &br = l.sc[size_t(i)][size_t(j)];
            VaExpr cur;
            for (int t = 0; t < n; ++t)
                if (!br[size_t(t)].is_zero())
                    cur = va_add(cur, va_scale(va_gen(t), br[size_t(t)]));
            if (!va_is_zero(cur))
                e[0] = cur;
            Coeff pair = l.form[size_t(i)][size_t(j)] * k;
            if (!pair.is_zero())
                e[1] = va_scale(va_vacuum(), pair);
            if (s_elt) {
                Coeff coc(0);
                for (int t = 0; t < n; ++t)
                    coc += (*s_elt)[size_t(t)] * l.pairing(l.basis_vec(t), br);
                coc = coc * k;
                if (!coc.is_zero()) {
                    auto it = e.find(0);
                    if (it == e.end())
                        e[0] = va_scale(va_vacuum(), coc);
                    else
                        it->second = va_add(it->second, va_scale(va_vacuum(), coc));
                }
            }
            s.table[size_t(i)][size_t(j)] = std::move(e);
        }
    return s;
}

LcaSpec current_lca(const LieAlgebraData &l, const Coeff &k) {
    return current_common(l, k, nullptr);
}

LcaSpec current_lca_twisted(const LieAlgebraData &l, const Coeff &k, const LieVec &s) {
    return current_common(l, k, &s);
}

LcaSpec free_boson_lca() {
    LcaSpec s;
    s.names = {"a"};
    s.parity = {0};
    s.weight = {Coeff(1)};
    VaLambda aa;
    aa[1] = va_vacuum();
    s.table = {{aa}};
    return s;
}

LcaSpec free_fermion_lca() {
    LcaSpec s;
    s.names = {"phi"};
    s.parity = {1};
    s.weight = {Coeff(1, 2)};
    VaLambda pp;
    pp[0] = va_vacuum();
    s.table = {{pp}};
    return s;
}

bool lie_is_abelian(const LieAlgebraData &l);
bool lie_is_abelian(const LieAlgebraData &l) {
    for (auto &row : l.sc)
        for (auto &v : row)
            for (auto &c : v)
                if (!c.is_zero())
                    return false;
    return true;
}

Coeff dual_coxeter(const LieAlgebraData &l) {
    if (lie_is_abelian(l))
        return Coeff(0);
    return casimir_adjoint_eigenvalue(l) * Coeff(1, 2);
}

VaExpr sugawara(const LieAlgebraData &l, const Coeff &k) {
    Coeff hv = dual_coxeter(l);
    Coeff denom = k + hv;
    if (denom.is_zero())
        throw std::invalid_argument("sugawara: k + h_vee vanishes");
    LcaSpec s = current_lca(l, k);
    DualBases d = dual_bases(l);
    VaExpr sum;
    for (int i = 0; i < l.dim(); ++i) {
        VaExpr ai = va_gen(i);
        VaExpr bi;
        for (int t = 0; t < l.dim(); ++t)
            if (!d.b[size_t(i)][size_t(t)].is_zero())
                bi = va_add(bi, va_scale(va_gen(t), d.b[size_t(i)][size_t(t)]));
        sum = va_add(sum, no_product(s, ai, bi));
    }
    return va_scale(sum, (denom * Coeff(2)).inverse());
}

// ---- printing ------------------------------------------------------------

static std::string factor_str(const LcaSpec &s, const VaFactor &f) {
    std::string base = f.gen < int(s.names.size()) ? s.names[size_t(f.gen)]
                                                   : "g" + std::to_string(f.gen);
    if (f.tpow == 0)
        return base;
    if (f.tpow == 1)
        return "T(" + base + ")";
    return "T^" + std::to_string(f.tpow) + "(" + base + ")";
}

static std::string word_str(const LcaSpec &s, const VaWord &w) {
    if (w.empty())
        return "vac";
    if (w.size() == 1)
        return factor_str(s, w.front());
    // Right-nested normally ordered product.
    std::string inner = word_str(s, VaWord(w.begin() + 1, w.end()));
    return ":" + factor_str(s, w.front()) + " " + inner + ":";
}

std::string va_str(const LcaSpec &s, const VaExpr &a) {
    if (a.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto &[w, c] : a) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg)
            cs = cs.substr(1);
        first = false;
        if (cs == "1")
            os << word_str(s, w);
        else
            os << cs << "*" << word_str(s, w);
    }
    return os.str();
}

std::string va_lambda_str(const LcaSpec &s, const VaLambda &a, const std::string &lambda_name) {
    if (a.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        std::string body = va_str(s, it->second);
        bool multi = it->second.size() > 1;
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
            os << lpow << "*" << (multi ? "(" + body + ")" : body);
    }
    return os.str();
}

} // namespace lbc
