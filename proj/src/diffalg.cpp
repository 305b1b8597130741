#include "lbcalc/diffalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lbc {

bool MonoLess::operator()(const Mono &a, const Mono &b) const {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second)
                return a[i].second < b[j].second;
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            return false;
        } else {
            return true;
        }
    }
    return i == a.size() && j < b.size();
}

Mono mono_mul(const Mono &a, const Mono &b) {
    Mono r;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

int mono_total_degree(const Mono &a) {
    int d = 0;
    for (auto &[v, e] : a)
        d += e;
    return d;
}

int mono_max_order(const Mono &a) {
    int d = -1;
    for (auto &[v, e] : a)
        d = std::max(d, v.ord);
    return d;
}

DiffPoly::DiffPoly(Coeff c) {
    if (!c.is_zero())
        terms_[Mono{}] = std::move(c);
}

DiffPoly DiffPoly::var(int gen, int ord) {
    DiffPoly p;
    p.terms_[Mono{{DerivVar{gen, ord}, 1}}] = Coeff(1);
    return p;
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Coeff DiffPoly::constant_term() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Coeff(0) : it->second;
}

void DiffPoly::add_term(const Mono &m, const Coeff &c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r;
    for (auto &[m, c] : terms_)
        r.terms_[m] = -c;
    return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly &o) const {
    DiffPoly r = *this;
    for (auto &[m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly &o) const {
    DiffPoly r = *this;
    for (auto &[m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly &o) const {
    DiffPoly r;
    for (auto &[m1, c1] : terms_)
        for (auto &[m2, c2] : o.terms_)
            r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

DiffPoly DiffPoly::operator*(const Coeff &c) const {
    DiffPoly r;
    if (c.is_zero())
        return r;
    for (auto &[m, k] : terms_)
        r.terms_[m] = k * c;
    return r;
}

int DiffPoly::total_degree() const {
    int d = 0;
    for (auto &[m, c] : terms_)
        d = std::max(d, mono_total_degree(m));
    return d;
}

int DiffPoly::max_order() const {
    int d = -1;
    for (auto &[m, c] : terms_)
        d = std::max(d, mono_max_order(m));
    return d;
}

std::vector<DerivVar> DiffPoly::variables() const {
    std::set<std::pair<int, int>> s;
    for (auto &[m, c] : terms_)
        for (auto &[v, e] : m)
            s.insert({v.gen, v.ord});
    std::vector<DerivVar> r;
    for (auto &[g, n] : s)
        r.push_back(DerivVar{g, n});
    return r;
}

DiffPoly total_derivative(const DiffPoly &f) {
    DiffPoly r;
    for (auto &[m, c] : f.terms()) {
        for (size_t k = 0; k < m.size(); ++k) {
            // d/dx of v^e factor: e * v^(e-1) * v'
            Mono rest;
            for (size_t t = 0; t < m.size(); ++t) {
                if (t == k) {
                    if (m[t].second > 1)
                        rest.emplace_back(m[t].first, m[t].second - 1);
                } else {
                    rest.push_back(m[t]);
                }
            }
            DerivVar up{m[k].first.gen, m[k].first.ord + 1};
            Mono term = mono_mul(rest, Mono{{up, 1}});
            r.add_term(term, c * Coeff(m[k].second));
        }
    }
    return r;
}

DiffPoly total_derivative(const DiffPoly &f, int times) {
    DiffPoly r = f;
    for (int i = 0; i < times; ++i)
        r = total_derivative(r);
    return r;
}

DiffPoly partial_derivative(const DiffPoly &f, int gen, int ord) {
    DerivVar v{gen, ord};
    DiffPoly r;
    for (auto &[m, c] : f.terms()) {
        for (size_t k = 0; k < m.size(); ++k) {
            if (!(m[k].first == v))
                continue;
            Mono rest;
            for (size_t t = 0; t < m.size(); ++t) {
                if (t == k) {
                    if (m[t].second > 1)
                        rest.emplace_back(m[t].first, m[t].second - 1);
                } else {
                    rest.push_back(m[t]);
                }
            }
            r.add_term(rest, c * Coeff(m[k].second));
        }
    }
    return r;
}

DiffPoly DiffPoly::substituted_gen(int gen, const DiffPoly &value) const {
    // Precompute total derivatives of the replacement up to the max order.
    int maxord = 0;
    for (auto &[m, c] : terms_)
        for (auto &[v, e] : m)
            if (v.gen == gen)
                maxord = std::max(maxord, v.ord);
    std::vector<DiffPoly> derivs{value};
    for (int n = 1; n <= maxord; ++n)
        derivs.push_back(total_derivative(derivs.back()));
    DiffPoly r;
    for (auto &[m, c] : terms_) {
        DiffPoly t{c};
        for (auto &[v, e] : m) {
            DiffPoly base = v.gen == gen ? derivs[size_t(v.ord)] : DiffPoly::var(v.gen, v.ord);
            for (int k = 0; k < e; ++k)
                t = t * base;
        }
        r += t;
    }
    return r;
}

DiffPoly DiffPoly::param_substituted(const std::string &name, const Int &v) const {
    DiffPoly r;
    for (auto &[m, c] : terms_)
        r.add_term(m, c.substituted(name, v));
    return r;
}

// ---- DiffOp -------------------------------------------------------------

static void entry_trim(DiffOp::Entry &e) {
    while (!e.empty() && e.back().is_zero())
        e.pop_back();
}

DiffOp::DiffOp(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows * cols)) {}

DiffOp DiffOp::scalar(Entry e) {
    DiffOp op(1, 1);
    op.set(0, 0, std::move(e));
    return op;
}

DiffOp DiffOp::identity(int n) {
    DiffOp op(n, n);
    for (int i = 0; i < n; ++i)
        op.set(i, i, Entry{DiffPoly(1)});
    return op;
}

void DiffOp::set(int r, int c, Entry e) {
    entry_trim(e);
    e_[size_t(r * cols_ + c)] = std::move(e);
}

int DiffOp::order() const {
    int d = -1;
    for (auto &e : e_)
        d = std::max(d, int(e.size()) - 1);
    return d;
}

DiffOp DiffOp::operator+(const DiffOp &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("DiffOp: shape mismatch");
    DiffOp r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            Entry e = at(i, j);
            const Entry &f = o.at(i, j);
            if (f.size() > e.size())
                e.resize(f.size());
            for (size_t k = 0; k < f.size(); ++k)
                e[k] += f[k];
            r.set(i, j, std::move(e));
        }
    return r;
}

DiffOp DiffOp::operator-(const DiffOp &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("DiffOp: shape mismatch");
    DiffOp r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            Entry e = at(i, j);
            const Entry &f = o.at(i, j);
            if (f.size() > e.size())
                e.resize(f.size());
            for (size_t k = 0; k < f.size(); ++k)
                e[k] -= f[k];
            r.set(i, j, std::move(e));
        }
    return r;
}

bool DiffOp::operator==(const DiffOp &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool DiffOp::is_zero() const {
    for (auto &e : e_)
        if (!e.empty())
            return false;
    return true;
}

Int binomial(int n, int k) {
    if (k < 0)
        return 0;
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= Int(n - i);
        den *= Int(i + 1);
    }
    return num / den;
}

// Entry composition: (sum_k f_k d^k) o (sum_m g_m d^m), normalizing d o g =
// g d + g' termwise via Leibniz: d^k o g = sum_j C(k,j) g^(j) d^(k-j).
static DiffOp::Entry entry_compose(const DiffOp::Entry &a, const DiffOp::Entry &b) {
    DiffOp::Entry r;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero())
            continue;
        for (size_t m = 0; m < b.size(); ++m) {
            if (b[m].is_zero())
                continue;
            DiffPoly g = b[m];
            for (size_t j = 0; j <= k; ++j) {
                size_t pow = k - j + m;
                if (r.size() <= pow)
                    r.resize(pow + 1);
                r[pow] += a[k] * total_derivative(g, int(j)) * Coeff(binomial(int(k), int(j)));
            }
        }
    }
    entry_trim(r);
    return r;
}

DiffOp diffop_compose(const DiffOp &a, const DiffOp &b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("diffop_compose: shape mismatch");
    DiffOp r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            DiffOp::Entry acc;
            for (int t = 0; t < a.cols(); ++t) {
                DiffOp::Entry e = entry_compose(a.at(i, t), b.at(t, j));
                if (e.size() > acc.size())
                    acc.resize(e.size());
                for (size_t k = 0; k < e.size(); ++k)
                    acc[k] += e[k];
            }
            r.set(i, j, std::move(acc));
        }
    return r;
}

// (f d^k)^* = (-d)^k o f = sum_j C(k,j) (-1)^k f^(j) d^(k-j); matrix transposed.
static DiffOp::Entry entry_adjoint(const DiffOp::Entry &a) {
    DiffOp::Entry r;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero())
            continue;
        int sign = (k % 2 == 0) ? 1 : -1;
        for (size_t j = 0; j <= k; ++j) {
            size_t pow = k - j;
            if (r.size() <= pow)
                r.resize(pow + 1);
            r[pow] += total_derivative(a[k], int(j)) * Coeff(sign * binomial(int(k), int(j)));
        }
    }
    entry_trim(r);
    return r;
}

DiffOp diffop_adjoint(const DiffOp &a) {
    DiffOp r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.set(j, i, entry_adjoint(a.at(i, j)));
    return r;
}

std::vector<DiffPoly> diffop_apply(const DiffOp &a, const std::vector<DiffPoly> &f) {
    if (int(f.size()) != a.cols())
        throw std::invalid_argument("diffop_apply: shape mismatch");
    std::vector<DiffPoly> r((size_t)(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const DiffOp::Entry &e = a.at(i, j);
            for (size_t k = 0; k < e.size(); ++k)
                if (!e[k].is_zero())
                    r[size_t(i)] += e[k] * total_derivative(f[size_t(j)], int(k));
        }
    return r;
}

// ---- LambdaPoly ----------------------------------------------------------

LambdaPoly::LambdaPoly(DiffPoly c) {
    if (!c.is_zero())
        c_[0] = std::move(c);
}

LambdaPoly LambdaPoly::lambda(int power) {
    LambdaPoly p;
    p.c_[power] = DiffPoly(1);
    return p;
}

DiffPoly LambdaPoly::coeff(int k) const {
    auto it = c_.find(k);
    return it == c_.end() ? DiffPoly() : it->second;
}

void LambdaPoly::add(int k, const DiffPoly &f) {
    if (f.is_zero())
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

LambdaPoly LambdaPoly::operator-() const {
    LambdaPoly r;
    for (auto &[k, f] : c_)
        r.c_[k] = -f;
    return r;
}

LambdaPoly LambdaPoly::operator+(const LambdaPoly &o) const {
    LambdaPoly r = *this;
    for (auto &[k, f] : o.c_)
        r.add(k, f);
    return r;
}

LambdaPoly LambdaPoly::operator-(const LambdaPoly &o) const {
    LambdaPoly r = *this;
    for (auto &[k, f] : o.c_)
        r.add(k, -f);
    return r;
}

LambdaPoly LambdaPoly::operator*(const LambdaPoly &o) const {
    LambdaPoly r;
    for (auto &[k, f] : c_)
        for (auto &[m, g] : o.c_)
            r.add(k + m, f * g);
    return r;
}

LambdaPoly LambdaPoly::operator*(const DiffPoly &f) const {
    LambdaPoly r;
    for (auto &[k, g] : c_)
        r.add(k, g * f);
    return r;
}

LambdaPoly lambda_shift_apply(int q, const LambdaPoly &x, int sign) {
    // (s*lambda + s*d)^q x = sum_m C(q,m) s^q lambda^(q-m) d^m x
    LambdaPoly r;
    for (auto &[k, f] : x.coeffs()) {
        for (int m = 0; m <= q; ++m) {
            Coeff c(binomial(q, m) * (sign < 0 && q % 2 == 1 ? Int(-1) : Int(1)));
            r.add(k + q - m, total_derivative(f, m) * c);
        }
    }
    return r;
}

LambdaPoly lambda_shift_apply(int q, const DiffPoly &x, int sign) {
    return lambda_shift_apply(q, LambdaPoly(x), sign);
}

LambdaPoly arrow_apply(const LambdaPoly &b, const LambdaPoly &x) {
    LambdaPoly r;
    for (auto &[k, f] : b.coeffs()) {
        LambdaPoly shifted = lambda_shift_apply(k, x, +1);
        r += shifted * f;
    }
    return r;
}

DiffOp::Entry entry_from_symbol(const LambdaPoly &s) {
    DiffOp::Entry e;
    for (auto &[k, f] : s.coeffs()) {
        if (e.size() <= size_t(k))
            e.resize(size_t(k) + 1);
        e[size_t(k)] = f;
    }
    return e;
}

LambdaPoly symbol_of_entry(const DiffOp::Entry &e) {
    LambdaPoly s;
    for (size_t k = 0; k < e.size(); ++k)
        s.add(int(k), e[k]);
    return s;
}

// ---- printing -------------------------------------------------------------

static std::string var_str(const DerivVar &v, const std::vector<std::string> &names) {
    std::string base = v.gen < int(names.size()) ? names[size_t(v.gen)]
                                                 : "u" + std::to_string(v.gen + 1);
    if (v.ord == 0)
        return base;
    if (v.ord <= 3)
        return base + std::string(size_t(v.ord), '\'');
    return base + "^(" + std::to_string(v.ord) + ")";
}

static std::string mono_str(const Mono &m, const std::vector<std::string> &names) {
    std::ostringstream os;
    bool first = true;
    for (auto &[v, e] : m) {
        if (!first)
            os << "*";
        first = false;
        os << var_str(v, names);
        if (e != 1)
            os << "^" << e;
    }
    return os.str();
}

std::string DiffPoly::str(const std::vector<std::string> &gen_names) const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string cs = it->second.str();
        bool neg = cs.size() > 0 && cs[0] == '-';
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg)
            cs = cs.substr(1);
        first = false;
        if (it->first.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << mono_str(it->first, gen_names);
        } else {
            os << cs << "*" << mono_str(it->first, gen_names);
        }
    }
    return os.str();
}

std::string LambdaPoly::str(const std::vector<std::string> &gen_names,
                            const std::string &lambda_name) const {
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        std::string body = it->second.str(gen_names);
        bool neg = body.size() > 0 && body[0] == '-';
        bool multi = it->second.terms().size() > 1;
        if (first) {
            if (neg && !multi)
                os << "-";
        } else {
            os << ((neg && !multi) ? " - " : " + ");
        }
        if (neg && !multi)
            body = body.substr(1);
        first = false;
        std::string lpow;
        if (it->first == 1)
            lpow = lambda_name;
        else if (it->first != 0)
            lpow = lambda_name + "^" + std::to_string(it->first);
        if (lpow.empty()) {
            os << (multi ? "(" + body + ")" : body);
        } else if (body == "1") {
            os << lpow;
        } else {
            os << (multi ? "(" + body + ")" : body) << "*" << lpow;
        }
    }
    return os.str();
}

std::string DiffOp::str(const std::vector<std::string> &gen_names) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) {
            if (j)
                os << ", ";
            const Entry &e = at(i, j);
            if (e.empty()) {
                os << "0";
                continue;
            }
            bool first = true;
            for (size_t k = 0; k < e.size(); ++k) {
                if (e[k].is_zero())
                    continue;
                if (!first)
                    os << " + ";
                first = false;
                bool multi = e[k].terms().size() > 1;
                std::string body = e[k].str(gen_names);
                if (k == 0) {
                    os << body;
                } else {
                    std::string dpow = k == 1 ? "D" : "D^" + std::to_string(k);
                    if (body == "1")
                        os << dpow;
                    else
                        os << (multi ? "(" + body + ")" : body) << "*" << dpow;
                }
            }
        }
    }
    os << "]";
    return os.str();
}

} // namespace lbc
