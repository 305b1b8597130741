#include "lbcalc/coeff.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lbc {

bool ParamMonoLess::operator()(const ParamMono &a, const ParamMono &b) const {
    // Merge-walk by parameter name; the first differing exponent decides.
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second)
                return a[i].second < b[j].second;
            ++i, ++j;
        } else if (a[i].first < b[j].first) {
            return false; // a has the more significant variable
        } else {
            return true;
        }
    }
    return i == a.size() && j < b.size();
}

static ParamMono mono_mul(const ParamMono &a, const ParamMono &b) {
    ParamMono r;
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

// a / b, or nullopt-like failure via bool.
static bool mono_div(const ParamMono &a, const ParamMono &b, ParamMono &out) {
    out.clear();
    size_t i = 0, j = 0;
    while (j < b.size()) {
        if (i == a.size())
            return false;
        if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else if (a[i].first > b[j].first) {
            return false;
        } else {
            int d = a[i].second - b[j].second;
            if (d < 0)
                return false;
            if (d > 0)
                out.emplace_back(a[i].first, d);
            ++i, ++j;
        }
    }
    while (i < a.size())
        out.push_back(a[i++]);
    return true;
}

PPoly::PPoly(Int n) {
    if (n != 0)
        terms_[ParamMono{}] = std::move(n);
}

PPoly PPoly::param(const std::string &name, int exp) {
    PPoly p;
    if (exp == 0)
        return PPoly(Int(1));
    p.terms_[ParamMono{{name, exp}}] = 1;
    return p;
}

bool PPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int PPoly::constant() const {
    auto it = terms_.find(ParamMono{});
    return it == terms_.end() ? Int(0) : it->second;
}

void PPoly::add_term(const ParamMono &m, const Int &c) {
    if (c == 0)
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

PPoly PPoly::operator-() const {
    PPoly r;
    for (auto &[m, c] : terms_)
        r.terms_[m] = -c;
    return r;
}

PPoly PPoly::operator+(const PPoly &o) const {
    PPoly r = *this;
    for (auto &[m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

PPoly PPoly::operator-(const PPoly &o) const {
    PPoly r = *this;
    for (auto &[m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

PPoly PPoly::operator*(const PPoly &o) const {
    PPoly r;
    for (auto &[m1, c1] : terms_)
        for (auto &[m2, c2] : o.terms_)
            r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

const std::pair<const ParamMono, Int> &PPoly::leading() const {
    return *terms_.rbegin();
}

int PPoly::degree_in(const std::string &name) const {
    int d = 0;
    for (auto &[m, c] : terms_)
        for (auto &[v, e] : m)
            if (v == name)
                d = std::max(d, e);
    return d;
}

std::vector<std::string> PPoly::variables() const {
    std::set<std::string> s;
    for (auto &[m, c] : terms_)
        for (auto &[v, e] : m)
            s.insert(v);
    return {s.begin(), s.end()};
}

Int PPoly::int_content() const {
    Int g = 0;
    for (auto &[m, c] : terms_) {
        g = boost::multiprecision::gcd(g, c);
        if (g == 1)
            break;
    }
    return g;
}

PPoly PPoly::divided_by_int(const Int &d) const {
    PPoly r;
    for (auto &[m, c] : terms_)
        r.terms_[m] = c / d;
    return r;
}

PPoly PPoly::divexact(const PPoly &d) const {
    if (d.is_zero())
        throw std::invalid_argument("divexact by zero");
    PPoly rem = *this, q;
    while (!rem.is_zero()) {
        auto &[lm, lc] = rem.leading();
        auto &[dm, dc] = d.leading();
        ParamMono qm;
        if (!mono_div(lm, dm, qm) || lc % dc != 0)
            throw std::invalid_argument("divexact: not divisible");
        Int qc = lc / dc;
        PPoly t;
        t.terms_[qm] = qc;
        q.add_term(qm, qc);
        rem = rem - t * d;
    }
    return q;
}

PPoly PPoly::substituted(const std::string &name, const Int &value) const {
    PPoly r;
    for (auto &[m, c] : terms_) {
        Int coeff = c;
        ParamMono rest;
        for (auto &[v, e] : m) {
            if (v == name) {
                for (int t = 0; t < e; ++t)
                    coeff *= value;
            } else {
                rest.emplace_back(v, e);
            }
        }
        r.add_term(rest, coeff);
    }
    return r;
}

// ---- multivariate gcd: primitive PRS in the most significant variable ----

// Coefficients of p viewed as a univariate polynomial in x.
static std::vector<PPoly> coeffs_in(const PPoly &p, const std::string &x) {
    std::vector<PPoly> cs(p.degree_in(x) + 1);
    for (auto &[m, c] : p.terms()) {
        int e = 0;
        ParamMono rest;
        for (auto &[v, d] : m) {
            if (v == x)
                e = d;
            else
                rest.emplace_back(v, d);
        }
        cs[size_t(e)].add_term(rest, c);
    }
    return cs;
}

static PPoly from_coeffs(const std::vector<PPoly> &cs, const std::string &x) {
    PPoly r;
    for (size_t e = 0; e < cs.size(); ++e) {
        PPoly xe = PPoly::param(x, int(e));
        r = r + cs[e] * xe;
    }
    return r;
}

static int deg_of(const std::vector<PPoly> &cs) {
    for (int i = int(cs.size()) - 1; i >= 0; --i)
        if (!cs[size_t(i)].is_zero())
            return i;
    return -1;
}

// Pseudo-remainder of a by b in x (both as coefficient vectors).
static std::vector<PPoly> pseudo_rem(std::vector<PPoly> a, const std::vector<PPoly> &b) {
    int db = deg_of(b);
    const PPoly &lb = b[size_t(db)];
    int da = deg_of(a);
    while (da >= db) {
        PPoly la = a[size_t(da)];
        for (int i = 0; i <= da; ++i)
            a[size_t(i)] = a[size_t(i)] * lb;
        for (int i = 0; i <= db; ++i)
            a[size_t(da - db + i)] = a[size_t(da - db + i)] - la * b[size_t(i)];
        a[size_t(da)] = PPoly(); // cancels exactly
        da = deg_of(a);
    }
    a.resize(size_t(std::max(da, 0) + 1));
    return a;
}

static PPoly content_of(const std::vector<PPoly> &cs) {
    PPoly g;
    for (auto &c : cs)
        g = gcd(g, c);
    return g;
}

PPoly gcd(const PPoly &a, const PPoly &b) {
    auto sign_normalize = [](PPoly p) {
        if (!p.is_zero() && p.leading().second < 0)
            return -p;
        return p;
    };
    auto primitive = [&](PPoly p) {
        if (p.is_zero())
            return p;
        Int c = p.int_content();
        if (p.leading().second < 0)
            c = -c;
        return p.divided_by_int(c);
    };
    if (a.is_zero())
        return sign_normalize(b);
    if (b.is_zero())
        return sign_normalize(a);
    if (a.is_constant() || b.is_constant()) {
        Int g = boost::multiprecision::gcd(a.int_content(), b.int_content());
        return PPoly(g);
    }
    // Recurse on the most significant variable present.
    std::string x = std::min(a.variables().front(), b.variables().front());
    auto ca = coeffs_in(a, x), cb = coeffs_in(b, x);
    if (deg_of(ca) == 0 || deg_of(cb) == 0) {
        // x-free on one side after viewing: gcd of contents only
        return sign_normalize(gcd(content_of(ca), content_of(cb)));
    }
    PPoly conta = content_of(ca), contb = content_of(cb);
    PPoly contg = gcd(conta, contb);
    auto divall = [](std::vector<PPoly> &cs, const PPoly &d) {
        for (auto &c : cs)
            if (!c.is_zero())
                c = c.divexact(d);
    };
    divall(ca, conta);
    divall(cb, contb);
    auto A = ca, B = cb;
    if (deg_of(A) < deg_of(B))
        std::swap(A, B);
    while (true) {
        auto R = pseudo_rem(A, B);
        if (deg_of(R) < 0)
            break;
        if (deg_of(R) == 0) {
            B = {PPoly(Int(1))};
            break;
        }
        PPoly cr = content_of(R);
        divall(R, cr);
        A = B;
        B = R;
    }
    PPoly prim = primitive(from_coeffs(B, x));
    return sign_normalize(contg * prim);
}

// ---- Coeff -------------------------------------------------------------

Coeff::Coeff(long n, long d) : num_(Int(n)), den_(Int(d)) { reduce(); }

Coeff::Coeff(PPoly n, PPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

Coeff Coeff::param(const std::string &name) { return Coeff(PPoly::param(name)); }

Coeff Coeff::rational(const Int &n, const Int &d) { return Coeff(PPoly(n), PPoly(d)); }

void Coeff::reduce() {
    if (den_.is_zero())
        throw std::invalid_argument("Coeff: zero denominator");
    if (num_.is_zero()) {
        den_ = PPoly(Int(1));
        return;
    }
    PPoly g = gcd(num_, den_);
    if (!(g.is_constant() && g.constant() == 1)) {
        num_ = num_.divexact(g);
        den_ = den_.divexact(g);
    }
    Int ic = boost::multiprecision::gcd(num_.int_content(), den_.int_content());
    if (den_.leading().second < 0)
        ic = -ic;
    if (ic != 1) {
        num_ = num_.divided_by_int(ic);
        den_ = den_.divided_by_int(ic);
    }
}

bool Coeff::is_one() const {
    return num_.is_constant() && num_.constant() == 1 && den_.is_constant() &&
           den_.constant() == 1;
}

Coeff Coeff::operator-() const {
    Coeff r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Coeff Coeff::operator+(const Coeff &o) const {
    return Coeff(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Coeff Coeff::operator-(const Coeff &o) const {
    return Coeff(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Coeff Coeff::operator*(const Coeff &o) const {
    return Coeff(num_ * o.num_, den_ * o.den_);
}

Coeff Coeff::operator/(const Coeff &o) const {
    if (o.is_zero())
        throw std::invalid_argument("Coeff: division by zero");
    return Coeff(num_ * o.den_, den_ * o.num_);
}

Coeff Coeff::inverse() const { return Coeff(1) / *this; }

Coeff Coeff::substituted(const std::string &name, const Int &value) const {
    return Coeff(num_.substituted(name, value), den_.substituted(name, value));
}

static std::string mono_str(const ParamMono &m) {
    std::ostringstream os;
    bool first = true;
    for (auto &[v, e] : m) {
        if (!first)
            os << "*";
        first = false;
        os << v;
        if (e != 1)
            os << "^" << e;
    }
    return os.str();
}

std::string PPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // Print from the leading term down.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Int &c = it->second;
        if (first) {
            if (c < 0)
                os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int ac = boost::multiprecision::abs(c);
        if (it->first.empty())
            os << ac;
        else if (ac == 1)
            os << mono_str(it->first);
        else
            os << ac << "*" << mono_str(it->first);
        first = false;
    }
    return os.str();
}

std::string Coeff::str() const {
    if (den_.is_constant() && den_.constant() == 1) {
        if (num_.is_constant() || num_.terms().size() == 1)
            return num_.str();
        return "(" + num_.str() + ")";
    }
    std::string n = num_.str(), d = den_.str();
    if (!(num_.is_constant() || num_.terms().size() == 1))
        n = "(" + n + ")";
    if (!(den_.is_constant() || den_.terms().size() == 1))
        d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace lbc
