#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbcalc/diffalg.hpp"

#include <random>

using namespace lbc;

namespace {

const std::vector<std::string> names{"u"};
const std::vector<std::string> names2{"u", "v"};

DiffPoly u(int ord = 0) { return DiffPoly::var(0, ord); }

// Deterministic random polynomials in ell generators.
DiffPoly random_poly(std::mt19937 &rng, int ell, int max_deg = 3, int max_ord = 2) {
    std::uniform_int_distribution<int> nterms(1, 4), deg(0, max_deg), gen(0, ell - 1),
        ord(0, max_ord), coef(-3, 3);
    DiffPoly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Mono m;
        int d = deg(rng);
        for (int j = 0; j < d; ++j)
            m = mono_mul(m, Mono{{DerivVar{gen(rng), ord(rng)}, 1}});
        int c = coef(rng);
        if (c != 0)
            p.add_term(m, Coeff(c));
    }
    return p;
}

// Magri-Virasoro operator u' + 2u d + c d^3 (alpha = 0).
DiffOp mv_operator() {
    Coeff c = Coeff::param("c");
    DiffOp::Entry e;
    e.resize(4);
    e[0] = u(1);
    e[1] = u() * Coeff(2);
    e[3] = DiffPoly(c);
    return DiffOp::scalar(e);
}

} // namespace

TEST_CASE("ring operations canonicalize") {
    CHECK(u() * u() == [] {
        DiffPoly p;
        p.add_term(Mono{{DerivVar{0, 0}, 2}}, Coeff(1));
        return p;
    }());
    CHECK((u() + u(1)) + (-u()) == u(1));
    // h2 = 1/2 (u^3 + c u u'') round-trips through printing unchanged in form.
    Coeff c = Coeff::param("c");
    DiffPoly h2 = (u() * u() * u() + u() * u(2) * c) * Coeff(1, 2);
    CHECK(h2.str(names) == "1/2*u^3 + c/2*u*u''");
}

TEST_CASE("total derivative is a derivation") {
    CHECK(total_derivative(u()) == u(1));
    CHECK(total_derivative(u() * u() * Coeff(1, 2)) == u() * u(1));
    Coeff c = Coeff::param("c");
    // d((3/2)u^2 + c u'') = 3uu' + cu'''
    DiffPoly f = u() * u() * Coeff(3, 2) + u(2) * c;
    CHECK(total_derivative(f) == u() * u(1) * Coeff(3) + u(3) * c);
}

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(u() * u(2), 0, 2) == u());
    CHECK(partial_derivative(u() * u() * u(), 0, 1).is_zero());
    Coeff c = Coeff::param("c");
    CHECK(partial_derivative(u() * u(2) * c, 0, 0) == u(2) * c);
}

TEST_CASE("commutator of partials with the total derivative") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        DiffPoly f = random_poly(rng, 2);
        for (int i = 0; i < 2; ++i)
            for (int n = 0; n <= 3; ++n) {
                DiffPoly lhs = partial_derivative(total_derivative(f), i, n) -
                               total_derivative(partial_derivative(f, i, n));
                DiffPoly rhs = n == 0 ? DiffPoly() : partial_derivative(f, i, n - 1);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("partials commute") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        DiffPoly f = random_poly(rng, 2);
        DiffPoly a = partial_derivative(partial_derivative(f, 0, 1), 1, 0);
        DiffPoly b = partial_derivative(partial_derivative(f, 1, 0), 0, 1);
        CHECK(a == b);
    }
}

TEST_CASE("composition normalizes d o f = f d + f'") {
    DiffOp d = DiffOp::scalar({DiffPoly(), DiffPoly(1)});
    DiffOp mu = DiffOp::scalar({u()});
    DiffOp comp = diffop_compose(d, mu);
    DiffOp::Entry expect{u(1), u()};
    CHECK(comp.at(0, 0) == expect);
    DiffOp d2 = diffop_compose(d, d);
    CHECK(d2.at(0, 0) == DiffOp::Entry{DiffPoly(), DiffPoly(), DiffPoly(1)});
}

TEST_CASE("MV operator applied to characteristics") {
    Coeff c = Coeff::param("c");
    DiffOp h = mv_operator();
    // H(1) = u'
    CHECK(diffop_apply(h, {DiffPoly(1)}) == std::vector<DiffPoly>{u(1)});
    // H(u) = 3uu' + cu'''
    CHECK(diffop_apply(h, {u()}) ==
          std::vector<DiffPoly>{u() * u(1) * Coeff(3) + u(3) * c});
    // H((3/2)u^2 + cu'') = (15/2)u^2u' + 10c u'u'' + 5c u u''' + c^2 u^(5)
    DiffPoly xi2 = u() * u() * Coeff(3, 2) + u(2) * c;
    DiffPoly expect = u() * u() * u(1) * Coeff(15, 2) + u(1) * u(2) * (c * Coeff(10)) +
                      u() * u(3) * (c * Coeff(5)) + u(5) * (c * c);
    CHECK(diffop_apply(h, {xi2}) == std::vector<DiffPoly>{expect});
}

TEST_CASE("composition against application") {
    // (u' + 2u d + c d^3) o 1 applied to u gives 3uu' + cu'''.
    Coeff c = Coeff::param("c");
    DiffOp h = mv_operator();
    DiffOp one = DiffOp::identity(1);
    CHECK(diffop_apply(diffop_compose(h, one), {u()}) ==
          std::vector<DiffPoly>{u() * u(1) * Coeff(3) + u(3) * c});
}

TEST_CASE("adjoint basics") {
    DiffOp d = DiffOp::scalar({DiffPoly(), DiffPoly(1)});
    CHECK(diffop_adjoint(d).at(0, 0) == DiffOp::Entry{DiffPoly(), -DiffPoly(1)});
    DiffOp d2 = diffop_compose(d, d);
    CHECK(diffop_adjoint(d2) == d2);
    // MV is skewadjoint.
    DiffOp h = mv_operator();
    CHECK(diffop_adjoint(h) == (DiffOp(1, 1) - h));
}

TEST_CASE("adjoint is an anti-involution on random operators") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        DiffOp a(1, 1), b(1, 1);
        DiffOp::Entry ea(4), eb(4);
        for (int k = 0; k < 4; ++k) {
            ea[size_t(k)] = random_poly(rng, 1, 2, 2);
            eb[size_t(k)] = random_poly(rng, 1, 2, 2);
        }
        a.set(0, 0, ea);
        b.set(0, 0, eb);
        CHECK(diffop_adjoint(diffop_adjoint(a)) == a);
        CHECK(diffop_adjoint(diffop_compose(a, b)) ==
              diffop_compose(diffop_adjoint(b), diffop_adjoint(a)));
    }
}

TEST_CASE("lambda polynomial arithmetic and shifts") {
    LambdaPoly l = LambdaPoly::lambda();
    LambdaPoly p = l * u() + LambdaPoly(u(1));
    // (l+d)^2 u = l^2 u + 2l u' + u''
    LambdaPoly sh = lambda_shift_apply(2, u());
    CHECK(sh.coeff(2) == u());
    CHECK(sh.coeff(1) == u(1) * Coeff(2));
    CHECK(sh.coeff(0) == u(2));
    // (-l-d)^1 u = -l u - u'
    LambdaPoly sh2 = lambda_shift_apply(1, u(), -1);
    CHECK(sh2.coeff(1) == -u());
    CHECK(sh2.coeff(0) == -u(1));
    CHECK(symbol_of_entry(entry_from_symbol(p)) == p);
}

TEST_CASE("substitution of a generator by a value") {
    // (u v')|_{v -> u^2}: v' -> 2uu'
    DiffPoly f = DiffPoly::var(0) * DiffPoly::var(1, 1);
    DiffPoly g = f.substituted_gen(1, u() * u());
    CHECK(g == u() * u() * u(1) * Coeff(2));
}
