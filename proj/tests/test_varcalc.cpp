#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbcalc/varcalc.hpp"

#include <random>

using namespace lbc;

namespace {

DiffPoly u(int ord = 0) { return DiffPoly::var(0, ord); }

DiffPoly random_poly(std::mt19937 &rng, int ell, int max_deg = 4, int max_ord = 3) {
    std::uniform_int_distribution<int> nterms(1, 5), deg(0, max_deg), gen(0, ell - 1),
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

} // namespace

TEST_CASE("variational derivative on KdV densities") {
    Coeff c = Coeff::param("c");
    CHECK(variational_derivative(u() * u() * Coeff(1, 2), 1) == Characteristic{u()});
    DiffPoly h2 = (u() * u() * u() + u() * u(2) * c) * Coeff(1, 2);
    CHECK(variational_derivative(h2, 1) ==
          Characteristic{u() * u() * Coeff(3, 2) + u(2) * c});
}

TEST_CASE("variational derivative kills total derivatives") {
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        DiffPoly g = random_poly(rng, 2);
        Characteristic d = variational_derivative(total_derivative(g), 2);
        for (auto &comp : d)
            CHECK(comp.is_zero());
    }
}

TEST_CASE("Frechet derivative examples") {
    Coeff c = Coeff::param("c");
    CHECK(frechet_derivative({u()}, 1) == DiffOp::identity(1));
    DiffOp d = frechet_derivative({u() * u() * Coeff(3, 2) + u(2) * c}, 1);
    DiffOp::Entry expect{u() * Coeff(3), DiffPoly(), DiffPoly(c)};
    CHECK(d.at(0, 0) == expect);
    CHECK(is_closed({u() * u() * Coeff(3, 2) + u(2) * c}, 1));
    CHECK(frechet_derivative({u(1)}, 1).at(0, 0) == DiffOp::Entry{DiffPoly(), DiffPoly(1)});
    CHECK(!is_closed({u(1)}, 1));
}

TEST_CASE("closedness of the next KdV characteristic") {
    Coeff c = Coeff::param("c");
    DiffPoly xi3 = u() * u() * u() * Coeff(5, 2) + u() * u(2) * (c * Coeff(5)) +
                   u(1) * u(1) * (c * Coeff(5, 2)) + u(4) * (c * c);
    CHECK(is_closed({xi3}, 1));
}

TEST_CASE("homotopy integration") {
    Coeff c = Coeff::param("c");
    CHECK(homotopy_integrate({u()}, 1) == u() * u() * Coeff(1, 2));
    DiffPoly h2 = homotopy_integrate({u() * u() * Coeff(3, 2) + u(2) * c}, 1);
    CHECK(h2 == (u() * u() * u() + u() * u(2) * c) * Coeff(1, 2));
    CHECK(homotopy_integrate({DiffPoly(1)}, 1) == u());
    CHECK_THROWS(homotopy_integrate({u(1)}, 1)); // not closed
}

TEST_CASE("is_total_derivative finds exact witnesses") {
    Coeff c = Coeff::param("c");
    auto g1 = is_total_derivative(u() * u(1));
    REQUIRE(g1.has_value());
    CHECK(*g1 == u() * u() * Coeff(1, 2));
    auto g2 = is_total_derivative(u() * u(1) * Coeff(3) + u(3) * c);
    REQUIRE(g2.has_value());
    CHECK(*g2 == u() * u() * Coeff(3, 2) + u(2) * c);
    CHECK(!is_total_derivative(u() * u()).has_value());
}

TEST_CASE("witness is exact and constants obstruct") {
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        DiffPoly g = random_poly(rng, 2);
        DiffPoly f = total_derivative(g);
        auto w = is_total_derivative(f);
        REQUIRE(w.has_value());
        CHECK(total_derivative(*w) == f);
        CHECK(!is_total_derivative(f + DiffPoly(1)).has_value());
    }
}

TEST_CASE("reduction gives canonical representatives") {
    // u u'' and -u'^2 are the same functional; u'^2 reduces to itself.
    DiffPoly a = reduce_mod_total_derivatives(u() * u(2));
    DiffPoly b = reduce_mod_total_derivatives(-(u(1) * u(1)));
    CHECK(a == b);
    CHECK(reduce_mod_total_derivatives(u(1) * u(1)) == u(1) * u(1));
    CHECK(FunctionalClass(u() * u(2)) == FunctionalClass(-(u(1) * u(1))));
}

TEST_CASE("homotopy inverts the variational derivative mod constants and Im d") {
    std::mt19937 rng(29);
    for (int t = 0; t < 40; ++t) {
        DiffPoly h = random_poly(rng, 2);
        Characteristic xi = variational_derivative(h, 2);
        CHECK(is_closed(xi, 2));
        DiffPoly h2 = homotopy_integrate(xi, 2);
        CHECK(variational_derivative(h2, 2) == xi);
        DiffPoly diff = h - h2;
        diff.add_term(Mono{}, -diff.constant_term());
        CHECK(is_total_derivative(diff).has_value());
    }
}

TEST_CASE("evolutionary fields") {
    std::mt19937 rng(31);
    for (int t = 0; t < 20; ++t) {
        DiffPoly f = random_poly(rng, 1);
        CHECK(evol_apply({u(1)}, f) == total_derivative(f)); // X_{u'} = d
    }
    CHECK(evol_apply({u(2)}, u()) == u(2));
    // X_{f u'}(g u') for f = u, g = u^2: (fg)' u'^2 + f g u''.
    DiffPoly lhs = evol_apply({u() * u(1)}, u() * u() * u(1));
    DiffPoly expect = u() * u() * Coeff(3) * (u(1) * u(1)) + u() * u() * u() * u(2);
    CHECK(lhs == expect);
}

TEST_CASE("evolutionary fields commute with the total derivative") {
    std::mt19937 rng(37);
    for (int t = 0; t < 25; ++t) {
        Characteristic p{random_poly(rng, 2), random_poly(rng, 2)};
        DiffPoly f = random_poly(rng, 2);
        CHECK(evol_apply(p, total_derivative(f)) == total_derivative(evol_apply(p, f)));
    }
}

TEST_CASE("evol bracket is the commutator") {
    std::mt19937 rng(41);
    for (int t = 0; t < 15; ++t) {
        Characteristic f{random_poly(rng, 2, 2, 2), random_poly(rng, 2, 2, 2)};
        Characteristic g{random_poly(rng, 2, 2, 2), random_poly(rng, 2, 2, 2)};
        DiffPoly h = random_poly(rng, 2, 2, 2);
        DiffPoly comm = evol_apply(f, evol_apply(g, h)) - evol_apply(g, evol_apply(f, h));
        CHECK(comm == evol_apply(evol_bracket(f, g), h));
    }
}

TEST_CASE("evol bracket vanishing families") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            CHECK(evol_bracket({u(m)}, {u(n)})[0].is_zero()); // linear equations
    Characteristic f{u() * u(1)};
    CHECK(evol_bracket(f, f)[0].is_zero());
    CHECK(evol_bracket({u() * u(1)}, {u() * u() * u(1)})[0].is_zero()); // dispersionless
}

TEST_CASE("integration by parts pairing") {
    std::mt19937 rng(43);
    for (int t = 0; t < 15; ++t) {
        DiffPoly f = random_poly(rng, 1, 2, 2), g = random_poly(rng, 1, 2, 2);
        DiffOp::Entry e(4);
        for (int k = 0; k < 4; ++k)
            e[size_t(k)] = random_poly(rng, 1, 2, 1);
        DiffOp a = DiffOp::scalar(e);
        DiffPoly lhs = diffop_apply(a, {f})[0] * g;
        DiffPoly rhs = f * diffop_apply(diffop_adjoint(a), {g})[0];
        CHECK(is_total_derivative(lhs - rhs).has_value());
    }
}
