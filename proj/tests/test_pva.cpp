#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbcalc/pva.hpp"

#include <random>

using namespace lbc;

namespace {

DiffPoly u(int ord = 0) { return DiffPoly::var(0, ord); }

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

PvaSpec mv() { return magri_virasoro(Coeff::param("c"), Coeff(0)); }

} // namespace

TEST_CASE("builder tables") {
    CHECK(gfz().entry(0, 0) == LambdaPoly::lambda());
    // MV: {u_l u} = (d + 2l)u + c l^3 + alpha l.
    PvaSpec s = magri_virasoro(Coeff::param("c"), Coeff::param("alpha"));
    LambdaPoly b = s.entry(0, 0);
    CHECK(b.coeff(0) == u(1));
    CHECK(b.coeff(1) == u() * Coeff(2) + DiffPoly(Coeff::param("alpha")));
    CHECK(b.coeff(3) == DiffPoly(Coeff::param("c")));
}

TEST_CASE("master bracket on GFZ") {
    PvaSpec s = gfz();
    CHECK(master_bracket(u(), u(), s) == LambdaPoly::lambda());
    // Right Leibniz oracle: {u^2_l u} = 2 {u_{l+d} u} -> u = 2(l u + u').
    LambdaPoly lhs = master_bracket(u() * u(), u(), s);
    LambdaPoly expect;
    expect.add(1, u() * Coeff(2));
    expect.add(0, u(1) * Coeff(2));
    CHECK(lhs == expect);
}

TEST_CASE("master bracket left Leibniz on MV") {
    // {u_l u^2} = 2u {u_l u} with alpha = 0: 4l u^2 + 2uu' + 2c l^3 u.
    PvaSpec s = mv();
    Coeff c = Coeff::param("c");
    LambdaPoly lhs = master_bracket(u(), u() * u(), s);
    LambdaPoly expect;
    expect.add(1, u() * u() * Coeff(4));
    expect.add(0, u() * u(1) * Coeff(2));
    expect.add(3, u() * (c * Coeff(2)));
    CHECK(lhs == expect);
}

TEST_CASE("sesquilinearity of the master formula") {
    std::mt19937 rng(3);
    PvaSpec s = mv();
    for (int t = 0; t < 20; ++t) {
        DiffPoly f = random_poly(rng, 1), g = random_poly(rng, 1);
        // {(df)_l g} = -l {f_l g}
        LambdaPoly lhs = master_bracket(total_derivative(f), g, s);
        LambdaPoly rhs = (-LambdaPoly::lambda()) * master_bracket(f, g, s);
        CHECK(lhs == rhs);
        // {f_l dg} = (l+d) {f_l g}
        LambdaPoly lhs2 = master_bracket(f, total_derivative(g), s);
        LambdaPoly rhs2 = lambda_shift_apply(1, master_bracket(f, g, s));
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("Leibniz rules of the master formula") {
    std::mt19937 rng(9);
    PvaSpec s = mv();
    for (int t = 0; t < 12; ++t) {
        DiffPoly f = random_poly(rng, 1, 2, 2), g = random_poly(rng, 1, 2, 2),
                 h = random_poly(rng, 1, 2, 2);
        // Left: {f_l gh} = {f_l g} h + g {f_l h}.
        LambdaPoly lhs = master_bracket(f, g * h, s);
        LambdaPoly rhs = master_bracket(f, g, s) * h + master_bracket(f, h, s) * g;
        CHECK(lhs == rhs);
        // Right: {fg_l h} = {f_{l+d} h}-> g + {g_{l+d} h}-> f.
        LambdaPoly lhs2 = master_bracket(f * g, h, s);
        LambdaPoly rhs2 = arrow_apply(master_bracket(f, h, s), LambdaPoly(g)) +
                          arrow_apply(master_bracket(g, h, s), LambdaPoly(f));
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("skewsymmetry checks") {
    CHECK(check_skewsymmetry(gfz()).ok());
    CHECK(check_skewsymmetry(magri_virasoro(Coeff::param("c"), Coeff::param("alpha"))).ok());
    // d^2 is not skewadjoint: {u_l u} = l^2 rejected with a per-pair residual.
    PvaSpec bad;
    bad.ell = 1;
    bad.names = {"u"};
    bad.table = {{LambdaPoly::lambda(2)}};
    PvaReport rep = check_skewsymmetry(bad);
    REQUIRE(rep.issues.size() == 1);
    CHECK(rep.issues[0].kind == "skewsymmetry");
}

TEST_CASE("skewsymmetry pass iff H skewadjoint") {
    for (const PvaSpec &s : {gfz(), mv(), magri_virasoro(Coeff(0), Coeff(1))}) {
        DiffOp h = poisson_structure(s);
        bool skewadj = diffop_adjoint(h) == (DiffOp(s.ell, s.ell) - h);
        CHECK(check_skewsymmetry(s).ok() == skewadj);
    }
}

TEST_CASE("jacobi checks") {
    CHECK(check_jacobi(gfz()).ok());
    CHECK(check_jacobi(magri_virasoro(Coeff::param("c"), Coeff::param("alpha"))).ok());
}

TEST_CASE("affine sl2 passes all axioms") {
    LieAlgebraData l = sl2_root(Coeff(1));
    CHECK(validate(l).ok());
    PvaSpec s = affine(l, Coeff::param("k"), l.basis_vec(2));
    CHECK(check_skewsymmetry(s).ok());
    CHECK(check_jacobi(s).ok()); // all 27 triples
}

TEST_CASE("compatibility") {
    CHECK(check_compatibility(mv(), gfz()).ok());
    CHECK(check_compatibility(mv(), mv()).ok()); // (H, H) trivially compatible
    LieAlgebraData l = sl2_root(Coeff(1));
    PvaSpec h = affine_h(l, Coeff::param("k"));
    PvaSpec k = affine_k(l, l.basis_vec(2));
    CHECK(check_skewsymmetry(h).ok());
    CHECK(check_jacobi(h).ok());
    CHECK(check_skewsymmetry(k).ok());
    CHECK(check_jacobi(k).ok());
    CHECK(check_compatibility(h, k).ok());
}

TEST_CASE("functional brackets") {
    PvaSpec s = mv();
    std::mt19937 rng(13);
    for (int t = 0; t < 10; ++t) {
        DiffPoly f = random_poly(rng, 1, 2, 2);
        CHECK(functional_bracket(f, f, s).is_zero()); // skewsymmetry
    }
    // {int h1, int h2} = 0 for the first two KdV densities.
    Coeff c = Coeff::param("c");
    DiffPoly h1 = u() * u() * Coeff(1, 2);
    DiffPoly h2 = (u() * u() * u() + u() * u(2) * c) * Coeff(1, 2);
    CHECK(functional_bracket(h1, h2, s).is_zero());
    CHECK(functional_bracket(h1, h2, gfz()).is_zero());
    // u is a Casimir density for GFZ.
    for (int t = 0; t < 10; ++t) {
        DiffPoly g = random_poly(rng, 1, 2, 2);
        CHECK(functional_bracket(u(), g, gfz()).is_zero());
    }
}

TEST_CASE("basic lemma consistency") {
    // lambda^0 coefficient mod Im d equals int dg/du . H df/du.
    std::mt19937 rng(19);
    for (const PvaSpec &s : {gfz(), mv()}) {
        DiffOp h = poisson_structure(s);
        for (int t = 0; t < 10; ++t) {
            DiffPoly f = random_poly(rng, 1, 2, 2), g = random_poly(rng, 1, 2, 2);
            FunctionalClass lhs = functional_bracket(f, g, s);
            Characteristic df = variational_derivative(f, 1), dg = variational_derivative(g, 1);
            FunctionalClass rhs(dg[0] * diffop_apply(h, df)[0]);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("zero bracket table accepts everything and commutes") {
    PvaSpec zero;
    zero.ell = 2;
    zero.names = {"u", "v"};
    zero.table.assign(2, std::vector<LambdaPoly>(2));
    CHECK(check_skewsymmetry(zero).ok());
    CHECK(check_jacobi(zero).ok());
    std::mt19937 rng(23);
    for (int t = 0; t < 8; ++t)
        CHECK(functional_bracket(random_poly(rng, 2), random_poly(rng, 2), zero).is_zero());
}
