#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbcalc/liealg.hpp"

using namespace lbc;

TEST_CASE("sl2 standard presentation validates") {
    LieAlgebraData l = sl2_standard();
    CHECK(validate(l).ok());
}

TEST_CASE("antisymmetry violation is reported") {
    LieAlgebraData l = sl2_standard();
    l.sc[2][0][1] = Coeff(1); // [f,e] should be -h
    ValidationReport rep = validate(l);
    CHECK(!rep.ok());
    bool found = false;
    for (auto &issue : rep.issues)
        if (issue.identity == "antisymmetry")
            found = true;
    CHECK(found);
}

TEST_CASE("root presentation validates for any pairing") {
    CHECK(validate(sl2_root(Coeff(1))).ok());
    Coeff kappa = Coeff::param("kappa");
    CHECK(validate(sl2_root(-kappa)).ok());
}

TEST_CASE("dual bases of sl2 under the trace form") {
    LieAlgebraData l = sl2_standard();
    DualBases d = dual_bases(l);
    // duals of (e, h, f) are (f, h/2, e)
    CHECK(d.b[0] == LieVec{Coeff(0), Coeff(0), Coeff(1)});
    CHECK(d.b[1] == LieVec{Coeff(0), Coeff(1, 2), Coeff(0)});
    CHECK(d.b[2] == LieVec{Coeff(1), Coeff(0), Coeff(0)});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(l.pairing(d.b[size_t(i)], d.a[size_t(j)]) == Coeff(i == j ? 1 : 0));
}

TEST_CASE("dual basis in the root presentation") {
    LieAlgebraData l = sl2_root(Coeff(1));
    DualBases d = dual_bases(l);
    CHECK(d.b[0] == LieVec{Coeff(0), Coeff(1), Coeff(0)}); // dual of e_a is e_m
}

TEST_CASE("abelian one-dimensional algebra") {
    LieAlgebraData l;
    l.labels = {"a"};
    l.sc = {{LieVec{Coeff(0)}}};
    l.form = {{Coeff(1)}};
    CHECK(validate(l).ok());
    DualBases d = dual_bases(l);
    CHECK(d.b[0] == LieVec{Coeff(1)});
    CHECK_THROWS(casimir_adjoint_eigenvalue(l)); // zero Casimir
}

TEST_CASE("Casimir eigenvalue on the adjoint module") {
    // Trace form: sum ad(a^i) ad(b^i) = 4 id, so 2 h-vee = 4.
    LieAlgebraData l = sl2_standard();
    CHECK(casimir_adjoint_eigenvalue(l) == Coeff(4));
    // Scaling the form by 2 halves the eigenvalue.
    for (auto &row : l.form)
        for (auto &c : row)
            c = c * Coeff(2);
    CHECK(casimir_adjoint_eigenvalue(l) == Coeff(2));
}

TEST_CASE("Casimir eigenvalue is basis independent") {
    // Random-ish invertible change of basis on sl2 with the transported
    // structure constants and form.
    LieAlgebraData l = sl2_standard();
    CMatrix p{{Coeff(1), Coeff(2), Coeff(0)},
              {Coeff(0), Coeff(1), Coeff(1)},
              {Coeff(1), Coeff(0), Coeff(3)}};
    auto pinv = cmat_inverse(p);
    REQUIRE(pinv.has_value());
    int n = 3;
    auto newvec = [&](int i) {
        LieVec v(3, Coeff(0));
        for (int t = 0; t < n; ++t)
            v[size_t(t)] = p[size_t(t)][size_t(i)];
        return v;
    };
    LieAlgebraData m = l;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LieVec br = l.bracket(newvec(i), newvec(j));
            // coordinates of br in the new basis: P^-1 br
            LieVec coords(3, Coeff(0));
            for (int r = 0; r < n; ++r)
                for (int t = 0; t < n; ++t)
                    coords[size_t(r)] += (*pinv)[size_t(r)][size_t(t)] * br[size_t(t)];
            m.sc[size_t(i)][size_t(j)] = coords;
            m.form[size_t(i)][size_t(j)] = l.pairing(newvec(i), newvec(j));
        }
    CHECK(validate(m).ok());
    CHECK(casimir_adjoint_eigenvalue(m) == Coeff(4));
}

TEST_CASE("s-decomposition of sl2") {
    LieAlgebraData l = sl2_root(Coeff(1));
    LieVec s = l.basis_vec(2);
    SDecomposition d = s_decomposition(l, s);
    CHECK(d.centralizer.size() == 1);
    CHECK(d.complement.size() == 2);
    // inv(ad s) on e_{+-alpha} is +-e_{+-alpha}.
    LieVec ea = l.basis_vec(0), em = l.basis_vec(1);
    auto apply = [&](const CMatrix &m, const LieVec &v) {
        LieVec r(3, Coeff(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r[size_t(i)] += m[size_t(i)][size_t(j)] * v[size_t(j)];
        return r;
    };
    CHECK(apply(d.inv_on_complement, ea) == ea);
    CHECK(apply(d.inv_on_complement, em) == LieVec{Coeff(0), Coeff(-1), Coeff(0)});
    // ad s o inv = id on the complement.
    CHECK(apply(d.ad_s, apply(d.inv_on_complement, ea)) == ea);
    CHECK(apply(d.ad_s, apply(d.inv_on_complement, em)) == em);
}

TEST_CASE("s = 0 gives the whole algebra as centralizer") {
    LieAlgebraData l = sl2_root(Coeff(1));
    LieVec zero(3, Coeff(0));
    SDecomposition d = s_decomposition(l, zero);
    CHECK(d.centralizer.size() == 3);
    CHECK(d.complement.empty());
}

TEST_CASE("gl2 and sl3 validate") {
    CHECK(validate(gl_n(2)).ok());
    LieAlgebraData l = sl_n(3);
    CHECK(validate(l).ok());
    // Casimir for sl_n with the trace form: 2 h-vee = 2n.
    CHECK(casimir_adjoint_eigenvalue(l) == Coeff(6));
}
