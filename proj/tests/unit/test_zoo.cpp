#include "doctest.h"

#include "courant/dirac.hpp"
#include "courant/lie.hpp"
#include "courant/linfinity.hpp"
#include "courant/poisson.hpp"
#include "courant/sections.hpp"
#include "courant/standard.hpp"
#include "../support/fixtures.hpp"

using namespace courant;
using namespace courant::fixtures;

namespace {

Matrix split_metric(size_t n) {
    Matrix g(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = 1;
    return g;
}

}  // namespace

TEST_CASE("so(3) verifies by both routes") {
    auto s = quadratic_lie_algebra(so3_lie(), Matrix::identity(3));
    auto rep = verify_courant(s);
    CHECK(rep.valid());
    CHECK(rep.agree);
    CHECK(rep.first_failure().empty());
}

TEST_CASE("section calculus agrees with the derived operations") {
    auto s = tangent_double({"x", "y"});
    s.set_C_antisym(0, 2, 3, parse_element(s.base, "x*y"));
    SectionCalculus calc(s);
    DerivedStructure ds(s);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        Section a = s.zero_section(), b = s.zero_section();
        for (size_t k = 0; k < s.rank; ++k) {
            a[k] = random_function(rng, s.base, 2);
            b[k] = random_function(rng, s.base, 2);
        }
        Element f = random_function(rng, s.base, 3);
        CHECK(calc.bracket(a, b) == ds.bracket(a, b));
        CHECK(calc.anchor(a, f) == ds.anchor(a, f));
        CHECK(calc.pairing(a, b) == ds.pairing(a, b));
        CHECK(calc.D(f) == ds.D(f));
    }
}

TEST_CASE("broken presentations fail both routes with a witness") {
    // C not totally antisymmetric
    auto s = CourantPresentation::make(Field::Q, {}, 3, Matrix::identity(3));
    s.C[0][1][2] = s.constant(1);
    auto rep = verify_courant(s, quick());
    CHECK(!rep.hamiltonian_verdict);
    CHECK(!rep.axiom_verdict);
    CHECK(rep.agree);
    CHECK(!rep.first_failure().empty());

    // antisymmetric but Jacobi fails: two triples sharing one index
    auto t = CourantPresentation::make(Field::Q, {}, 5, Matrix::identity(5));
    t.set_C_antisym(0, 1, 2, t.constant(1));
    t.set_C_antisym(2, 3, 4, t.constant(1));
    auto r2 = verify_courant(t, quick());
    CHECK(!r2.self_bracket_zero);
    CHECK(!r2.axiom_verdict);
    CHECK(r2.agree);
    bool jac_failed = false;
    for (const auto& a : r2.axioms)
        if (a.name == "jacobi" && !a.ok) jac_failed = true;
    CHECK(jac_failed);
}

TEST_CASE("anchor without compatible structure fails") {
    // a null direction carrying the anchor is fine, a non-null one is not
    auto ok = tangent_double({"x"});
    CHECK(verify_courant(ok, quick()).valid());
    auto bad = CourantPresentation::make(Field::Q, {"x"}, 2, Matrix::identity(2));
    bad.anchor[0][0] = bad.constant(1);
    auto rep = verify_courant(bad, quick());
    CHECK(!rep.valid());
    CHECK(rep.agree);
}

TEST_CASE("sl2 bialgebra and its double") {
    auto bi = sl2_bialgebra();
    CHECK(bi.g.is_lie());
    CHECK(bi.dual.is_lie());
    CHECK(bi.cocycle());
    auto d = drinfeld_double(bi);
    // the Manin triple structure: C is totally antisymmetric
    for (size_t a = 0; a < 6; ++a)
        for (size_t b = 0; b < 6; ++b)
            for (size_t c = 0; c < 6; ++c) {
                CHECK(d.C[a][b][c] == -d.C[b][a][c]);
                CHECK(d.C[a][b][c] == -d.C[a][c][b]);
            }
    auto rep = verify_courant(d, quick());
    CHECK(rep.valid());
    auto cx = standard_complex(d, 2);
    CHECK(cx.dims() == std::vector<size_t>{1, 6, 15});

    // a Lie bracket on the dual that is not a cocycle
    auto broken = bi;
    broken.dual = LieAlgebra::make({"H*", "X+*", "X-*"});
    broken.dual.set(0, 1, {0, 1, 0});
    REQUIRE(broken.dual.is_lie());
    CHECK(!broken.cocycle());
    auto rb = verify_courant(drinfeld_double(broken), quick());
    CHECK(!rb.valid());
    CHECK(rb.agree);
}

TEST_CASE("alekseev double of so(3)") {
    auto s = alekseev_double(so3_lie(), Matrix::identity(3));
    CHECK(s.rank == 6);
    CHECK(verify_courant(s, quick()).valid());
    CHECK(cohomology(standard_complex(s, 6)).dims == std::vector<size_t>{1, 0, 0, 2, 0, 0, 1});
}

TEST_CASE("CE complex of so(3) and sl2") {
    CEAlgebra ce(so3_lie());
    CHECK(cohomology(ce.complex(3)).dims == std::vector<size_t>{1, 0, 0, 1});
    CEAlgebra ce2(sl2_lie());
    CHECK(cohomology(ce2.complex(3)).dims == std::vector<size_t>{1, 0, 0, 1});
    // d theta^3 = -theta^1 theta^2 on so(3)
    Element t12 = ce.form({0, 1}, 1);
    CHECK(ce.d(Element::gen(ce.theta, 2)) == -t12);
    CHECK(ce.eval(t12, {1, 0}) == Scalar(-1));
    CHECK(ce.eval(t12, {0, 0}) == Scalar(0));
}

TEST_CASE("twisted Dorfman bracket returns its twist through the canonical splitting") {
    auto a = so3_lie();
    CEAlgebra ce(a);
    Element h = ce.form({0, 1, 2}, 5);
    auto e = twisted_dorfman(a, h);
    CHECK(verify_courant(e, quick(1)).valid());
    Matrix sigma(6, 3);
    for (size_t i = 0; i < 3; ++i) sigma(i, i) = 1;
    auto sv = severa_form(e, a, sigma);
    CHECK(sv.isotropic);
    CHECK(sv.exact);
    CHECK(sv.antisymmetric);
    CHECK(sv.closed);
    CHECK(sv.form == h);

    // a different isotropic splitting changes C by d_A B and keeps the class
    Element b = ce.form({0, 1}, 2) + ce.form({1, 2}, -1);
    Matrix sb = shifted_splitting(sigma, ce, b);
    auto sv2 = severa_form(e, a, sb);
    CHECK(sv2.isotropic);
    CHECK(sv2.form == splitting_change(ce, sv.form, b));
    CHECK(severa_class(ce, sv2.form) == severa_class(ce, sv.form));
    CHECK(!is_zero_vector(severa_class(ce, h)));

    // a degenerate splitting is flagged
    Matrix half(6, 3);
    half(0, 0) = 1;
    auto sv3 = severa_form(e, a, half);
    CHECK(!sv3.exact);
    CHECK(!sv3.caveat.empty());
}

TEST_CASE("twisted Dorfman rejects a non-closed twist") {
    // [f4, f_i] = f_i for i < 4: e^{123} is not closed
    auto a = LieAlgebra::make({"f1", "f2", "f3", "f4"});
    for (size_t i = 0; i < 3; ++i) {
        Vec v(4);
        v[i] = 1;
        a.set(3, i, v);
    }
    REQUIRE(a.is_lie());
    CEAlgebra ce(a);
    CHECK_THROWS(twisted_dorfman(a, ce.form({0, 1, 2}, 1)));
    CHECK_NOTHROW(twisted_dorfman(a, Element(ce.theta)));
}

TEST_CASE("random twisted Dorfman brackets of abelian algebras") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-2, 2);
    auto a = abelian_lie(4);
    CEAlgebra ce(a);
    for (int it = 0; it < 4; ++it) {
        Element h(ce.theta);
        for (const auto& s : subsets(4, 3)) h += ce.form(s, c(rng));
        auto e = twisted_dorfman(a, h);
        CHECK(e.metric == split_metric(4));
        CHECK(verify_courant(e, quick(1)).valid());
    }
}

TEST_CASE("standard build: trivial F with so(3) gives the direct sum") {
    auto d = StandardData::make(Field::Q, {}, 1, 3);
    d.set_g_bracket(0, 1, {d.zero(), d.zero(), d.poly("1")});
    d.set_g_bracket(1, 2, {d.poly("1"), d.zero(), d.zero()});
    d.set_g_bracket(2, 0, {d.zero(), d.poly("1"), d.zero()});
    auto b = standard_regular_build(d);
    CHECK(b.ok());
    CHECK(verify_courant(b.presentation, quick()).valid());
    // E = F* (+) so(3) (+) F: only the so(3) block of the table is nonzero
    auto so3 = quadratic_lie_algebra(so3_lie(), Matrix::identity(3));
    for (size_t a = 0; a < 5; ++a)
        for (size_t c = 0; c < 5; ++c)
            for (size_t e = 0; e < 5; ++e) {
                bool inner = a >= 1 && a <= 3 && c >= 1 && c <= 3 && e >= 1 && e <= 3;
                Element expect = inner ? so3.C[a - 1][c - 1][e - 1] : Element(b.presentation.base);
                CHECK(b.presentation.C[a][c][e].str() == expect.str());
            }
}

TEST_CASE("standard build: F = so(3) with the Cartan form matches the twisted Dorfman bracket") {
    auto d = StandardData::make(Field::Q, {}, 3, 0);
    auto one = d.poly("1"), z = d.zero();
    d.set_f_bracket(0, 1, {z, z, one});
    d.set_f_bracket(1, 2, {one, z, z});
    d.set_f_bracket(2, 0, {z, one, z});
    d.set_H(0, 1, 2, one);
    auto b = standard_regular_build(d);
    CHECK(b.ok());
    CHECK(verify_courant(b.presentation, quick()).valid());

    auto a = so3_lie();
    CEAlgebra ce(a);
    auto t = twisted_dorfman(a, ce.form({0, 1, 2}, 1));
    // twisted Dorfman orders A then A*; the standard build orders F* then F
    SectionCalculus calc(t);
    auto perm = [](size_t i) { return i < 3 ? i + 3 : i - 3; };
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j)
            for (size_t l = 0; l < 6; ++l)
                CHECK(b.table[perm(i)][perm(j)][perm(l)].constant_term() == calc.table(i, j)[l].constant_term());
}

TEST_CASE("standard build: dH fails when <R,R> is not d_F H") {
    auto d = StandardData::make(Field::Q, {}, 4, 1);
    d.set_R(0, 1, {d.poly("1")});
    d.set_R(2, 3, {d.poly("1")});
    CHECK(curvature_pairing(d, 0, 1, 2, 3) == d.poly("2"));
    auto b = standard_regular_build(d);
    CHECK(!b.ok());
    for (size_t c = 0; c < 4; ++c) CHECK(b.conditions[c].ok);
    CHECK(b.conditions[4].name == "dH");
    CHECK(!b.conditions[4].ok);
    CHECK(!verify_courant(b.presentation, quick(1)).valid());
}

TEST_CASE("standard build: a nonflat structure over R^4") {
    // F = T R^4, g a line, R = dx1 dx2 + dx3 dx4, H = 2 x1 dx2 dx3 dx4
    auto d = StandardData::make(Field::Q, {"x1", "x2", "x3", "x4"}, 4, 1);
    for (size_t i = 0; i < 4; ++i) d.anchor[i][i] = d.poly("1");
    d.set_R(0, 1, {d.poly("1")});
    d.set_R(2, 3, {d.poly("1")});
    d.set_H(1, 2, 3, d.poly("2*x1"));
    auto b = standard_regular_build(d);
    CHECK(b.ok());
    VerifyOptions o = quick(1);
    o.poly_degree = 1;
    CHECK(verify_courant(b.presentation, o).valid());
    d.set_H(1, 2, 3, d.poly("x1"));
    auto bad = standard_regular_build(d);
    CHECK(!bad.conditions[4].ok);
    CHECK(!verify_courant(bad.presentation, o).valid());
}

TEST_CASE("property: standard builds that pass the conditions are Courant") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 6; ++it) {
        // F abelian of rank 3 over a point, g = so(3), nabla_i = c_i ad_A
        auto d = StandardData::make(Field::Q, {}, 3, 3);
        auto one = d.poly("1"), z = d.zero();
        d.set_g_bracket(0, 1, {z, z, one});
        d.set_g_bracket(1, 2, {one, z, z});
        d.set_g_bracket(2, 0, {z, one, z});
        Vec A{Scalar(c(rng)), Scalar(c(rng)), Scalar(c(rng))};
        auto so3 = so3_lie();
        for (size_t i = 0; i < 3; ++i) {
            int ci = c(rng);
            for (size_t a = 0; a < 3; ++a) {
                Vec col = so3.bracket(A, so3.basis(a));
                for (size_t b = 0; b < 3; ++b) d.nabla[i][a][b] = Element::constant(d.gens(), col[b] * Scalar(ci));
            }
        }
        d.set_H(0, 1, 2, Element::constant(d.gens(), c(rng)));
        bool broken = it % 2 == 1;
        if (broken) d.nabla[0][0][0] = d.poly("1");  // not skew for kappa
        auto b = standard_regular_build(d);
        CHECK(b.ok() == !broken);
        CHECK(verify_courant(b.presentation, quick(1)).valid() == !broken);
    }
}

namespace {

Matrix columns(size_t rows, const std::vector<size_t>& which) {
    Matrix L(rows, which.size());
    for (size_t j = 0; j < which.size(); ++j) L(which[j], j) = 1;
    return L;
}

// graph of a skew map g* -> g: e^i + sum_j B_ij e_j
Matrix graph(const Matrix& B) {
    const size_t n = B.rows();
    Matrix L(2 * n, n);
    for (size_t i = 0; i < n; ++i) {
        L(n + i, i) = 1;
        for (size_t j = 0; j < n; ++j) L(j, i) = B(i, j);
    }
    return L;
}

}  // namespace

TEST_CASE("Dirac structures in the sl2 double") {
    auto bi = sl2_bialgebra();
    auto d = drinfeld_double(bi);
    auto g = columns(6, {0, 1, 2});
    auto gs = columns(6, {3, 4, 5});
    CHECK(dirac_check(d, g).dirac());
    CHECK(dirac_check(d, gs).dirac());
    // the double restricts to the two given brackets
    auto lg = induced_lie_algebra(d, g);
    auto ld = induced_lie_algebra(d, gs);
    CHECK(lg.f == bi.g.f);
    CHECK(ld.f == bi.dual.f);

    auto small = columns(6, {0, 1});
    auto rs = dirac_check(d, small);
    CHECK(!rs.maximal);
    CHECK(!rs.dirac());
    auto mixed = columns(6, {0, 1, 3});  // e1 pairs with e^1
    CHECK(!dirac_check(d, mixed).isotropic);

    // graphs of skew maps are maximal isotropic; search for one that is not
    // closed.  Graphs of g -> g* would not do: d vanishes on Lambda^2 sl2*.
    bool found_non_dirac = false;
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 20; ++it) {
        Matrix B(3, 3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i + 1; j < 3; ++j) {
                B(i, j) = c(rng);
                B(j, i) = -B(i, j);
            }
        auto L = graph(B);
        auto r = dirac_check(d, L);
        CHECK(r.maximal);
        CHECK(r.isotropic);
        if (!r.involutive) found_non_dirac = true;
        else {
            auto lie = induced_lie_algebra(d, L);
            CHECK(lie.antisymmetric());
            CHECK(!lie.jacobi_failure());
        }
    }
    CHECK(found_non_dirac);
}

TEST_CASE("Dirac check over a base: the tangent bundle is Dirac") {
    auto s = tangent_double({"x", "y", "z"});
    CHECK(dirac_check(s, columns(6, {0, 1, 2})).dirac());
    CHECK(dirac_check(s, columns(6, {3, 4, 5})).dirac());
    // the twist H = y dx dy dz moves the bracket of vector fields off T
    s.set_C_antisym(0, 1, 2, parse_element(s.base, "y"));
    CHECK(verify_courant(s, quick(1)).valid());
    auto r = dirac_check(s, columns(6, {0, 1, 2}));
    CHECK(!r.involutive);
    CHECK(!r.witness.empty());
}

TEST_CASE("L-infinity identities over a point") {
    for (const auto& s : {quadratic_lie_algebra(abelian_lie(2), Matrix::identity(2)),
                          quadratic_lie_algebra(so3_lie(), Matrix::identity(3)),
                          drinfeld_double(sl2_bialgebra())}) {
        auto r = l_infinity_check(s);
        CHECK(r.ok());
        CHECK(r.identities.size() == 4);
        // over a point D = 0, so no identity sees l3
        auto flipped = LInfinityOptions{};
        flipped.l3_coeff = -flipped.l3_coeff;
        CHECK(l_infinity_check(s, flipped).ok());
    }
}

TEST_CASE("L-infinity identities over a base pin the coefficients") {
    auto s = tangent_double({"x", "y"});
    auto r = l_infinity_check(s);
    CHECK(r.ok());
    CHECK(kernel_of_D(s, 2).size() == 1);  // only constants

    auto flipped = LInfinityOptions{};
    flipped.l3_coeff = -flipped.l3_coeff;
    auto rf = l_infinity_check(s, flipped);
    CHECK(rf.holds(1));
    CHECK(rf.holds(2));
    CHECK(!rf.holds(3));
    CHECK(rf.holds(4));
    CHECK(!rf.identities[2].witness.empty());

    // the printed coefficients fail the n = 2 identity on (phi, f)
    auto printed = l_infinity_check(s, LInfinityOptions::as_printed());
    CHECK(!printed.holds(2));
}

TEST_CASE("kernel of D with a degenerate anchor") {
    // only d/dx is in the image of the anchor: y and y^2 are in ker D
    Matrix g(2, 2);
    g(0, 1) = g(1, 0) = 1;
    auto s = CourantPresentation::make(Field::Q, {"x", "y"}, 2, g);
    s.anchor[0][0] = s.constant(1);
    auto k = kernel_of_D(s, 2);
    CHECK(k.size() == 3);
    SectionCalculus calc(s);
    for (const auto& f : k) CHECK(is_zero(calc.D(f)));
    CHECK(l_infinity_check(s).ok());
}
