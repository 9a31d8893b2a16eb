#include "doctest.h"

#include "../support/gen.hpp"
#include "courant/poisson.hpp"

using namespace courant;

namespace {

CourantPresentation so3() {
    auto s = CourantPresentation::make(Field::Q, {}, 3, Matrix::identity(3));
    s.set_C_antisym(0, 1, 2, s.constant(1));
    return s;
}

Scalar sgn(long k) { return k % 2 ? Scalar(-1) : Scalar(1); }

}  // namespace

TEST_CASE("realization brackets and the sign of {x,p}") {
    auto base = make_gens({{"x", 0}});
    Matrix g(2, 2);
    g(0, 1) = g(1, 0) = 1;
    RealizationChart ch(base, 2, g);
    const auto& pb = ch.poisson();
    CHECK(pb.bracket(ch.p(0), ch.x(0)) == Element::constant(ch.gens(), 1));
    CHECK(pb.bracket(ch.x(0), ch.p(0)) == Element::constant(ch.gens(), -1));
    CHECK(pb.bracket(ch.xi(0), ch.xi(1)) == Element::constant(ch.gens(), 1));
    CHECK(pb.bracket(ch.xi(0), ch.xi(0)).is_zero());
    CHECK(pb.bracket(ch.x(0), ch.xi(0)).is_zero());
}

TEST_CASE("property: bracket degree, biderivation and jacobi") {
    auto base = make_gens({{"x", 0}, {"y", 0}});
    Matrix g(3, 3);
    g(0, 0) = 1;
    g(1, 2) = g(2, 1) = 2;
    RealizationChart ch(base, 3, g);
    const auto& pb = ch.poisson();
    const int d = pb.degree();
    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        int df = it % 4, dg = (it / 4) % 4, dh = (it / 16) % 3;
        Element f = testgen::random_homogeneous(rng, ch.gens(), df, 3, 2);
        Element gg = testgen::random_homogeneous(rng, ch.gens(), dg, 3, 2);
        Element h = testgen::random_homogeneous(rng, ch.gens(), dh, 3, 2);
        Element fg = pb.bracket(f, gg);
        CHECK(fg.is_homogeneous_of(df + dg + d));
        CHECK(pb.bracket(gg, f) == -(fg * sgn((df + d) * (dg + d))));
        CHECK(pb.bracket(f, gg * h) == fg * h + (gg * pb.bracket(f, h)) * sgn((df + d) * dg));
        CHECK(pb.bracket(f, pb.bracket(gg, h)) ==
              pb.bracket(fg, h) + pb.bracket(gg, pb.bracket(f, h)) * sgn((df + d) * (dg + d)));
    }
}

TEST_CASE("so(3) hamiltonian and derived bracket") {
    DerivedStructure ds(so3());
    const auto& ch = ds.chart();
    CHECK(ds.hamiltonian() == -(ch.xi(0) * ch.xi(1) * ch.xi(2)));
    CHECK(ds.self_bracket_residual().is_zero());
    auto s = so3();
    Section e3 = s.basis_section(2);
    CHECK(ds.bracket(s.basis_section(0), s.basis_section(1)) == e3);
    CHECK(ds.bracket(s.basis_section(1), s.basis_section(0)) == scale(Scalar(-1), e3));
    CHECK(ds.pairing(e3, e3) == s.constant(1));
    CHECK(ds.recover() == s);
}

TEST_CASE("round trip with anchor and a non-orthonormal metric") {
    // T R (+) T*R over the line: e1 = d/dx, e2 = dx, split pairing
    Matrix g(2, 2);
    g(0, 1) = g(1, 0) = 1;
    auto s = CourantPresentation::make(Field::Q, {"x"}, 2, g);
    s.anchor[0][0] = s.constant(1);
    DerivedStructure ds(s);
    CHECK(ds.self_bracket_residual().is_zero());
    CHECK(ds.recover() == s);
    Element f = parse_element(s.base, "x^2");
    CHECK(ds.anchor(s.basis_section(0), f) == parse_element(s.base, "2*x"));
    CHECK(ds.anchor(s.basis_section(1), f).is_zero());
    // D f = df  is the dx component
    Section df = ds.D(f);
    CHECK(df[0].is_zero());
    CHECK(df[1] == parse_element(s.base, "2*x"));
}

TEST_CASE("H over a base with polynomial anchor and structure functions") {
    // rank 3, orthonormal, anchor along x scaled by x, C_123 = x
    auto s = CourantPresentation::make(Field::Q, {"x"}, 3, Matrix::identity(3));
    s.set_C_antisym(0, 1, 2, parse_element(s.base, "x"));
    DerivedStructure ds(s);
    CHECK(ds.recover() == s);
    // constant rank-3 metric with C depending on x but zero anchor: {H,H} = 0
    CHECK(ds.self_bracket_residual().is_zero());
}
