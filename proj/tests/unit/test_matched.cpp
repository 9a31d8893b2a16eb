#include "doctest.h"

#include "courant/dirac.hpp"
#include "courant/lie.hpp"
#include "courant/matched.hpp"
#include "../support/fixtures.hpp"

#include <random>

using namespace courant;
using namespace courant::fixtures;

namespace {

// F one-dimensional over a point, g a quadratic Lie algebra, nabla = ad_A.
StandardData ad_connection(const LieAlgebra& g, const Matrix& kappa, const Vec& A) {
    const size_t k = g.dim();
    auto d = StandardData::make(g.field, {}, 1, k);
    d.kappa = kappa;
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            std::vector<Element> v;
            for (size_t c = 0; c < k; ++c) v.push_back(Element::constant(d.gens(), g.f[a][b][c]));
            d.g_br[a][b] = v;
            Element n = d.zero();
            for (size_t c = 0; c < k; ++c) n += Element::constant(d.gens(), A[c] * g.f[c][a][b]);
            d.nabla[0][a][b] = n;
        }
    return d;
}

}  // namespace

TEST_CASE("so(3) split along a line and its plane") {
    auto s = quadratic_lie_algebra(so3_lie(), Matrix::identity(3));
    auto dec = decompose(s, cols(3, {{1, 0, 0}}));
    CHECK(dec.parrot);
    CHECK(dec.pair.n1() == 1);
    CHECK(dec.pair.n2() == 2);
    CHECK(matched_sum(dec.pair) == change_frame(s, dec.frame));
    auto rep = verify_matched_pair(dec.pair, quick());
    CHECK(rep.ok());
    CHECK(rep.extra.at(0).uncertain);
    CHECK(rep.extra.at(0).ok);
    auto v = matched_iff_courant(dec.pair, quick());
    CHECK(v.matched);
    CHECK(v.courant);
}

TEST_CASE("a perturbed connection breaks both sides") {
    // so(3) (+) so(3) with opposite metrics, split into its two summands
    auto s = alekseev_double(so3_lie(), Matrix::identity(3));
    auto dec = decompose(s, cols(6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}));
    REQUIRE(verify_matched_pair(dec.pair, quick()).ok());
    perturb_right(dec.pair, 0, 0, 1, Scalar(1));
    auto v = matched_iff_courant(dec.pair, quick());
    CHECK(v.report.structure_ok());
    CHECK(!v.matched);
    CHECK(!v.courant);
    CHECK(!v.report.first_failure().empty());
}

TEST_CASE("property: matched verdict agrees with verify_courant on random pairs") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-2, 2);
    std::vector<CourantPresentation> sources = {
        quadratic_lie_algebra(so3_lie(), Matrix::identity(3)),
        drinfeld_double(sl2_bialgebra()),
        alekseev_double(so3_lie(), Matrix::identity(3)),
    };
    int cases = 0, agree = 0, valid = 0, broken = 0, outside = 0;
    for (int it = 0; it < 24; ++it) {
        const auto& s = sources[it % sources.size()];
        const size_t n = s.rank;
        const size_t n1 = 1 + static_cast<size_t>(it / 3) % (n - 1);
        Matrix P(n, n1);
        for (size_t j = 0; j < n1; ++j)
            for (size_t i = 0; i < n; ++i) P(i, j) = c(rng);
        if (rank(P) != n1 || determinant(P.transpose() * s.metric * P).is_zero()) continue;
        auto dec = decompose(s, P, quick(1));
        REQUIRE(dec.parrot);
        // the projected brackets need not be Courant; such splittings are outside the statement
        if (!dec.e1_report.valid() || !dec.e2_report.valid()) {
            ++outside;
            continue;
        }
        CHECK(matched_sum(dec.pair) == change_frame(s, dec.frame));
        if (it % 2 && dec.pair.n2() > 1) perturb_right(dec.pair, 0, 0, 1, Scalar(c(rng) == 0 ? 1 : 2));
        auto v = matched_iff_courant(dec.pair, quick(1));
        ++cases;
        if (v.equivalent()) ++agree;

        if (v.courant) ++valid;
        else ++broken;
    }
    CHECK(cases >= 10);
    CHECK(outside > 0);
    CHECK(agree == cases);
    CHECK(valid > 0);
    CHECK(broken > 0);
}

TEST_CASE("isotropic subalgebra of the double cannot be split off") {
    auto s = drinfeld_double(sl2_bialgebra());
    CHECK_THROWS_AS(decompose(s, cols(6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}})),
                    std::invalid_argument);
}

TEST_CASE("decomposition over a base keeps the D terms") {
    // T (+) T* over x,y,z with a closed twist, split along span(d/dx, dx)
    Matrix g(6, 6);
    for (size_t i = 0; i < 3; ++i) g(i, 3 + i) = g(3 + i, i) = 1;
    auto s = CourantPresentation::make(Field::Q, {"x", "y", "z"}, 6, g);
    for (size_t i = 0; i < 3; ++i) s.anchor[i][i] = s.constant(1);
    s.set_C_antisym(0, 1, 2, parse_element(s.base, "x*y + z^2"));
    REQUIRE(verify_courant(s, quick()).valid());
    auto dec = decompose(s, cols(6, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}), quick());
    CHECK(dec.parrot);
    CHECK(dec.e1_report.valid());
    CHECK(dec.e2_report.valid());
    CHECK(matched_sum(dec.pair) == change_frame(s, dec.frame));
    auto v = matched_iff_courant(dec.pair, quick());
    CHECK(v.matched);
    CHECK(v.courant);
    CHECK(v.report.extra.at(0).ok);

    // the general-section bracket formula reproduces the sum's bracket
    MatchedCalculus mc(dec.pair);
    SectionCalculus sum(matched_sum(dec.pair));
    std::mt19937_64 rng(5);
    for (int it = 0; it < 6; ++it) {
        Section a = dec.pair.E1.zero_section(), b = a, x = dec.pair.E2.zero_section(), y = x;
        for (auto* sec : {&a, &b, &x, &y})
            for (auto& e : *sec) e = random_function(rng, s.base, 2);
        auto [p1, p2] = mc.full_bracket(a, x, b, y);
        Section u = a, w = b;
        u.insert(u.end(), x.begin(), x.end());
        w.insert(w.end(), y.begin(), y.end());
        Section expect = sum.bracket(u, w);
        p1.insert(p1.end(), p2.begin(), p2.end());
        CHECK(p1 == expect);
    }
}

TEST_CASE("connections that do not kill D are rejected as structure") {
    Matrix g(6, 6);
    for (size_t i = 0; i < 3; ++i) g(i, 3 + i) = g(3 + i, i) = 1;
    auto s = CourantPresentation::make(Field::Q, {"x", "y", "z"}, 6, g);
    for (size_t i = 0; i < 3; ++i) s.anchor[i][i] = s.constant(1);
    auto dec = decompose(s, cols(6, {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}), quick());
    // nabla->_{dx} rotates the (d/dy, dy) plane; dx = D x
    perturb_right(dec.pair, 1, 0, 2, Scalar(1));
    auto rep = verify_matched_pair(dec.pair, quick());
    CHECK(!rep.structure_ok());
    CHECK(rep.first_failure().rfind("right kills D", 0) == 0);
    CHECK(!verify_courant(matched_sum(dec.pair), quick()).valid());
}

TEST_CASE("flat standard structure over the plane as a matched pair") {
    auto d = flat_so3_over_plane();
    auto build = standard_regular_build(d);
    REQUIRE(build.ok());
    auto mp = flat_standard_to_matched(d);
    CHECK(mp.n1() == 4);
    CHECK(mp.n2() == 3);
    auto v = matched_iff_courant(mp, quick());
    CHECK(v.matched);
    CHECK(v.courant);
    CHECK(v.report.extra.at(0).ok);
    // sum order xi, f, r against the standard order xi, r, f
    auto sum = matched_sum(mp);
    auto perm = permutation({0, 1, 5, 6, 2, 3, 4});
    CHECK(perm == flat_sum_frame(2, 3));
    CHECK(change_frame(build.presentation, perm) == sum);
}

TEST_CASE("curvature of the matched connections is tensorial") {
    auto mp = flat_standard_to_matched(flat_so3_over_plane());
    MatchedCalculus mc(mp);
    std::mt19937_64 rng(9);
    const auto& b1 = mp.E1.base;
    for (int it = 0; it < 4; ++it) {
        for (size_t i = 0; i < mp.n1(); ++i)
            for (size_t j = 0; j < mp.n1(); ++j)
                for (size_t al = 0; al < mp.n2(); ++al) {
                    Element f = random_function(rng, b1, 2);
                    Section a = mp.E1.basis_section(i), b = mp.E1.basis_section(j), x = mp.E2.basis_section(al);
                    Section base = mc.right_curvature(a, b, x);
                    CHECK(mc.right_curvature(scale(f, a), b, x) == scale(f, base));
                    CHECK(mc.right_curvature(a, scale(f, b), x) == scale(f, base));
                    CHECK(mc.right_curvature(a, b, scale(f, x)) == scale(f, base));
                    Section lb = mc.left_curvature(x, mp.E2.basis_section((al + 1) % mp.n2()), a);
                    CHECK(mc.left_curvature(x, mp.E2.basis_section((al + 1) % mp.n2()), scale(f, a)) ==
                          scale(f, lb));
                }
    }
}

TEST_CASE("flat conversion rejects <R,R> != 0 and d_F H != 0") {
    auto d = StandardData::make(Field::Q, {}, 4, 1);
    d.set_R(0, 1, {d.poly("1")});
    d.set_R(2, 3, {d.poly("1")});
    CHECK_THROWS_AS(flat_standard_to_matched(d), std::invalid_argument);

    auto h = StandardData::make(Field::Q, {"x1", "x2", "x3", "x4"}, 4, 0);
    for (size_t i = 0; i < 4; ++i) h.anchor[i][i] = h.poly("1");
    h.set_H(1, 2, 3, h.poly("x1"));
    CHECK_THROWS_AS(flat_standard_to_matched(h), std::invalid_argument);
}

TEST_CASE("one-dimensional F with an inner connection on so(3)") {
    auto d = ad_connection(so3_lie(), Matrix::identity(3), {Scalar(1), Scalar(0), Scalar(2)});
    REQUIRE(standard_regular_build(d).ok());
    auto v = matched_iff_courant(flat_standard_to_matched(d), quick());
    CHECK(v.matched);
    CHECK(v.courant);
}

TEST_CASE("direct sum over Q(i)") {
    auto g1 = so3_lie();
    g1.field = Field::Qi;
    auto g2 = so3_lie();
    g2.field = Field::Qi;
    for (auto& p : g2.f)
        for (auto& q : p)
            for (auto& c : q) c = c * Scalar(0, 1);
    Matrix k2 = Matrix::identity(3);
    for (size_t i = 0; i < 3; ++i) k2(i, i) = Scalar(0, 1);
    auto e1 = quadratic_lie_algebra(g1, Matrix::identity(3));
    auto e2 = quadratic_lie_algebra(g2, k2);
    e2.base = e1.base;
    auto mp = MatchedPair::make(e1, e2);
    auto v = matched_iff_courant(mp, quick());
    CHECK(v.matched);
    CHECK(v.courant);
    CHECK(matched_sum(mp).field == Field::Qi);
}

TEST_CASE("Dirac structures of a flat matched pair") {
    auto bi = sl2_bialgebra();
    auto dbl = drinfeld_double(bi);
    // the double as a Lie algebra with its split metric
    LieAlgebra g = LieAlgebra::make({"H", "Xp", "Xm", "Hs", "Xps", "Xms"});
    Matrix kappa = dbl.metric;
    auto ginv = *inverse(kappa);
    for (size_t a = 0; a < 6; ++a)
        for (size_t b = 0; b < 6; ++b)
            for (size_t c = 0; c < 6; ++c) {
                Scalar v;
                for (size_t l = 0; l < 6; ++l) v += dbl.C[a][b][l].constant_term() * ginv(l, c);
                g.f[a][b][c] = v;
            }
    REQUIRE(g.is_lie());
    Matrix D1 = cols(2, {{0, 1}});                                           // F inside F* (+) F
    Matrix D2 = cols(6, {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});  // sl2

    Vec inside(6), outside(6);
    inside[1] = 1;   // X+
    outside[3] = 1;  // H*
    auto good = flat_standard_to_matched(ad_connection(g, kappa, inside));
    auto r = matched_dirac_check(good, D1, D2, quick());
    CHECK(r.inputs_dirac);
    CHECK(r.verdict);
    CHECK(r.sum_dirac);
    CHECK(r.lie_pair);

    auto bad = flat_standard_to_matched(ad_connection(g, kappa, outside));
    auto rb = matched_dirac_check(bad, D1, D2, quick());
    CHECK(rb.inputs_dirac);
    CHECK(!rb.verdict);
    CHECK(!rb.witness.empty());
    CHECK(!rb.sum_dirac);
}
