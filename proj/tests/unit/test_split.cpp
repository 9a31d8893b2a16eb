#include "doctest.h"

#include "courant/homology.hpp"
#include "courant/lie.hpp"
#include "courant/sections.hpp"
#include "courant/split.hpp"

#include <random>

using namespace courant;

namespace {

std::vector<size_t> prefix(const std::vector<size_t>& v, size_t n) { return {v.begin(), v.begin() + n}; }

// CE(so3) (x) F[p] with p in degree 2 and zero differential on p, truncated
// at total degree max, filtered by exterior degree.  This is the t-degree-0
// slice of the standard complex of so(3) x N with zero anchor and no twist.
FilteredComplex so3_times_line(int max) {
    auto s = quadratic_lie_algebra(so3_lie(), Matrix::identity(3));
    auto ce = standard_complex(s, 3);
    std::vector<size_t> dims;
    std::vector<std::vector<int>> filt;
    // block layout in degree n: j = 0, 1, .. with exterior degree n - 2j
    auto blocks = [&](int n) {
        std::vector<int> ext;
        for (int j = 0; 2 * j <= n; ++j)
            if (n - 2 * j <= 3) ext.push_back(n - 2 * j);
        return ext;
    };
    for (int n = 0; n <= max; ++n) {
        size_t d = 0;
        std::vector<int> f;
        for (int e : blocks(n)) {
            d += ce.dim(e);
            for (size_t k = 0; k < ce.dim(e); ++k) f.push_back(e);
        }
        dims.push_back(d);
        filt.push_back(f);
    }
    std::vector<Matrix> ds;
    for (int n = 0; n < max; ++n) {
        Matrix D(dims[n + 1], dims[n]);
        size_t col = 0;
        for (int e : blocks(n)) {
            // find the matching block e+1 in degree n+1 (same power of p)
            size_t row = 0;
            bool found = false;
            for (int e2 : blocks(n + 1)) {
                if (e2 == e + 1) {
                    found = true;
                    break;
                }
                row += ce.dim(e2);
            }
            if (found) {
                Matrix de = ce.diff(e);
                for (size_t i = 0; i < de.rows(); ++i)
                    for (size_t j = 0; j < de.cols(); ++j) D(row + i, col + j) = de(i, j);
            }
            col += ce.dim(e);
        }
        ds.push_back(D);
    }
    return FilteredComplex(CochainComplex(0, dims, ds), filt);
}

}  // namespace

TEST_CASE("Alekseev model with f constant doubles H(G)") {
    auto m = alekseev_model(1, "1");
    CHECK(transgression(m).is_zero());
    auto h = split_cohomology(m, 7);
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 1, 1, 1, 1, 1, 1});
    CHECK(h.kil_rank == 1);
    for (const auto& t : h.total) CHECK(t.freeness == "free");
}

TEST_CASE("Alekseev model with f = t kills the Cartan class") {
    auto m = alekseev_model(1, "t");
    auto T = transgression(m);
    REQUIRE(T.rows == std::vector<std::string>{"C"});
    CHECK(T.columns.at(0).at(0) == Element::constant(T.columns[0][0].gens(), 1));
    auto h = split_cohomology(m, 6);
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 0, 0, 0, 0, 0});
    CHECK(h.kil_rank == 0);
    CHECK(!h.note.empty());

    auto st = sheet_tables(m, 6);
    CHECK(st.e2.at({3, 0}) == 1);
    CHECK(st.e4.at({3, 0}).rank == 0);
    CHECK(st.e3_equals_e2);
    CHECK(st.collapse_at_4);
}

TEST_CASE("rank-2 model: the quotient by 2t C has t-torsion") {
    auto m = alekseev_model(2, "t^2");
    auto T = transgression(m);
    REQUIRE(T.rows.size() == 1);
    auto tg = T.columns[0][0].gens();
    CHECK(T.columns[0][0] == parse_element(tg, "2*t"));
    auto h = split_cohomology(m, 8);
    CHECK(h.kil_rank == 0);
    CHECK(h.kil_locus == "t = 0");
    CHECK(h.quotient[3].rank == 0);
    CHECK(h.quotient[3].torsion == std::vector<std::string>{"t"});
    CHECK(h.quotient[3].freeness == "torsion");
    CHECK(h.quotient[5].rank == 1);   // x2
    CHECK(h.quotient[8].torsion == std::vector<std::string>{"t"});  // C x2
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 0, 0, 0, 1, 0, 0, 0});
    CHECK(h.total[3].freeness == "torsion");
}

TEST_CASE("no twist: ranks follow the product formula") {
    auto m = SplitBaseModel::make({{"y", 3}}, {"t"});
    auto h = split_cohomology(m, 7);
    // sum over p+q=n of rank Lambda(y)^p * [q even]
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("no twist agrees with an explicit filtered complex") {
    const int max = 8;
    auto ss = e_infinity(so3_times_line(max));
    REQUIRE(ss.converges);
    auto h = split_cohomology(SplitBaseModel::make({{"y", 3}}, {"t"}), max);
    // the top degree of the truncation has no outgoing differential
    CHECK(prefix(ss.h_dims, max) == prefix(h.ranks(), max));
    for (int n = 0; n < max; ++n)
        for (int q = 0; q <= n; q += 2) CHECK(ss.e_infinity[{n - q, q}] == h.e4.at({n - q, q}).rank);
}

TEST_CASE("transitive case: ranks equal naive and standard cohomology") {
    auto m = SplitBaseModel::make({{"y", 3}}, {});
    auto h = split_cohomology(m, 5);
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 0, 1, 0, 0});
    auto st = sheet_tables(m, 5);
    for (const auto& [bq, d] : st.e2)
        if (bq.second != 0) CHECK(d == 0);

    for (auto g : {so3_lie(), sl2_lie()}) {
        Matrix kappa = Matrix::identity(3);
        if (g.names[0] == "H") {
            // Killing-type form on sl2: <H,H> = 2, <X+,X-> = 1
            kappa = Matrix(3, 3);
            kappa(0, 0) = 2;
            kappa(1, 2) = kappa(2, 1) = 1;
        }
        auto ss = e_infinity(naive_filtered_complex(quadratic_lie_algebra(g, kappa), 3));
        CHECK(ss.h_dims == prefix(h.ranks(), 4));
    }
}

TEST_CASE("empty naive algebra gives the multivector table") {
    auto m = SplitBaseModel::make({}, {"t"});
    auto st = sheet_tables(m, 6);
    for (int q = 0; q <= 6; ++q) CHECK(st.e2.at({0, q}) == (q % 2 ? 0u : 1u));
    auto h = split_cohomology(m, 6);
    CHECK(h.ranks() == std::vector<size_t>{1, 0, 1, 0, 1, 0, 1});
}

TEST_CASE("property: T3 is linear over the polynomial ring") {
    auto m = SplitBaseModel::make({{"C", 3}, {"y", 5}}, {"t1", "t2"});
    m.severa = m.parse("(t1^2 + t1*t2)*C");
    std::mt19937_64 rng(4);
    std::vector<Generator> tv{{"t1", 0}, {"t2", 0}};
    auto tg = make_gens(tv);
    for (int it = 0; it < 10; ++it) {
        std::vector<Element> X{random_function(rng, tg, 2), random_function(rng, tg, 2)};
        Element g = random_function(rng, tg, 2);
        std::vector<Element> gX{g * X[0], g * X[1]};
        CHECK(transgression_apply(m, gX) == g.rebase(m.gens) * transgression_apply(m, X));
        std::vector<Element> Y{random_function(rng, tg, 1), random_function(rng, tg, 1)};
        std::vector<Element> XY{X[0] + Y[0], X[1] + Y[1]};
        CHECK(transgression_apply(m, XY) == transgression_apply(m, X) + transgression_apply(m, Y));
    }
}

TEST_CASE("several variables: freeness is reported, not guessed") {
    auto m = SplitBaseModel::make({{"C", 3}}, {"t1", "t2"});
    m.severa = m.parse("t1*t2*C");
    auto h = split_cohomology(m, 4);
    CHECK(h.kil_rank == 1);
    CHECK(h.kil_freeness == "undetermined");
    CHECK(h.quotient[3].rank == 0);
    CHECK(h.quotient[3].freeness == "undetermined");
    CHECK(h.kil_locus.rfind("common zeros of", 0) == 0);

    auto u = SplitBaseModel::make({{"C", 3}}, {"t1", "t2"});
    u.severa = u.parse("(t1 + t2^2)*C");
    auto hu = split_cohomology(u, 4);
    CHECK(hu.quotient[3].rank == 0);
    CHECK(hu.quotient[3].freeness == "free");
    CHECK(hu.kil_locus == "none");
}

TEST_CASE("sheets collapse at 4 for the rank-2 model") {
    auto st = sheet_tables(alekseev_model(2, "t"), 10);
    CHECK(st.collapse_at_4);
    CHECK(st.e3_equals_e2);
    CHECK(st.e2.at({0, 2}) == 1);
    CHECK(st.e4.at({0, 2}).rank == 0);  // ker T3 = 0
    CHECK(st.e4.at({5, 0}).rank == 1);
}

TEST_CASE("model validation") {
    auto m = SplitBaseModel::make({{"C", 3}, {"y", 5}}, {"t"});
    m.severa = m.parse("t*y");
    CHECK_THROWS_AS(split_cohomology(m, 3), std::invalid_argument);
    CHECK_THROWS_AS(alekseev_model(0, "1"), std::invalid_argument);
    CHECK_THROWS_AS(SplitBaseModel::make({{"z", 0}}, {"t"}), std::invalid_argument);
    auto a = alekseev_model(3, "1");
    CHECK(naive_basis(a, 8) == std::vector<std::string>{"C*x2"});
}
