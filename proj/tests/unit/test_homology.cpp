#include "doctest.h"

#include "../support/ce_oracle.hpp"
#include "../support/filtered_gen.hpp"
#include "courant/homology.hpp"

using namespace courant;

namespace {

CourantPresentation so3(const Matrix& metric = Matrix::identity(3)) {
    auto s = CourantPresentation::make(Field::Q, {}, 3, metric);
    s.set_C_antisym(0, 1, 2, s.constant(metric(0, 0)));
    return s;
}

oracle::Structure so3_structure() {
    oracle::Structure f(3, std::vector<std::vector<oracle::Frac>>(3, std::vector<oracle::Frac>(3)));
    auto put = [&](int a, int b, int c) {
        f[a][b][c] = 1;
        f[b][a][c] = -1;
    };
    put(0, 1, 2);
    put(1, 2, 0);
    put(2, 0, 1);
    return f;
}

}  // namespace

TEST_CASE("complex validation") {
    Matrix d0(1, 1), d1(1, 1);
    d0(0, 0) = 1;
    d1(0, 0) = 1;
    CHECK_THROWS(CochainComplex(0, {1, 1, 1}, {d0, d1}));
    CHECK_NOTHROW(CochainComplex(0, {1, 1}, {d0}));
    CochainComplex c(0, {1, 1}, {d0});
    CHECK_THROWS(FilteredComplex(c, {{1}, {0}}));  // d lowers the filtration
    CHECK_NOTHROW(FilteredComplex(c, {{0}, {1}}));
}

TEST_CASE("cohomology of a small complex with class coordinates") {
    Matrix d0(2, 1);
    d0(0, 0) = 1;
    d0(1, 0) = 1;
    CochainComplex c(0, {1, 2}, {d0});
    auto h = cohomology(c);
    CHECK(h.dims == std::vector<size_t>{0, 1});
    // (1,1) is a boundary, (1,0) generates
    auto k1 = cohomology_class(c, h, 1, {Scalar(1), Scalar(1)});
    CHECK(k1 == std::vector<Scalar>{Scalar(0)});
    auto k2 = cohomology_class(c, h, 1, {Scalar(3), Scalar(1)});
    CHECK(!is_zero_vector(k2));
}

TEST_CASE("torus model pages") {
    auto f = torus_model();
    auto ss = e_infinity(f);
    for (int r = 0; r <= 2; ++r) {
        const auto& page = ss.pages[r];
        CHECK(page.dims.size() == 4);
        for (int p = 0; p <= 1; ++p)
            for (int q = 0; q <= 1; ++q) CHECK(page.dim(p, q) == 1);
    }
    CHECK(ss.h_dims == std::vector<size_t>{1, 2, 1});
    CHECK(ss.collapse_page == 2);
    CHECK(ss.converges);
}

TEST_CASE("trivial filtration collapses at the first page") {
    Matrix d0(1, 1);
    d0(0, 0) = 1;
    CochainComplex c(0, {1, 1, 1}, {d0, Matrix(1, 1)});
    FilteredComplex f(c, {{0}, {0}, {0}});
    auto ss = e_infinity(f);
    CHECK(ss.collapse_page == 1);
    CHECK(!ss.pages[0].differential_vanishes());
    CHECK(ss.pages[1].dims == ss.e_infinity);
    CHECK(ss.converges);
}

TEST_CASE("standard complex of so(3) and abelian rank 2") {
    auto c = standard_complex(so3(), 3);
    CHECK(c.dims() == std::vector<size_t>{1, 3, 3, 1});
    CHECK(cohomology(c).dims == std::vector<size_t>{1, 0, 0, 1});
    CHECK(oracle::ce_cohomology(so3_structure()) == std::vector<size_t>{1, 0, 0, 1});

    auto ab = CourantPresentation::make(Field::Q, {}, 2, Matrix::identity(2));
    auto ca = standard_complex(ab, 2);
    CHECK(ca.dims() == std::vector<size_t>{1, 2, 1});
    CHECK(ca.diff(0).is_zero());
    CHECK(ca.diff(1).is_zero());
    CHECK(cohomology(ca).dims == std::vector<size_t>{1, 2, 1});
}

TEST_CASE("standard differential equals the brute-force CE matrix for so(3)") {
    auto c = standard_complex(so3(), 3);
    auto f = so3_structure();
    for (int k = 0; k < 3; ++k) {
        auto m = oracle::ce_matrix(f, k);
        Matrix d = c.diff(k);
        REQUIRE(d.rows() == m.size());
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m[i].size(); ++j)
                CHECK(d(i, j) == Scalar(mpq_class(m[i][j].n, m[i][j].d)));
    }
}

TEST_CASE("naive and standard complexes agree through the metric") {
    Matrix g = Matrix::identity(3);
    g(0, 0) = 2;
    g(1, 1) = 2;
    g(2, 2) = 2;
    for (const auto& s : {so3(), so3(g)}) {
        auto st = standard_complex(s, 3);
        auto nv = naive_complex(s, 3);
        CHECK(st.dims() == nv.dims());
        for (int k = 0; k < 3; ++k)
            CHECK(metric_power(s, k + 1) * nv.diff(k) == st.diff(k) * metric_power(s, k));
        CHECK(cohomology(st).dims == cohomology(nv).dims);
    }
    // orthonormal so(3): the matrices coincide
    auto s = so3();
    auto st = standard_complex(s, 3);
    auto nv = naive_complex(s, 3);
    for (int k = 0; k < 3; ++k) CHECK(st.diff(k) == nv.diff(k));
}

TEST_CASE("complexes over a point reject base coordinates") {
    auto s = CourantPresentation::make(Field::Q, {"x"}, 2, Matrix::identity(2));
    CHECK_THROWS(standard_complex(s, 2));
    CHECK_THROWS(naive_complex(s, 2));
}

TEST_CASE("naive-ideal filtration of so(3) sits in q = 0") {
    auto f = naive_filtered_complex(so3(), 3);
    auto ss = e_infinity(f);
    for (const auto& [pq, d] : ss.pages[0].dims) CHECK(pq.second == 0);
    CHECK(ss.collapse_page == 2);
    CHECK(ss.converges);
    CHECK(ss.e_infinity.at({0, 0}) == 1);
    CHECK(ss.e_infinity.at({3, 0}) == 1);
}

TEST_CASE("property: random filtered complexes") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 60; ++it) {
        auto f = testgen::random_filtered_complex(rng);
        auto ss = e_infinity(f);
        CHECK(ss.converges);
        CHECK(ss.e_infinity == testgen::oracle_e_infinity(f));
        CHECK(ss.pages[1].dims == testgen::oracle_e1(f));
        for (size_t r = 0; r + 1 < ss.pages.size(); ++r) {
            const auto& page = ss.pages[r];
            // E_{r+1} = H(E_r, d_r), dimension by dimension, and d_r^2 = 0
            for (const auto& [pq, d] : page.dims) {
                int p = pq.first, q = pq.second, rr = static_cast<int>(r);
                size_t out_rank = 0, in_rank = 0;
                auto it_out = page.differential.find(pq);
                if (it_out != page.differential.end()) out_rank = rank(it_out->second);
                Bidegree src{p - rr, q + rr - 1};
                auto it_in = page.differential.find(src);
                if (it_in != page.differential.end()) {
                    in_rank = rank(it_in->second);
                    if (it_out != page.differential.end()) CHECK((it_out->second * it_in->second).is_zero());
                }
                CHECK(ss.pages[r + 1].dim(p, q) == d - out_rank - in_rank);
                CHECK(ss.pages[r + 1].dim(p, q) <= d);
            }
        }
    }
}
