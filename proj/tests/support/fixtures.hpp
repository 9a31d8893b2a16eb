#pragma once

// Presentations and matched-pair helpers shared by the unit and
// acceptance tests.

#include "courant/lie.hpp"
#include "courant/matched.hpp"
#include "courant/sections.hpp"
#include "courant/standard.hpp"

namespace courant::fixtures {

inline VerifyOptions quick(int samples = 2) {
    VerifyOptions o;
    o.samples = samples;
    return o;
}

// T R^m (+) T* R^m with the split pairing and the identity anchor on T.
inline CourantPresentation tangent_double(const std::vector<std::string>& base) {
    const size_t m = base.size();
    Matrix g(2 * m, 2 * m);
    for (size_t i = 0; i < m; ++i) g(i, m + i) = g(m + i, i) = 1;
    auto s = CourantPresentation::make(Field::Q, base, 2 * m, g);
    for (size_t i = 0; i < m; ++i) s.anchor[i][i] = s.constant(1);
    return s;
}

// Columns given as lists of integers.
inline Matrix cols(size_t rows, const std::vector<std::vector<int>>& cs) {
    Matrix m(rows, cs.size());
    for (size_t j = 0; j < cs.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = cs[j][i];
    return m;
}

// Sends basis vector i to position to[i].
inline Matrix permutation(const std::vector<size_t>& to) {
    Matrix p(to.size(), to.size());
    for (size_t i = 0; i < to.size(); ++i) p(to[i], i) = 1;
    return p;
}

// Adds g2^{-1} S (S antisymmetric) to nabla->_{e_i}; stays metric.
inline void perturb_right(MatchedPair& mp, size_t i, size_t al, size_t be, const Scalar& c) {
    Matrix S(mp.n2(), mp.n2());
    S(al, be) = c;
    S(be, al) = -c;
    Matrix N = *inverse(mp.E2.metric) * S;
    for (size_t a = 0; a < mp.n2(); ++a)
        for (size_t b = 0; b < mp.n2(); ++b)
            if (!N(b, a).is_zero()) mp.right[i][a][b] += mp.E1.constant(N(b, a));
}

// F = T R^2 over x,y; g = so(3); nabla_{d/dy} = x ad_{e3}, R(d/dx, d/dy) = e3.
inline StandardData flat_so3_over_plane() {
    auto d = StandardData::make(Field::Q, {"x", "y"}, 2, 3);
    d.anchor[0][0] = d.poly("1");
    d.anchor[1][1] = d.poly("1");
    auto so3 = so3_lie();
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
            std::vector<Element> v;
            for (size_t c = 0; c < 3; ++c) v.push_back(Element::constant(d.gens(), so3.f[a][b][c]));
            d.g_br[a][b] = v;
        }
    for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b)
            d.nabla[1][a][b] = d.poly("x") * so3.f[2][a][b];
    d.set_R(0, 1, {d.zero(), d.zero(), d.poly("1")});
    return d;
}

// The matched sum of the flat conversion is the standard build with its
// basis xi, r, f reordered to xi, f, r.
inline Matrix flat_sum_frame(size_t m, size_t k) {
    std::vector<size_t> to;
    for (size_t i = 0; i < m; ++i) to.push_back(i);
    for (size_t i = 0; i < m; ++i) to.push_back(m + k + i);
    for (size_t a = 0; a < k; ++a) to.push_back(m + a);
    return permutation(to);
}

}  // namespace courant::fixtures
