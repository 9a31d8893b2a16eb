#pragma once

// Random filtered complexes with nontrivial spectral sequences, and an
// independent oracle for E_1 and E_infinity computed straight from the
// filtration on cohomology.

#include "courant/homology.hpp"

#include <random>

namespace courant::testgen {

inline FilteredComplex random_filtered_complex(std::mt19937_64& rng, size_t max_total = 12, int max_filt = 3) {
    std::uniform_int_distribution<int> ndeg(2, 4), fdist(0, max_filt), coin(0, 2), coef(-2, 2);
    const int degs = ndeg(rng);
    std::vector<std::vector<int>> filt(degs);
    struct Pair { int n; size_t u, w; };
    std::vector<Pair> pairs;
    size_t total = std::uniform_int_distribution<size_t>(1, max_total)(rng);
    size_t used = 0;
    while (used < total) {
        int n = std::uniform_int_distribution<int>(0, degs - 1)(rng);
        if (n + 1 < degs && used + 2 <= total && coin(rng) > 0) {
            int pu = fdist(rng);
            int pw = std::uniform_int_distribution<int>(pu, max_filt)(rng);
            filt[n].push_back(pu);
            filt[n + 1].push_back(pw);
            pairs.push_back({n, filt[n].size() - 1, filt[n + 1].size() - 1});
            used += 2;
        } else {
            filt[n].push_back(fdist(rng));
            used += 1;
        }
    }
    std::vector<size_t> dims;
    for (auto& f : filt) dims.push_back(f.size());
    std::vector<Matrix> d;
    for (int n = 0; n + 1 < degs; ++n) d.emplace_back(dims[n + 1], dims[n]);
    for (const auto& pr : pairs) d[pr.n](pr.w, pr.u) = 1;
    // filtration-preserving unipotent change of basis in each degree
    std::vector<Matrix> g, ginv;
    for (int n = 0; n < degs; ++n) {
        Matrix m = Matrix::identity(dims[n]);
        for (size_t i = 0; i < dims[n]; ++i)
            for (size_t j = 0; j < dims[n]; ++j) {
                bool later = filt[n][j] > filt[n][i] || (filt[n][j] == filt[n][i] && j > i);
                if (later && coin(rng) == 0) m(j, i) = coef(rng);
            }
        g.push_back(m);
        ginv.push_back(*inverse(m));
    }
    for (int n = 0; n + 1 < degs; ++n) d[n] = ginv[n + 1] * d[n] * g[n];
    return FilteredComplex(CochainComplex(0, dims, d), filt);
}

// dim of F^p H^n
inline size_t filtered_h_dim(const FilteredComplex& f, int p, int n) {
    const auto& c = f.complex;
    std::vector<size_t> cols;
    for (size_t j = 0; j < c.dim(n); ++j)
        if (f.filt(n, j) >= p) cols.push_back(j);
    Matrix dn = c.diff(n);
    Matrix k = kernel(dn.select_columns(cols));
    Matrix zp(c.dim(n), k.cols());
    for (size_t a = 0; a < cols.size(); ++a)
        for (size_t b = 0; b < k.cols(); ++b) zp(cols[a], b) = k(a, b);
    Matrix b = c.diff(n - 1);
    return rank(zp.hconcat(b)) - rank(b);
}

inline std::map<Bidegree, size_t> oracle_e_infinity(const FilteredComplex& f) {
    std::map<Bidegree, size_t> out;
    const auto& c = f.complex;
    for (int n = c.lo(); n <= c.hi(); ++n)
        for (int p = f.min_filtration(); p <= f.max_filtration(); ++p) {
            size_t v = filtered_h_dim(f, p, n) - filtered_h_dim(f, p + 1, n);
            if (v) out[{p, n - p}] = v;
        }
    return out;
}

inline std::map<Bidegree, size_t> oracle_e1(const FilteredComplex& f) {
    std::map<Bidegree, size_t> out;
    const auto& c = f.complex;
    for (int p = f.min_filtration(); p <= f.max_filtration(); ++p)
        for (int n = c.lo(); n <= c.hi(); ++n) {
            auto pick = [&](int deg) {
                std::vector<size_t> idx;
                for (size_t j = 0; j < c.dim(deg); ++j)
                    if (f.filt(deg, j) == p) idx.push_back(j);
                return idx;
            };
            auto cur = pick(n), nxt = pick(n + 1), prv = pick(n - 1);
            size_t ker = cur.size() - rank(c.diff(n).select_rows(nxt).select_columns(cur));
            size_t im = rank(c.diff(n - 1).select_rows(cur).select_columns(prv));
            if (ker - im) out[{p, n - p}] = ker - im;
        }
    return out;
}

}  // namespace courant::testgen
