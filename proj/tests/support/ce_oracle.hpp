#pragma once

// Brute-force Chevalley-Eilenberg cohomology of a small Lie algebra with
// rational structure constants.  Self-contained: its own fractions, its own
// wedge-basis enumeration and its own elimination, so it shares no code
// with the library it checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace courant::oracle {

struct Frac {
    std::int64_t n = 0, d = 1;
    Frac(std::int64_t a = 0, std::int64_t b = 1) : n(a), d(b) {
        if (d == 0) throw std::domain_error("oracle: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }
    friend Frac operator+(Frac a, Frac b) { return Frac(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Frac operator-(Frac a, Frac b) { return Frac(a.n * b.d - b.n * a.d, a.d * b.d); }
    friend Frac operator*(Frac a, Frac b) { return Frac(a.n * b.n, a.d * b.d); }
    friend Frac operator/(Frac a, Frac b) { return Frac(a.n * b.d, a.d * b.n); }
    bool zero() const { return n == 0; }
};

inline std::size_t rank_of(std::vector<std::vector<Frac>> m) {
    std::size_t r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].zero()) continue;
            Frac f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        ++r;
    }
    return r;
}

// f[a][b][c] = coefficient of e_c in [e_a, e_b].
using Structure = std::vector<std::vector<std::vector<Frac>>>;

inline std::vector<std::vector<int>> wedge_basis(int n, int k) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// value of the k-form e^A on vectors v_1..v_k (each a coordinate vector)
inline Frac eval_form(const std::vector<int>& A, const std::vector<std::vector<Frac>>& v) {
    const int k = static_cast<int>(A.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Frac total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        Frac prod = inv % 2 ? Frac(-1) : Frac(1);
        for (int i = 0; i < k && !prod.zero(); ++i) prod = prod * v[perm[i]][A[i]];
        total = total + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// matrix of d: Lambda^k -> Lambda^{k+1}, rows indexed by (k+1)-subsets
inline std::vector<std::vector<Frac>> ce_matrix(const Structure& f, int k) {
    const int n = static_cast<int>(f.size());
    auto src = wedge_basis(n, k), tgt = wedge_basis(n, k + 1);
    std::vector<std::vector<Frac>> m(tgt.size(), std::vector<Frac>(src.size()));
    auto unit = [&](int a) { std::vector<Frac> v(n); v[a] = 1; return v; };
    for (std::size_t ja = 0; ja < src.size(); ++ja)
        for (std::size_t jb = 0; jb < tgt.size(); ++jb) {
            const auto& B = tgt[jb];
            Frac total = 0;
            for (int i = 0; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j) {
                    std::vector<std::vector<Frac>> args;
                    args.push_back(f[B[i]][B[j]]);
                    for (int t = 0; t <= k; ++t)
                        if (t != i && t != j) args.push_back(unit(B[t]));
                    Frac v = eval_form(src[ja], args);
                    total = (i + j) % 2 ? total - v : total + v;
                }
            m[jb][ja] = total;
        }
    return m;
}

inline std::vector<std::size_t> ce_cohomology(const Structure& f) {
    const int n = static_cast<int>(f.size());
    std::vector<std::size_t> ranks(n + 2, 0);  // ranks[k] = rank of d out of degree k
    for (int k = 0; k < n; ++k) ranks[k] = rank_of(ce_matrix(f, k));
    std::vector<std::size_t> h;
    for (int k = 0; k <= n; ++k) {
        std::size_t dim = wedge_basis(n, k).size();
        std::size_t in = k > 0 ? ranks[k - 1] : 0;
        h.push_back(dim - ranks[k] - in);
    }
    return h;
}

}  // namespace courant::oracle
