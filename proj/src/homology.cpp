#include "courant/homology.hpp"

#include "courant/poisson.hpp"

#include <algorithm>
#include <stdexcept>

namespace courant {

CochainComplex::CochainComplex(int lo, std::vector<size_t> dims, std::vector<Matrix> d)
    : lo_(lo), dims_(std::move(dims)), d_(std::move(d)) {
    if (dims_.empty()) throw std::invalid_argument("complex without degrees");
    if (d_.size() + 1 != dims_.size()) throw std::invalid_argument("complex needs one differential between consecutive degrees");
    for (size_t k = 0; k < d_.size(); ++k)
        if (d_[k].rows() != dims_[k + 1] || d_[k].cols() != dims_[k])
            throw std::invalid_argument("differential out of degree " + std::to_string(lo_ + k) + " has the wrong shape");
    for (size_t k = 0; k + 1 < d_.size(); ++k)
        if (!(d_[k + 1] * d_[k]).is_zero())
            throw std::invalid_argument("d^2 != 0 out of degree " + std::to_string(lo_ + k));
}

size_t CochainComplex::dim(int n) const {
    if (n < lo_ || n > hi()) return 0;
    return dims_[n - lo_];
}

Matrix CochainComplex::diff(int n) const {
    if (n >= lo_ && n < hi()) return d_[n - lo_];
    return Matrix(dim(n + 1), dim(n));
}

size_t Cohomology::dim(int n) const {
    if (n < lo || n >= lo + static_cast<int>(dims.size())) return 0;
    return dims[n - lo];
}

Cohomology cohomology(const CochainComplex& c) {
    Cohomology h;
    h.lo = c.lo();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        Matrix z = kernel(c.diff(n));
        Matrix b = column_basis(c.diff(n - 1));
        Matrix reps = complement_in(b, z);
        h.dims.push_back(reps.cols());
        h.representatives.push_back(reps);
        h.boundaries.push_back(b);
    }
    return h;
}

std::vector<Scalar> cohomology_class(const CochainComplex& c, const Cohomology& h, int n, const std::vector<Scalar>& v) {
    if (v.size() != c.dim(n)) throw std::invalid_argument("vector has the wrong length for degree " + std::to_string(n));
    if (!is_zero_vector(c.diff(n).apply(v))) throw std::invalid_argument("vector is not a cocycle");
    const Matrix& b = h.boundaries[n - h.lo];
    const Matrix& r = h.representatives[n - h.lo];
    auto x = solve(b.hconcat(r), v);
    if (!x) throw std::logic_error("cocycle outside span of boundaries and representatives");
    return std::vector<Scalar>(x->begin() + static_cast<long>(b.cols()), x->end());
}

FilteredComplex::FilteredComplex(CochainComplex c, std::vector<std::vector<int>> levels)
    : complex(std::move(c)), filtration(std::move(levels)) {
    if (filtration.size() != complex.dims().size()) throw std::invalid_argument("filtration needs one list per degree");
    for (int n = complex.lo(); n <= complex.hi(); ++n) {
        const auto& fl = filtration[n - complex.lo()];
        if (fl.size() != complex.dim(n)) throw std::invalid_argument("filtration list has the wrong length");
        for (int p : fl)
            if (p < 0) throw std::invalid_argument("filtration indices must be >= 0");
    }
    for (int n = complex.lo(); n < complex.hi(); ++n) {
        Matrix d = complex.diff(n);
        for (size_t j = 0; j < d.cols(); ++j)
            for (size_t i = 0; i < d.rows(); ++i)
                if (!d(i, j).is_zero() && filt(n + 1, i) < filt(n, j))
                    throw std::invalid_argument("differential lowers the filtration in degree " + std::to_string(n));
    }
}

int FilteredComplex::min_filtration() const {
    int m = 0;
    bool any = false;
    for (const auto& fl : filtration)
        for (int p : fl) {
            m = any ? std::min(m, p) : p;
            any = true;
        }
    return m;
}

int FilteredComplex::max_filtration() const {
    int m = 0;
    for (const auto& fl : filtration)
        for (int p : fl) m = std::max(m, p);
    return m;
}

size_t SpectralPage::dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

bool SpectralPage::differential_vanishes() const {
    for (const auto& [pq, m] : differential)
        if (!m.is_zero()) return false;
    return true;
}

namespace {

// Z_r^{p, n-p} = F^p A^n  intersected with  d^{-1}(F^{p+r} A^{n+1}), as columns in A^n.
Matrix z_space(const FilteredComplex& f, int r, int p, int n) {
    const auto& c = f.complex;
    const size_t dn = c.dim(n);
    std::vector<size_t> cols;
    for (size_t j = 0; j < dn; ++j)
        if (f.filt(n, j) >= p) cols.push_back(j);
    Matrix d = c.diff(n);
    std::vector<size_t> rows;
    for (size_t i = 0; i < c.dim(n + 1); ++i)
        if (f.filt(n + 1, i) < p + r) rows.push_back(i);
    Matrix k = kernel(d.select_rows(rows).select_columns(cols));
    Matrix out(dn, k.cols());
    for (size_t a = 0; a < cols.size(); ++a)
        for (size_t b = 0; b < k.cols(); ++b) out(cols[a], b) = k(a, b);
    return out;
}

struct Piece {
    Matrix denominator;  // basis
    Matrix reps;
};

Piece piece(const FilteredComplex& f, int r, int p, int n) {
    const auto& c = f.complex;
    Matrix z = z_space(f, r, p, n);
    Matrix z_lower = z_space(f, r - 1, p + 1, n);
    Matrix b = c.diff(n - 1) * z_space(f, r - 1, p - r + 1, n - 1);
    Matrix den = column_basis(z_lower.hconcat(b));
    return {den, complement_in(den, z)};
}

}  // namespace

SpectralPage spectral_sheet(const FilteredComplex& f, int r) {
    if (r < 0) throw std::invalid_argument("page index must be >= 0");
    const auto& c = f.complex;
    SpectralPage page;
    page.r = r;
    const int pmin = f.min_filtration(), pmax = f.max_filtration();
    std::map<Bidegree, Piece> pieces;
    for (int n = c.lo(); n <= c.hi(); ++n)
        for (int p = pmin; p <= pmax; ++p) {
            Piece pc = piece(f, r, p, n);
            if (pc.reps.cols() == 0) continue;
            Bidegree pq{p, n - p};
            page.dims[pq] = pc.reps.cols();
            page.representatives[pq] = pc.reps;
            pieces.emplace(pq, std::move(pc));
        }
    for (const auto& [pq, src] : pieces) {
        Bidegree tgt{pq.first + r, pq.second - r + 1};
        auto it = pieces.find(tgt);
        if (it == pieces.end()) continue;
        const int n = pq.first + pq.second;
        const Piece& t = it->second;
        Matrix sys = t.denominator.hconcat(t.reps);
        Matrix image = c.diff(n) * src.reps;
        Matrix dr(t.reps.cols(), src.reps.cols());
        for (size_t j = 0; j < image.cols(); ++j) {
            auto x = solve(sys, image.column(j));
            if (!x) throw std::logic_error("d_r image escapes Z_r of the target");
            for (size_t i = 0; i < t.reps.cols(); ++i) dr(i, j) = (*x)[t.denominator.cols() + i];
        }
        page.differential[pq] = dr;
    }
    return page;
}

SpectralSequence e_infinity(const FilteredComplex& f) {
    SpectralSequence ss;
    const auto& c = f.complex;
    ss.lo = c.lo();
    const int span = f.max_filtration() - f.min_filtration();
    const int last = std::max(span + 1, 2);
    for (int r = 0; r <= last; ++r) ss.pages.push_back(spectral_sheet(f, r));
    ss.e_infinity = ss.pages.back().dims;

    ss.stable_page = last;
    for (int r = last; r >= 0; --r) {
        if (!ss.pages[r].differential_vanishes()) break;
        ss.stable_page = r;
    }
    ss.collapse_page = last;
    for (int r = last; r >= 0; --r) {
        const auto& dims = ss.pages[r].dims;
        bool forced = true;
        for (int rr = r; rr <= last && forced; ++rr)
            for (const auto& [pq, d] : dims) {
                auto it = dims.find({pq.first + rr, pq.second - rr + 1});
                if (it != dims.end() && it->second > 0) {
                    forced = false;
                    break;
                }
            }
        if (!forced) break;
        ss.collapse_page = r;
    }

    Cohomology h = cohomology(c);
    ss.h_dims = h.dims;
    ss.converges = true;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        size_t total = 0;
        for (const auto& [pq, d] : ss.e_infinity)
            if (pq.first + pq.second == n) total += d;
        if (total != h.dim(n)) ss.converges = false;
    }
    return ss;
}

FilteredComplex torus_model() {
    // basis: deg 0 {1}, deg 1 {theta_A, theta_B}, deg 2 {theta_A theta_B}
    CochainComplex c(0, {1, 2, 1}, {Matrix(2, 1), Matrix(1, 2)});
    c.labels = {{"1"}, {"theta_A", "theta_B"}, {"theta_A*theta_B"}};
    return FilteredComplex(c, {{0}, {0, 1}, {1}});
}

std::vector<std::vector<size_t>> subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    if (k > n) return out;
    std::vector<size_t> cur(k);
    for (size_t i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

void require_point(const CourantPresentation& s) {
    if (!s.over_point())
        throw std::invalid_argument("presentation has base coordinates; this complex is only available over a point");
}

std::vector<std::string> subset_labels(const std::vector<std::vector<size_t>>& sets, const std::string& stem,
                                       size_t rank) {
    std::vector<std::string> out;
    for (const auto& s : sets) {
        if (s.empty()) {
            out.push_back("1");
            continue;
        }
        std::string l;
        for (size_t a : s) l += (l.empty() ? "" : "*") + (stem == "xi" ? xi_name(a, rank) : stem + std::to_string(a + 1));
        out.push_back(l);
    }
    return out;
}

}  // namespace

CochainComplex standard_complex(const CourantPresentation& s, int max_degree) {
    require_point(s);
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    DerivedStructure ds(s);
    const auto& ch = ds.chart();
    const size_t n = s.rank;
    const int top = std::min<int>(max_degree, static_cast<int>(n));
    std::vector<std::vector<std::vector<size_t>>> basis;
    std::vector<size_t> dims;
    for (int k = 0; k <= top; ++k) {
        basis.push_back(subsets(n, k));
        dims.push_back(basis.back().size());
    }
    auto monomial_of = [&](const std::vector<size_t>& set) {
        Monomial m(ch.gens()->size(), 0);
        for (size_t a : set) m[ch.xi_index(a)] = 1;
        return m;
    };
    std::vector<Matrix> d;
    for (int k = 0; k < top; ++k) {
        std::map<Monomial, size_t> index;
        for (size_t j = 0; j < basis[k + 1].size(); ++j) index[monomial_of(basis[k + 1][j])] = j;
        Matrix m(dims[k + 1], dims[k]);
        for (size_t j = 0; j < basis[k].size(); ++j) {
            Element img = ds.Q()(Element::term(ch.gens(), monomial_of(basis[k][j]), 1));
            for (const auto& [mono, coef] : img.terms()) m(index.at(mono), j) = coef;
        }
        d.push_back(m);
    }
    CochainComplex c(0, dims, d);
    for (int k = 0; k <= top; ++k) c.labels.push_back(subset_labels(basis[k], "xi", n));
    return c;
}

Matrix metric_power(const CourantPresentation& s, int k) {
    auto sets = subsets(s.rank, static_cast<size_t>(k));
    Matrix t(sets.size(), sets.size());
    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = 0; j < sets.size(); ++j) {
            Matrix minor(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) minor(a, b) = s.metric(sets[j][a], sets[i][b]);
            t(i, j) = determinant(minor);
        }
    return t;
}

CochainComplex naive_complex(const CourantPresentation& s, int max_degree) {
    require_point(s);
    s.validate();
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    const size_t n = s.rank;
    auto ginv = inverse(s.metric);
    // structure constants of e_a . e_b = sum_d K[a][b][d] e_d
    std::vector<std::vector<std::vector<Scalar>>> K(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Scalar v = s.C[a][b][c].constant_term();
                if (v.is_zero()) continue;
                for (size_t e = 0; e < n; ++e) K[a][b][e] += v * (*ginv)(c, e);
            }
    // <e_a, v> for a vector v in the e-basis
    auto pair = [&](size_t a, const std::vector<Scalar>& v) {
        Scalar r = 0;
        for (size_t b = 0; b < n; ++b)
            if (!v[b].is_zero()) r += s.metric(a, b) * v[b];
        return r;
    };
    auto unit = [&](size_t a) {
        std::vector<Scalar> v(n);
        v[a] = 1;
        return v;
    };
    const int top = std::min<int>(max_degree, static_cast<int>(n));
    std::vector<std::vector<std::vector<size_t>>> basis;
    std::vector<size_t> dims;
    for (int k = 0; k <= top; ++k) {
        basis.push_back(subsets(n, k));
        dims.push_back(basis.back().size());
    }
    std::vector<Matrix> d;
    for (int k = 0; k < top; ++k) {
        Matrix w(dims[k + 1], dims[k]);
        for (size_t ja = 0; ja < basis[k].size(); ++ja) {
            const auto& A = basis[k][ja];
            for (size_t jb = 0; jb < basis[k + 1].size(); ++jb) {
                const auto& B = basis[k + 1][jb];
                Scalar total = 0;
                for (int i = 0; i <= k; ++i)
                    for (int j = i + 1; j <= k; ++j) {
                        std::vector<std::vector<Scalar>> args;
                        std::vector<Scalar> br(n);
                        for (size_t e = 0; e < n; ++e) br[e] = K[B[i]][B[j]][e];
                        args.push_back(br);
                        for (int t = 0; t <= k; ++t)
                            if (t != i && t != j) args.push_back(unit(B[t]));
                        Matrix m(k, k);
                        for (int r = 0; r < k; ++r)
                            for (int c2 = 0; c2 < k; ++c2) m(r, c2) = pair(A[r], args[c2]);
                        Scalar val = determinant(m);
                        // positions i, j are 0-based; (-1)^{i+j} is unchanged by the shift
                        if ((i + j) % 2) val = -val;
                        total += val;
                    }
                w(jb, ja) = total;
            }
        }
        auto tinv = inverse(metric_power(s, k + 1));
        d.push_back(*tinv * w);
    }
    CochainComplex c(0, dims, d);
    for (int k = 0; k <= top; ++k) c.labels.push_back(subset_labels(basis[k], "e", n));
    return c;
}

FilteredComplex naive_filtered_complex(const CourantPresentation& s, int max_degree) {
    CochainComplex c = standard_complex(s, max_degree);
    std::vector<std::vector<int>> filt;
    for (int k = c.lo(); k <= c.hi(); ++k) filt.emplace_back(c.dim(k), k);
    return FilteredComplex(c, filt);
}

}  // namespace courant
