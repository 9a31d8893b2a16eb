#pragma once

// Finite cochain complexes, their cohomology, filtrations and spectral
// sequences, plus the complexes attached to Courant presentations over a
// point.

#include "courant/linalg.hpp"
#include "courant/presentation.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace courant {

class CochainComplex {
public:
    CochainComplex() = default;
    // d[k] maps degree lo+k to lo+k+1; there are dims.size()-1 of them.
    // Throws unless shapes match and d^2 = 0.
    CochainComplex(int lo, std::vector<size_t> dims, std::vector<Matrix> d);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    size_t dim(int n) const;
    // Differential out of degree n (a zero map at the ends).
    Matrix diff(int n) const;
    const std::vector<size_t>& dims() const { return dims_; }

    std::vector<std::vector<std::string>> labels;  // optional basis names

private:
    int lo_ = 0;
    std::vector<size_t> dims_;
    std::vector<Matrix> d_;
};

struct Cohomology {
    int lo = 0;
    std::vector<size_t> dims;
    std::vector<Matrix> representatives;  // cocycles, one column per class
    std::vector<Matrix> boundaries;       // basis of the image of d
    size_t dim(int n) const;
};

Cohomology cohomology(const CochainComplex& c);

// Coordinates of the class of the cocycle v on the representatives.
// Throws if v is not a cocycle.
std::vector<Scalar> cohomology_class(const CochainComplex& c, const Cohomology& h, int n, const std::vector<Scalar>& v);

using Bidegree = std::pair<int, int>;  // (p, q)

/// A complex whose basis vectors carry filtration indices p >= 0; F^p is
/// spanned by the basis vectors of index >= p and d(F^p) lies in F^p.
struct FilteredComplex {
    CochainComplex complex;
    std::vector<std::vector<int>> filtration;  // per degree, per basis vector

    FilteredComplex() = default;
    FilteredComplex(CochainComplex c, std::vector<std::vector<int>> filt);
    int filt(int n, size_t j) const { return filtration[n - complex.lo()][j]; }
    int min_filtration() const;
    int max_filtration() const;
};

struct SpectralPage {
    int r = 0;
    std::map<Bidegree, size_t> dims;
    std::map<Bidegree, Matrix> representatives;  // columns in A^{p+q}
    // d_r out of (p,q), as a matrix on representative coordinates, into
    // (p+r, q-r+1).  Present only when both ends are nonzero.
    std::map<Bidegree, Matrix> differential;
    size_t dim(int p, int q) const;
    bool differential_vanishes() const;
};

SpectralPage spectral_sheet(const FilteredComplex& f, int r);

struct SpectralSequence {
    std::vector<SpectralPage> pages;  // pages[r] = E_r, up to the stable page
    std::map<Bidegree, size_t> e_infinity;
    std::vector<size_t> h_dims;  // indexed from complex.lo()
    int lo = 0;
    // First page from which every later differential vanishes because its
    // source or its target is zero.
    int collapse_page = 0;
    // First page from which every later differential is the zero map.
    int stable_page = 0;
    bool converges = false;  // sum over p+q=n of dim E_inf = dim H^n for all n
};

SpectralSequence e_infinity(const FilteredComplex& f);

// Lambda(theta_A) (x) Lambda(theta_B) with zero differential, filtered by
// the theta_B degree.
FilteredComplex torus_model();

// The complex (C(E[1]), Q) for a presentation over a point, in the monomial
// basis of the exterior algebra, degrees 0..max_degree.
CochainComplex standard_complex(const CourantPresentation& s, int max_degree);

// Cartan-formula complex on sections of Lambda E with zero anchor, in the
// basis e_{a1} ^ ... ^ e_{ak}.
CochainComplex naive_complex(const CourantPresentation& s, int max_degree);

// Change of basis Lambda^k E -> Lambda^k E* given by the metric; the naive
// and standard differentials satisfy T_{k+1} N_k = S_k T_k.
Matrix metric_power(const CourantPresentation& s, int k);

// Standard complex filtered by exterior degree (the naive ideal over a point).
FilteredComplex naive_filtered_complex(const CourantPresentation& s, int max_degree);

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<size_t>> subsets(size_t n, size_t k);

}  // namespace courant
