#pragma once

// Coordinate presentation of a Courant algebroid on a trivial bundle of
// rank n over a polynomial base (possibly a point): constant metric,
// anchor coefficients rho^i_a and structure functions
// C_abc = <e_a . e_b, e_c>.

#include "courant/graded.hpp"
#include "courant/linalg.hpp"

#include <string>
#include <vector>

namespace courant {

// A section s = s^a e_a; the entries are polynomials over the base.
using Section = std::vector<Element>;

struct CourantPresentation {
    Field field = Field::Q;
    Gens base;      // degree-0 generators; their canonical order indexes the anchor
    size_t rank = 0;
    Matrix metric;  // symmetric, nondegenerate, constant
    std::vector<std::vector<Element>> anchor;           // anchor[a][i] = rho^i_a
    std::vector<std::vector<std::vector<Element>>> C;  // C[a][b][c]

    // Zero anchor and zero structure functions.
    static CourantPresentation make(Field f, const std::vector<std::string>& base_names, size_t rank,
                                    const Matrix& metric);

    size_t base_dim() const { return base->size(); }
    bool over_point() const { return base->size() == 0; }

    // Sets C[a][b][c] = v together with the other five permutations (signed).
    void set_C_antisym(size_t a, size_t b, size_t c, const Element& v);

    Element zero() const { return Element(base); }
    Element constant(const Scalar& s) const { return Element::constant(base, s); }
    Section zero_section() const { return Section(rank, zero()); }
    Section basis_section(size_t a) const;

    // Shapes, field membership, symmetric nondegenerate metric.
    void validate() const;
};

bool operator==(const CourantPresentation& a, const CourantPresentation& b);

// Section arithmetic.
Section operator+(const Section& a, const Section& b);
Section operator-(const Section& a, const Section& b);
Section scale(const Element& f, const Section& s);
Section scale(const Scalar& c, const Section& s);
bool is_zero(const Section& s);
std::string section_str(const Section& s);

}  // namespace courant
