#pragma once

// Graded Poisson brackets, the degree-2 symplectic realization of a
// Courant algebroid presentation, and the derived-bracket constructions
// built from its cubic Hamiltonian.

#include "courant/graded.hpp"
#include "courant/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace courant {

/// A bracket of degree d fixed by its values on pairs of generators and
/// extended as a biderivation:
///   {f, gh} = {f,g} h + (-1)^{(|f|+d)|g|} g {f,h}
///   {g, f}  = -(-1)^{(|f|+d)(|g|+d)} {f, g}
class PoissonStructure {
public:
    PoissonStructure(Gens g, int degree);

    const Gens& gens() const { return gens_; }
    int degree() const { return degree_; }

    // Sets {g_i, g_j} and, by antisymmetry, {g_j, g_i}.
    void set(size_t i, size_t j, const Element& value);
    const Element& table(size_t i, size_t j) const { return table_[i][j]; }

    // {f, .} for a homogeneous f, as a derivation of degree |f| + d.
    Derivation hamiltonian_vector_field(const Element& f) const;
    Element bracket(const Element& a, const Element& b) const;

private:
    Gens gens_;
    int degree_;
    std::vector<std::vector<Element>> table_;
    mutable std::vector<std::optional<Derivation>> gen_fields_;
    const Derivation& generator_field(size_t i) const;
};

/// Coordinates x^i (degree 0), xi^a (degree 1), p_i (degree 2) with
/// {p_i, x^j} = delta_ij and {xi^a, xi^b} = g^{ab}.  A section e_a is
/// realized as the linear function g_ab xi^b.
class RealizationChart {
public:
    RealizationChart(const Gens& base, size_t rank, const Matrix& metric);

    const Gens& gens() const { return gens_; }
    const Gens& base() const { return base_; }
    size_t rank() const { return rank_; }
    const Matrix& metric() const { return g_; }
    const Matrix& metric_inverse() const { return ginv_; }
    const PoissonStructure& poisson() const { return *pb_; }

    size_t x_index(size_t i) const { return x_[i]; }
    size_t xi_index(size_t a) const { return xi_[a]; }
    size_t p_index(size_t i) const { return p_[i]; }
    Element x(size_t i) const { return Element::gen(gens_, x_[i]); }
    Element xi(size_t a) const { return Element::gen(gens_, xi_[a]); }
    Element p(size_t i) const { return Element::gen(gens_, p_[i]); }

    Element lift(const Element& base_fn) const;     // base polynomial -> chart
    Element to_base(const Element& chart_fn) const; // degree-0 chart function -> base

    Element section_to_function(const Section& s) const;
    Section function_to_section(const Element& f) const;

private:
    Gens base_;
    Gens gens_;
    size_t rank_;
    Matrix g_, ginv_;
    std::vector<size_t> x_, xi_, p_;
    std::unique_ptr<PoissonStructure> pb_;
};

std::string xi_name(size_t a, size_t rank);  // "xi1", or zero-padded for rank >= 10

/// H = rho^i_a xi^a p_i - 1/6 C_abc xi^a xi^b xi^c on the realization of a
/// presentation, together with the derived operations.
class DerivedStructure {
public:
    explicit DerivedStructure(const CourantPresentation& s);

    const CourantPresentation& presentation() const { return s_; }
    const RealizationChart& chart() const { return chart_; }
    const Element& hamiltonian() const { return h_; }
    const Derivation& Q() const { return q_; }

    Element self_bracket_residual() const;  // {H, H}

    Section bracket(const Section& a, const Section& b) const;  // {{H,a},b}
    Element anchor(const Section& a, const Element& f) const;    // {{a,H},f}
    Element pairing(const Section& a, const Section& b) const;   // {a,b}
    Section D(const Element& f) const;                           // {H,f}

    // Reads C and rho back off H through the derived operations.
    CourantPresentation recover() const;

private:
    CourantPresentation s_;
    RealizationChart chart_;
    Element h_;
    Derivation q_;
};

Element build_hamiltonian(const CourantPresentation& s, const RealizationChart& chart);

}  // namespace courant
