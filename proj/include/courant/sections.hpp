#pragma once

// Courant operations computed directly from a presentation's tables,
// without the symplectic realization, and the two-route verifier.

#include "courant/presentation.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace courant {

/// Bracket, anchor, pairing and D on polynomial sections.  The bracket is
/// the table e_a . e_b = C_ab^d e_d extended by
///   (f e_a) . (g e_b) = f g e_a.e_b + f rho(e_a)[g] e_b - g rho(e_b)[f] e_a + g <e_a,e_b> D f.
class SectionCalculus {
public:
    explicit SectionCalculus(const CourantPresentation& s);

    const CourantPresentation& presentation() const { return s_; }
    size_t rank() const { return s_.rank; }

    Element anchor(const Section& a, const Element& f) const;
    Element pairing(const Section& a, const Section& b) const;
    Section D(const Element& f) const;
    Section bracket(const Section& a, const Section& b) const;
    Section skew_bracket(const Section& a, const Section& b) const;
    const Section& table(size_t a, size_t b) const { return table_[a][b]; }
    Element partial(size_t i, const Element& f) const;  // d f / d x^i

private:
    CourantPresentation s_;
    Matrix ginv_;
    std::vector<std::vector<Section>> table_;
};

struct VerifyOptions {
    int samples = 16;       // random test functions per basis tuple
    int poly_degree = 2;    // degree bound of the test functions
    std::uint64_t seed = 1;
};

// Random polynomial of degree <= deg over the base with small integer
// coefficients; a nonzero constant over a point.
Element random_function(std::mt19937_64& rng, const Gens& base, int deg);

struct AxiomCheck {
    std::string name;
    bool ok = true;
    std::string witness;  // basis tuple and the nonzero residual
};

struct CourantReport {
    // route (i): the Hamiltonian
    bool self_bracket_zero = false;
    std::string self_bracket;  // {H,H}
    bool round_trip = false;   // presentation -> H -> derived operations -> presentation
    bool hamiltonian_verdict = false;
    // route (ii): the axioms on basis tuples with random test functions
    std::vector<AxiomCheck> axioms;  // jacobi, leibniz, symmetric_part, ad_invariance
    bool axiom_verdict = false;
    bool agree = false;
    bool valid() const { return hamiltonian_verdict && axiom_verdict; }
    std::string first_failure() const;
};

CourantReport verify_courant(const CourantPresentation& s, const VerifyOptions& opt = {});

// Just the direct route, for callers that only need the axiom residuals.
std::vector<AxiomCheck> check_axioms(const SectionCalculus& calc, const VerifyOptions& opt);

}  // namespace courant
