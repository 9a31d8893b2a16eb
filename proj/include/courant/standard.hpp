#pragma once

// Standard Courant algebroid structures on F* (+) g (+) F over a
// polynomial base, assembled from a Lie-Rinehart algebra F, a bundle of
// quadratic Lie algebras g, an F-connection on g, a curvature term R and a
// 3-form H.

#include "courant/presentation.hpp"

#include <string>
#include <vector>

namespace courant {

struct StandardData {
    Field field = Field::Q;
    std::vector<std::string> base;
    size_t m = 0;  // rank of F
    size_t k = 0;  // rank of g
    std::vector<std::vector<Element>> anchor;                // [i][x]: rho(f_i) = sum a_ix d/dx
    std::vector<std::vector<std::vector<Element>>> f_br;     // [f_i, f_j] = sum f_br[i][j][l] f_l
    Matrix kappa;                                            // constant metric on g
    std::vector<std::vector<std::vector<Element>>> g_br;     // [r_a, r_b] = sum g_br[a][b][c] r_c
    std::vector<std::vector<std::vector<Element>>> nabla;    // nabla_{f_i} r_a = sum nabla[i][a][b] r_b
    std::vector<std::vector<std::vector<Element>>> R;        // R(f_i, f_j) = sum R[i][j][a] r_a
    std::vector<std::vector<std::vector<Element>>> H;        // H(f_i, f_j, f_l)

    // Everything zero, kappa = identity.
    static StandardData make(Field field, std::vector<std::string> base, size_t m, size_t k);
    Gens gens() const { return gens_; }
    Element zero() const { return Element(gens_); }
    Element poly(const std::string& text) const { return parse_element(gens_, text); }

    void set_f_bracket(size_t i, size_t j, const std::vector<Element>& v);
    void set_g_bracket(size_t a, size_t b, const std::vector<Element>& v);
    void set_R(size_t i, size_t j, const std::vector<Element>& v);
    void set_H(size_t i, size_t j, size_t l, const Element& v);  // all six orderings

private:
    Gens gens_;
};

struct ConditionCheck {
    std::string name;
    bool ok = true;
    std::string witness;
};

// Basis of E ordered as xi^1..xi^m (F*), r_1..r_k (g), f_1..f_m (F).  The
// F* - F pairing is half the duality, which is the normalization under which
// the factor-2 P and Q maps give a Courant algebroid.
struct StandardBuild {
    CourantPresentation presentation;
    std::vector<std::vector<Section>> table;  // e_a . e_b
    std::vector<ConditionCheck> conditions;   // the five compatibility conditions
    ConditionCheck lie_rinehart;              // F itself: anchor morphism and Jacobi
    bool ok() const;
};

StandardBuild standard_regular_build(const StandardData& d);

// <R,R>(f_i,f_j,f_k,f_l) = 1/4 sum_{S_4} sgn kappa(R(.,.), R(.,.))
Element curvature_pairing(const StandardData& d, size_t i, size_t j, size_t k, size_t l);
// (d_F H)(f_i,f_j,f_k,f_l)
Element d_F_H(const StandardData& d, size_t i, size_t j, size_t k, size_t l);

}  // namespace courant
