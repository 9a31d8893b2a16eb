#pragma once

// Lie algebras and bialgebras by structure constants, their
// Chevalley-Eilenberg complexes, and the Courant algebroids over a point
// built from them: quadratic Lie algebras, Drinfeld doubles, twisted
// Dorfman brackets on A (+) A*, and the Severa class of an exact one.

#include "courant/graded.hpp"
#include "courant/homology.hpp"
#include "courant/presentation.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace courant {

using Vec = std::vector<Scalar>;

struct LieAlgebra {
    Field field = Field::Q;
    std::vector<std::string> names;
    std::vector<std::vector<Vec>> f;  // [e_a, e_b] = f[a][b][c] e_c

    static LieAlgebra make(std::vector<std::string> names, Field field = Field::Q);
    size_t dim() const { return names.size(); }
    // Sets [e_a, e_b] = sum v_c e_c and [e_b, e_a] = -that.
    void set(size_t a, size_t b, const Vec& v);
    Vec bracket(const Vec& x, const Vec& y) const;
    Vec basis(size_t a) const;

    bool antisymmetric() const;
    // First triple (a,b,c) where Jacobi fails, if any.
    std::optional<std::array<size_t, 3>> jacobi_failure() const;
    bool is_lie() const { return antisymmetric() && !jacobi_failure(); }
};

LieAlgebra abelian_lie(size_t n);
LieAlgebra so3_lie();
// Basis (H, X+, X-) with [H,X+] = 2X+, [H,X-] = -2X-, [X+,X-] = H.
LieAlgebra sl2_lie();

// Ad-invariance of a symmetric bilinear form.
bool ad_invariant(const LieAlgebra& g, const Matrix& kappa);

/// g together with a Lie bracket on g*, given by dual.f[a][b][c] for
/// [e^a, e^b]_* = sum_c dual.f[a][b][c] e^c.
struct LieBialgebra {
    LieAlgebra g;
    LieAlgebra dual;
    // The cobracket is a 1-cocycle of g with values in Lambda^2 g.
    bool cocycle() const;
    bool is_bialgebra() const { return g.is_lie() && dual.is_lie() && cocycle(); }
};

// The exact sl2 bialgebra of r = H ^ X+: [H*,X+*] = 1/2 H*,
// [X-*,X+*] = 1/2 X-*, [H*,X-*] = 0.
LieBialgebra sl2_bialgebra();

// Over a point: the bracket of g with metric kappa (ad-invariant).
CourantPresentation quadratic_lie_algebra(const LieAlgebra& g, const Matrix& kappa);

// g (+) g with kappa (+) -kappa.
CourantPresentation alekseev_double(const LieAlgebra& g, const Matrix& kappa);

// g (+) g* with the pairing a(Y) + b(X).  The bracket of X+a and Y+b has
// g component  g |-> g([X,Y]) - Y([a,g]_*) + X([b,g]_*)  and
// g* component Z |-> [a,b]_*(Z) - b([X,Z]) + a([Y,Z]).
CourantPresentation drinfeld_double(const LieBialgebra& b);

// The Chevalley-Eilenberg algebra Lambda(theta^1..theta^n) of a Lie
// algebra and its differential d theta^c = -1/2 f^c_ab theta^a theta^b.
struct CEAlgebra {
    Gens theta;
    Derivation d;
    explicit CEAlgebra(const LieAlgebra& g);
    // A k-form with values F(e_i1,...,e_ik) = v for i1<...<ik.
    Element form(const std::vector<size_t>& idx, const Scalar& v) const;
    // Value on basis vectors in any order (antisymmetric).
    Scalar eval(const Element& w, const std::vector<size_t>& idx) const;
    CochainComplex complex(int max_degree) const;
    // Coordinates of a k-form in the lexicographic subset basis.
    Vec coordinates(const Element& w, int k) const;
};

// A (+) A* over a point with <X+a, Y+b> = a(Y) + b(X) and
//   [X+a, Y+b] = [X,Y] + L_X b - i_Y d a + H(X,Y,.)
// Throws unless H is a closed 3-form.
CourantPresentation twisted_dorfman(const LieAlgebra& a, const Element& h3);

struct SeveraResult {
    Element form;           // C_sigma as a 3-form on A
    bool isotropic = false; // sigma(A) is isotropic
    bool exact = false;     // E has rank 2 dim A and sigma is injective
    bool antisymmetric = false;
    bool closed = false;
    std::string caveat;     // set when the rank test is inconclusive
};

// C_sigma(X,Y,Z) = <sigma X . sigma Y, sigma Z> for an exact Courant
// algebroid over a point with E/A* identified by the anchor data of A.
// sigma holds sigma(e_i) as columns in the basis of E.
SeveraResult severa_form(const CourantPresentation& e, const LieAlgebra& a, const Matrix& sigma);

// sigma + B: sigma(X) + B(X,.) in the A* summand of A (+) A*.
Matrix shifted_splitting(const Matrix& sigma, const CEAlgebra& ce, const Element& b2);

// C_{sigma+B} = C_sigma + d_A B.
Element splitting_change(const CEAlgebra& ce, const Element& c3, const Element& b2);

// Class of a closed 3-form in H^3 of the CE complex.
Vec severa_class(const CEAlgebra& ce, const Element& c3);

}  // namespace courant
