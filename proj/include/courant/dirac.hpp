#pragma once

// Dirac structures given by a constant basis, and the Lie algebra they
// inherit over a point.

#include "courant/lie.hpp"
#include "courant/presentation.hpp"

#include <optional>
#include <string>

namespace courant {

struct DiracReport {
    bool maximal = false;     // dim L = rank E / 2
    bool isotropic = false;
    bool involutive = false;  // L . L lies in L on basis pairs
    std::string witness;
    bool dirac() const { return maximal && isotropic && involutive; }
};

// L holds a basis of the subspace as columns, in the frame of E.
DiracReport dirac_check(const CourantPresentation& s, const Matrix& L);

// Structure constants of the bracket restricted to a Dirac subspace over a
// point, in the basis given by the columns of L.  Throws if L is not Dirac.
LieAlgebra induced_lie_algebra(const CourantPresentation& s, const Matrix& L);

}  // namespace courant
