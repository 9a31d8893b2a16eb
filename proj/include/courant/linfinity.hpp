#pragma once

// The three-term L-infinity algebra of a Courant algebroid:
//   V0 = sections, V1 = functions, V2 = ker D,
// V_k sitting in degree -k, with l1 = D on V1 and the inclusion on V2,
// l2 = skew bracket on V0 and c2 rho(phi) f on V0 x V1, and
// l3 = c3 (<[p1,p2],p3> + <[p2,p3],p1> + <[p3,p1],p2>) on V0.
// The generalized Jacobi identities are evaluated for n = 1..4.

#include "courant/presentation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace courant {

struct LInfinityOptions {
    // Coefficients under which the identities hold for the Dorfman
    // conventions used here (e.e = 1/2 D<e,e>, <Df, e> = rho(e) f).
    Scalar l2_coeff = Scalar::frac(1, 2);
    Scalar l3_coeff = Scalar::frac(-1, 6);
    int samples = 2;       // random function multipliers per tuple (over a base)
    int poly_degree = 1;   // degree of those multipliers
    int kernel_degree = 2; // V2 is sampled from ker D in degrees <= this
    std::uint64_t seed = 7;

    // The coefficients exactly as printed: l2(phi,f) = rho(phi) f and
    // l3 = -1/3 (cyclic sum).
    static LInfinityOptions as_printed();
};

struct LInfinityIdentity {
    int n = 0;
    bool ok = true;
    size_t tuples = 0;  // input tuples evaluated
    std::string witness;
};

struct LInfinityReport {
    std::vector<LInfinityIdentity> identities;  // n = 1..4
    bool ok() const;
    bool holds(int n) const { return identities.at(n - 1).ok; }
};

LInfinityReport l_infinity_check(const CourantPresentation& s, const LInfinityOptions& opt = {});

// Basis of the polynomials of degree <= deg annihilated by D.
std::vector<Element> kernel_of_D(const CourantPresentation& s, int deg);

}  // namespace courant
