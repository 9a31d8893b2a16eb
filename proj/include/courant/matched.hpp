#pragma once

// Matched pairs of Courant algebroids: two presentations E1, E2 over the
// same base with an E1-connection on E2 and an E2-connection on E1.

#include "courant/presentation.hpp"
#include "courant/sections.hpp"
#include "courant/standard.hpp"

#include <string>
#include <utility>
#include <vector>

namespace courant {

struct MatchedPair {
    CourantPresentation E1, E2;
    // right[a][al][be]: nabla->_{e_a} eps_al = sum_be right[a][al][be] eps_be
    std::vector<std::vector<std::vector<Element>>> right;
    // left[al][a][b]:  nabla<-_{eps_al} e_a = sum_b left[al][a][b] e_b
    std::vector<std::vector<std::vector<Element>>> left;

    // Zero connections.
    static MatchedPair make(const CourantPresentation& e1, const CourantPresentation& e2);
    size_t n1() const { return E1.rank; }
    size_t n2() const { return E2.rank; }
    // Same base and field, table shapes.
    void validate() const;
};

/// The operations of a matched pair on polynomial sections.
class MatchedCalculus {
public:
    explicit MatchedCalculus(const MatchedPair& mp);

    const MatchedPair& pair() const { return mp_; }
    const SectionCalculus& c1() const { return c1_; }
    const SectionCalculus& c2() const { return c2_; }

    Section right(const Section& a, const Section& beta) const;   // nabla->_a beta in E2
    Section left(const Section& alpha, const Section& b) const;   // nabla<-_alpha b in E1
    Section omega(const Section& a, const Section& b) const;      // in E2
    Section mho(const Section& alpha, const Section& beta) const; // in E1
    Section right_curvature(const Section& a, const Section& b, const Section& alpha) const;
    Section left_curvature(const Section& alpha, const Section& beta, const Section& a) const;

    // The bracket of a+alpha and b+beta on E1 (+) E2 assembled from the two
    // brackets, the connections, Omega, Mho and the D terms.
    std::pair<Section, Section> full_bracket(const Section& a, const Section& alpha, const Section& b,
                                             const Section& beta) const;

private:
    MatchedPair mp_;
    SectionCalculus c1_, c2_;
    Matrix g1inv_, g2inv_;
};

// The matched sum: metric and anchor block-diagonal, bracket from the full
// bracket formula on basis sections; basis e_1..e_n1, eps_1..eps_n2.
CourantPresentation matched_sum(const MatchedPair& mp);

struct MatchedCheck {
    std::string name;
    bool ok = true;
    std::string witness;
    bool uncertain = false;  // reported, not part of the verdict
};

struct MatchedReport {
    std::vector<MatchedCheck> structure;   // E1, E2 Courant; metric preservation; D-annihilation
    std::vector<MatchedCheck> conditions;  // the five Jacobi-equivalent conditions, in order
    std::vector<MatchedCheck> extra;       // anchor compatibility, reported only
    bool structure_ok() const;
    bool conditions_ok() const;
    bool ok() const { return structure_ok() && conditions_ok(); }
    std::string first_failure() const;
};

// Short formula for a condition or structure check name ("curvature" ->
// "R⃗+R⃖=0"); empty for unknown names.
std::string matched_statement(const std::string& name);

MatchedReport verify_matched_pair(const MatchedPair& mp, const VerifyOptions& opt = {});

struct MatchedVerdict {
    bool matched = false;
    bool courant = false;
    bool equivalent() const { return matched == courant; }
    MatchedReport report;
    CourantReport courant_report;
};

MatchedVerdict matched_iff_courant(const MatchedPair& mp, const VerifyOptions& opt = {});

// Re-express a presentation in the constant frame whose columns are M.
CourantPresentation change_frame(const CourantPresentation& s, const Matrix& M);

struct Decomposition {
    MatchedPair pair;
    Matrix frame;          // [P1 | P2], columns in the frame of S
    bool parrot = true;    // (a+0).(0+beta) = -nabla<-_beta a + nabla->_a beta on basis pairs
    std::string witness;
    CourantReport e1_report, e2_report;
};

// Splits S along P1 (columns) and its orthogonal complement.  Throws if
// the metric degenerates on P1.
Decomposition decompose(const CourantPresentation& s, const Matrix& P1, const VerifyOptions& opt = {});

// ((F (+) F*)_H, g) with nabla->_{x+xi} r = nabla_x r and
// nabla<-_r (x+xi) = 2 Q(x, r) + 0.  E1 is ordered xi^1..xi^m, f_1..f_m.
// Throws unless <R,R> = 0 and d_F H = 0.
MatchedPair flat_standard_to_matched(const StandardData& d);

struct MatchedDiracReport {
    bool inputs_dirac = false;
    bool verdict = false;        // connections preserve D1 and D2
    std::string witness;
    bool sum_dirac = false;      // dirac_check of D1 (+) D2 in the matched sum
    bool lie_pair = false;       // matched pair of Lie algebroids (flat, two compatibilities)
    std::string lie_witness;
};

MatchedDiracReport matched_dirac_check(const MatchedPair& mp, const Matrix& D1, const Matrix& D2,
                                       const VerifyOptions& opt = {});

}  // namespace courant
