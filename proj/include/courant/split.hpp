#pragma once

// Cohomology of Courant algebroids with split base from a finite model:
// a free graded-commutative algebra A standing for H_naive, a polynomial
// ring R = F[t_1..t_m] standing for the functions on the transverse factor
// N, and a degree-3 element C of A (x) R.  Everything is computed as
// R-modules: the transgression T3(d/dt_k) = dC/dt_k, the quotients
// A^p (x) R / (T3) and the Killing multivectors S^{q/2}(ker T3).

#include "courant/graded.hpp"
#include "courant/homology.hpp"

#include <map>
#include <string>
#include <vector>

namespace courant {

struct NaiveGenerator {
    std::string name;
    int degree = 1;
};

struct SplitBaseModel {
    Field field = Field::Q;
    std::vector<NaiveGenerator> naive;
    std::vector<std::string> vars;  // t_1..t_m
    Gens gens;                      // naive generators and the vars (degree 0)
    Element severa{make_gens(std::vector<Generator>{})};

    // severa starts at zero.
    static SplitBaseModel make(std::vector<NaiveGenerator> naive, std::vector<std::string> vars,
                               Field field = Field::Q);
    size_t n_vars() const { return vars.size(); }
    Element parse(const std::string& text) const { return parse_element(gens, text); }
    // Generators of positive degree, severa homogeneous of degree 3.
    void validate() const;
};

// Lambda(C, x_2, .., x_r) with deg C = 3, deg x_k = 2k + 1, one variable t,
// severa = C f(t).
SplitBaseModel alekseev_model(size_t r, const std::string& f);

// Monomial basis of A^p, canonical order, rendered as strings.
std::vector<std::string> naive_basis(const SplitBaseModel& m, int p);

struct TransgressionMap {
    std::vector<std::string> rows;                // basis of A^3
    std::vector<std::vector<Element>> columns;    // columns[k][i]: coefficient of rows[i] in T3(d/dt_k)
    bool is_zero() const;
};

TransgressionMap transgression(const SplitBaseModel& m);
// T3 of the vector field sum_k X_k d/dt_k, as an element of A^3 (x) R.
Element transgression_apply(const SplitBaseModel& m, const std::vector<Element>& X);

// An R-module described by its rank over the fraction field and, when
// R is a principal ideal domain, its torsion invariants.
struct ModuleRank {
    size_t rank = 0;
    std::vector<std::string> torsion;  // monic invariant factors of positive degree
    std::string freeness = "free";      // free, torsion or undetermined
};

struct SplitCohomology {
    int max_degree = 0;
    std::vector<ModuleRank> quotient;        // A^p (x) R / (T3), p = 0..max_degree
    size_t kil_rank = 0;                     // rank of ker T3
    std::string kil_freeness = "free";
    std::string kil_locus;                   // where the rank of T3 drops
    std::map<Bidegree, ModuleRank> e4;       // (p, q), q even
    std::vector<ModuleRank> total;           // H^n, n = 0..max_degree
    std::string note;
    std::vector<size_t> ranks() const;
};

SplitCohomology split_cohomology(const SplitBaseModel& m, int max_degree);

struct SheetTables {
    std::map<Bidegree, size_t> e2;      // = E3; ranks over R
    bool e3_equals_e2 = true;           // every odd q entry vanishes
    std::map<Bidegree, ModuleRank> e4;  // = E_infinity
    bool collapse_at_4 = true;          // d_r, r >= 4, vanish on generators for degree reasons
    std::string collapse_reason;
};

SheetTables sheet_tables(const SplitBaseModel& m, int max_degree);

}  // namespace courant
