#include "courant/dirac.hpp"

#include "courant/sections.hpp"

#include <map>
#include <stdexcept>

namespace courant {

namespace {

Section column_section(const CourantPresentation& s, const Matrix& L, size_t j) {
    Section out = s.zero_section();
    for (size_t k = 0; k < s.rank; ++k) out[k] = s.constant(L(k, j));
    return out;
}

// Splits a polynomial section into its constant coefficient vectors, one
// per monomial.
std::map<Monomial, Vec> by_monomial(const Section& v) {
    std::map<Monomial, Vec> out;
    for (size_t k = 0; k < v.size(); ++k)
        for (const auto& [m, c] : v[k].terms()) {
            auto& col = out[m];
            col.resize(v.size());
            col[k] = c;
        }
    return out;
}

}  // namespace

DiracReport dirac_check(const CourantPresentation& s, const Matrix& L) {
    s.validate();
    if (L.rows() != s.rank) throw std::invalid_argument("subspace basis has the wrong number of rows");
    DiracReport r;
    const size_t d = rank(L);
    r.maximal = 2 * d == s.rank;
    r.isotropic = (L.transpose() * s.metric * L).is_zero();
    if (!r.maximal) r.witness = "dimension " + std::to_string(d) + ", expected " + std::to_string(s.rank / 2);
    else if (!r.isotropic) r.witness = "not isotropic";
    SectionCalculus calc(s);
    r.involutive = true;
    for (size_t i = 0; i < L.cols() && r.involutive; ++i)
        for (size_t j = 0; j < L.cols() && r.involutive; ++j) {
            Section b = calc.bracket(column_section(s, L, i), column_section(s, L, j));
            for (const auto& [m, v] : by_monomial(b))
                if (!solve(L, v)) {
                    r.involutive = false;
                    if (r.witness.empty())
                        r.witness = "bracket of columns " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    " leaves L: " + section_str(b);
                    break;
                }
        }
    return r;
}

LieAlgebra induced_lie_algebra(const CourantPresentation& s, const Matrix& L) {
    if (!s.over_point()) throw std::invalid_argument("induced_lie_algebra works over a point");
    auto rep = dirac_check(s, L);
    if (!rep.dirac()) throw std::invalid_argument("not a Dirac structure: " + rep.witness);
    Matrix B = column_basis(L);
    const size_t d = B.cols();
    std::vector<std::string> names;
    for (size_t i = 0; i < d; ++i) names.push_back("l" + std::to_string(i + 1));
    auto g = LieAlgebra::make(names, s.field);
    SectionCalculus calc(s);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Section b = calc.bracket(column_section(s, B, i), column_section(s, B, j));
            Vec v(s.rank);
            for (size_t k = 0; k < s.rank; ++k) v[k] = b[k].constant_term();
            g.f[i][j] = *solve(B, v);
        }
    return g;
}

}  // namespace courant
