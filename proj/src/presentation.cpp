#include "courant/presentation.hpp"

#include <stdexcept>

namespace courant {

CourantPresentation CourantPresentation::make(Field f, const std::vector<std::string>& base_names, size_t rank,
                                              const Matrix& metric) {
    CourantPresentation s;
    s.field = f;
    std::vector<Generator> gs;
    for (const auto& n : base_names) gs.push_back({n, 0});
    s.base = make_gens(gs, f);
    s.rank = rank;
    s.metric = metric;
    s.anchor.assign(rank, std::vector<Element>(s.base->size(), Element(s.base)));
    s.C.assign(rank, std::vector<std::vector<Element>>(rank, std::vector<Element>(rank, Element(s.base))));
    return s;
}

void CourantPresentation::set_C_antisym(size_t a, size_t b, size_t c, const Element& v) {
    C[a][b][c] = v;
    C[b][c][a] = v;
    C[c][a][b] = v;
    C[b][a][c] = -v;
    C[a][c][b] = -v;
    C[c][b][a] = -v;
}

Section CourantPresentation::basis_section(size_t a) const {
    Section s = zero_section();
    s.at(a) = constant(1);
    return s;
}

void CourantPresentation::validate() const {
    if (!base) throw std::invalid_argument("presentation without base");
    if (base->field() != field) throw std::invalid_argument("base generators use a different field");
    for (size_t i = 0; i < base->size(); ++i)
        if (base->degree(i) != 0) throw std::invalid_argument("base coordinate '" + (*base)[i].name + "' must have degree 0");
    if (metric.rows() != rank || metric.cols() != rank) throw std::invalid_argument("metric must be rank x rank");
    for (size_t a = 0; a < rank; ++a)
        for (size_t b = 0; b < rank; ++b) {
            if (metric(a, b) != metric(b, a)) throw std::invalid_argument("metric is not symmetric");
            if (!in_field(metric(a, b), field)) throw std::invalid_argument("metric entry outside the field");
        }
    if (rank > 0 && determinant(metric).is_zero()) throw std::invalid_argument("metric is degenerate");
    if (anchor.size() != rank) throw std::invalid_argument("anchor has the wrong number of rows");
    for (const auto& row : anchor) {
        if (row.size() != base->size()) throw std::invalid_argument("anchor row has the wrong length");
        for (const auto& e : row) require_same(e.gens(), base);
    }
    if (C.size() != rank) throw std::invalid_argument("C has the wrong shape");
    for (const auto& m : C) {
        if (m.size() != rank) throw std::invalid_argument("C has the wrong shape");
        for (const auto& v : m) {
            if (v.size() != rank) throw std::invalid_argument("C has the wrong shape");
            for (const auto& e : v) require_same(e.gens(), base);
        }
    }
}

bool operator==(const CourantPresentation& a, const CourantPresentation& b) {
    if (a.field != b.field || a.rank != b.rank || !(*a.base == *b.base) || !(a.metric == b.metric)) return false;
    for (size_t x = 0; x < a.rank; ++x) {
        for (size_t i = 0; i < a.base->size(); ++i)
            if (a.anchor[x][i] != b.anchor[x][i].rebase(a.base)) return false;
        for (size_t y = 0; y < a.rank; ++y)
            for (size_t z = 0; z < a.rank; ++z)
                if (a.C[x][y][z] != b.C[x][y][z].rebase(a.base)) return false;
    }
    return true;
}

Section operator+(const Section& a, const Section& b) {
    if (a.size() != b.size()) throw std::invalid_argument("section rank mismatch");
    Section s = a;
    for (size_t i = 0; i < s.size(); ++i) s[i] += b[i];
    return s;
}

Section operator-(const Section& a, const Section& b) {
    if (a.size() != b.size()) throw std::invalid_argument("section rank mismatch");
    Section s = a;
    for (size_t i = 0; i < s.size(); ++i) s[i] -= b[i];
    return s;
}

Section scale(const Element& f, const Section& s) {
    Section r = s;
    for (auto& e : r) e = f * e;
    return r;
}

Section scale(const Scalar& c, const Section& s) {
    Section r = s;
    for (auto& e : r) e *= c;
    return r;
}

bool is_zero(const Section& s) {
    for (const auto& e : s)
        if (!e.is_zero()) return false;
    return true;
}

std::string section_str(const Section& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
    return out + ")";
}

}  // namespace courant
