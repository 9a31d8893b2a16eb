#include "courant/poisson.hpp"

#include <stdexcept>

namespace courant {

namespace {
bool odd_product(long a, long b) { return ((a * b) % 2) != 0; }
}  // namespace

PoissonStructure::PoissonStructure(Gens g, int degree) : gens_(std::move(g)), degree_(degree) {
    const size_t n = gens_->size();
    table_.assign(n, std::vector<Element>(n, Element(gens_)));
    gen_fields_.assign(n, std::nullopt);
}

void PoissonStructure::set(size_t i, size_t j, const Element& value) {
    require_same(gens_, value.gens());
    const int di = gens_->degree(i), dj = gens_->degree(j);
    if (!value.is_homogeneous_of(di + dj + degree_))
        throw std::invalid_argument("bracket value {" + (*gens_)[i].name + "," + (*gens_)[j].name +
                                    "} has the wrong degree");
    Element swapped = odd_product(di + degree_, dj + degree_) ? value : -value;
    if (i == j && swapped != value)
        throw std::invalid_argument("bracket {" + (*gens_)[i].name + "," + (*gens_)[i].name +
                                    "} must vanish by antisymmetry");
    table_[i][j] = value;
    table_[j][i] = swapped;
    gen_fields_[i].reset();
    gen_fields_[j].reset();
}

const Derivation& PoissonStructure::generator_field(size_t i) const {
    if (!gen_fields_[i]) {
        Derivation d(gens_, gens_->degree(i) + degree_);
        for (size_t j = 0; j < gens_->size(); ++j)
            if (!table_[i][j].is_zero()) d.set(j, table_[i][j]);
        gen_fields_[i] = std::move(d);
    }
    return *gen_fields_[i];
}

Derivation PoissonStructure::hamiltonian_vector_field(const Element& f) const {
    require_same(gens_, f.gens());
    auto deg = f.homogeneous_degree();
    if (!deg && !f.is_zero()) throw std::invalid_argument("hamiltonian vector field of an inhomogeneous element");
    const int k = deg.value_or(0);
    Derivation x(gens_, k + degree_);
    if (f.is_zero()) return x;
    for (size_t j = 0; j < gens_->size(); ++j) {
        // {f, g_j} = -(-1)^{(k+d)(|g_j|+d)} {g_j, f}
        Element v = generator_field(j)(f);
        if (v.is_zero()) continue;
        if (!odd_product(k + degree_, gens_->degree(j) + degree_)) v = -v;
        x.set(j, v);
    }
    return x;
}

Element PoissonStructure::bracket(const Element& a, const Element& b) const {
    require_same(gens_, a.gens());
    require_same(gens_, b.gens());
    Element out(gens_);
    for (int d : a.degrees()) out += hamiltonian_vector_field(a.part(d))(b);
    return out;
}

std::string xi_name(size_t a, size_t rank) {
    std::string idx = std::to_string(a + 1);
    size_t width = std::to_string(rank).size();
    while (idx.size() < width) idx = "0" + idx;
    return "xi" + idx;
}

RealizationChart::RealizationChart(const Gens& base, size_t rank, const Matrix& metric)
    : base_(base), rank_(rank), g_(metric) {
    auto inv = inverse(metric);
    if (!inv) throw std::invalid_argument("metric is degenerate");
    ginv_ = *inv;
    std::vector<Generator> gs;
    for (const auto& b : base->generators()) gs.push_back({b.name, 0});
    for (size_t a = 0; a < rank; ++a) gs.push_back({xi_name(a, rank), 1});
    for (const auto& b : base->generators()) gs.push_back({"p_" + b.name, 2});
    gens_ = make_gens(gs, base->field());
    for (const auto& b : base->generators()) {
        x_.push_back(gens_->index(b.name));
        p_.push_back(gens_->index("p_" + b.name));
    }
    for (size_t a = 0; a < rank; ++a) xi_.push_back(gens_->index(xi_name(a, rank)));
    pb_ = std::make_unique<PoissonStructure>(gens_, -2);
    for (size_t i = 0; i < x_.size(); ++i) pb_->set(p_[i], x_[i], Element::constant(gens_, 1));
    for (size_t a = 0; a < rank; ++a)
        for (size_t b = a; b < rank; ++b)
            if (!ginv_(a, b).is_zero()) pb_->set(xi_[a], xi_[b], Element::constant(gens_, ginv_(a, b)));
}

Element RealizationChart::lift(const Element& base_fn) const { return base_fn.rebase(gens_); }

Element RealizationChart::to_base(const Element& chart_fn) const { return chart_fn.rebase(base_); }

Element RealizationChart::section_to_function(const Section& s) const {
    if (s.size() != rank_) throw std::invalid_argument("section has the wrong rank");
    Element f(gens_);
    for (size_t a = 0; a < rank_; ++a) {
        if (s[a].is_zero()) continue;
        Element la = lift(s[a]);
        for (size_t b = 0; b < rank_; ++b)
            if (!g_(a, b).is_zero()) f += la * xi(b) * g_(a, b);
    }
    return f;
}

Section RealizationChart::function_to_section(const Element& f) const {
    std::vector<Element> lower(rank_, Element(base_));
    const size_t n = gens_->size();
    std::vector<int> xi_pos(n, -1);
    for (size_t a = 0; a < rank_; ++a) xi_pos[xi_[a]] = static_cast<int>(a);
    for (const auto& [m, c] : f.terms()) {
        int which = -1;
        Monomial rest = m;
        for (size_t k = 0; k < n; ++k) {
            if (m[k] == 0) continue;
            if (gens_->degree(k) == 0) continue;
            if (xi_pos[k] < 0 || which >= 0) throw std::invalid_argument("function is not linear in the fibre coordinates");
            which = xi_pos[k];
            rest[k] = 0;
        }
        if (which < 0) throw std::invalid_argument("function is not linear in the fibre coordinates");
        lower[which] += to_base(Element::term(gens_, rest, c));
    }
    Section s(rank_, Element(base_));
    for (size_t a = 0; a < rank_; ++a)
        for (size_t b = 0; b < rank_; ++b)
            if (!ginv_(a, b).is_zero() && !lower[b].is_zero()) s[a] += lower[b] * ginv_(a, b);
    return s;
}

Element build_hamiltonian(const CourantPresentation& s, const RealizationChart& chart) {
    Element h(chart.gens());
    for (size_t a = 0; a < s.rank; ++a)
        for (size_t i = 0; i < s.base_dim(); ++i)
            if (!s.anchor[a][i].is_zero()) h += chart.lift(s.anchor[a][i]) * chart.xi(a) * chart.p(i);
    const Scalar sixth = Scalar::frac(-1, 6);
    for (size_t a = 0; a < s.rank; ++a)
        for (size_t b = 0; b < s.rank; ++b)
            for (size_t c = 0; c < s.rank; ++c)
                if (!s.C[a][b][c].is_zero())
                    h += chart.lift(s.C[a][b][c]) * chart.xi(a) * chart.xi(b) * chart.xi(c) * sixth;
    return h;
}

DerivedStructure::DerivedStructure(const CourantPresentation& s)
    : s_(s), chart_((s.validate(), s.base), s.rank, s.metric), h_(build_hamiltonian(s_, chart_)),
      q_(chart_.poisson().hamiltonian_vector_field(h_)) {}

Element DerivedStructure::self_bracket_residual() const { return q_(h_); }

Section DerivedStructure::bracket(const Section& a, const Section& b) const {
    Element qa = q_(chart_.section_to_function(a));
    return chart_.function_to_section(chart_.poisson().bracket(qa, chart_.section_to_function(b)));
}

Element DerivedStructure::anchor(const Section& a, const Element& f) const {
    Element qa = q_(chart_.section_to_function(a));
    return chart_.to_base(chart_.poisson().bracket(qa, chart_.lift(f)));
}

Element DerivedStructure::pairing(const Section& a, const Section& b) const {
    return chart_.to_base(chart_.poisson().bracket(chart_.section_to_function(a), chart_.section_to_function(b)));
}

Section DerivedStructure::D(const Element& f) const { return chart_.function_to_section(q_(chart_.lift(f))); }

CourantPresentation DerivedStructure::recover() const {
    std::vector<std::string> names;
    for (const auto& g : s_.base->generators()) names.push_back(g.name);
    CourantPresentation r = CourantPresentation::make(s_.field, names, s_.rank, s_.metric);
    r.base = s_.base;
    r.anchor.assign(r.rank, std::vector<Element>(r.base->size(), Element(r.base)));
    r.C.assign(r.rank, std::vector<std::vector<Element>>(r.rank, std::vector<Element>(r.rank, Element(r.base))));
    std::vector<Section> e;
    for (size_t a = 0; a < r.rank; ++a) e.push_back(r.basis_section(a));
    for (size_t a = 0; a < r.rank; ++a) {
        for (size_t i = 0; i < r.base_dim(); ++i) r.anchor[a][i] = anchor(e[a], Element::gen(r.base, i));
        for (size_t b = 0; b < r.rank; ++b) {
            Section ab = bracket(e[a], e[b]);
            for (size_t c = 0; c < r.rank; ++c) r.C[a][b][c] = pairing(ab, e[c]);
        }
    }
    return r;
}

}  // namespace courant
