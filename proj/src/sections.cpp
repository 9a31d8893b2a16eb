#include "courant/sections.hpp"

#include "courant/poisson.hpp"

#include <sstream>
#include <stdexcept>

namespace courant {

SectionCalculus::SectionCalculus(const CourantPresentation& s) : s_(s) {
    s_.validate();
    auto inv = inverse(s_.metric);
    if (!inv) throw std::invalid_argument("metric is degenerate");
    ginv_ = *inv;
    const size_t n = s_.rank;
    table_.assign(n, std::vector<Section>(n, s_.zero_section()));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t d = 0; d < n; ++d) {
                Element v = s_.zero();
                for (size_t c = 0; c < n; ++c)
                    if (!ginv_(c, d).is_zero() && !s_.C[a][b][c].is_zero()) v += s_.C[a][b][c] * ginv_(c, d);
                table_[a][b][d] = v;
            }
}

Element SectionCalculus::partial(size_t i, const Element& f) const {
    return Derivation::coordinate(s_.base, i)(f);
}

Element SectionCalculus::anchor(const Section& a, const Element& f) const {
    Element out = s_.zero();
    if (f.is_constant()) return out;
    for (size_t i = 0; i < s_.base_dim(); ++i) {
        Element df = partial(i, f);
        if (df.is_zero()) continue;
        Element coeff = s_.zero();
        for (size_t k = 0; k < s_.rank; ++k)
            if (!a[k].is_zero() && !s_.anchor[k][i].is_zero()) coeff += a[k] * s_.anchor[k][i];
        if (!coeff.is_zero()) out += coeff * df;
    }
    return out;
}

Element SectionCalculus::pairing(const Section& a, const Section& b) const {
    Element out = s_.zero();
    for (size_t i = 0; i < s_.rank; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < s_.rank; ++j)
            if (!s_.metric(i, j).is_zero() && !b[j].is_zero()) out += (a[i] * b[j]) * s_.metric(i, j);
    }
    return out;
}

Section SectionCalculus::D(const Element& f) const {
    Section out = s_.zero_section();
    if (f.is_constant()) return out;
    std::vector<Element> rf(s_.rank, s_.zero());  // rho(e_b) f
    for (size_t b = 0; b < s_.rank; ++b) rf[b] = anchor(s_.basis_section(b), f);
    for (size_t a = 0; a < s_.rank; ++a)
        for (size_t b = 0; b < s_.rank; ++b)
            if (!ginv_(a, b).is_zero() && !rf[b].is_zero()) out[a] += rf[b] * ginv_(a, b);
    return out;
}

Section SectionCalculus::bracket(const Section& x, const Section& y) const {
    const size_t n = s_.rank;
    Section out = s_.zero_section();
    for (size_t a = 0; a < n; ++a) {
        if (x[a].is_zero()) continue;
        for (size_t b = 0; b < n; ++b) {
            if (y[b].is_zero()) continue;
            Element fg = x[a] * y[b];
            for (size_t d = 0; d < n; ++d)
                if (!table_[a][b][d].is_zero()) out[d] += fg * table_[a][b][d];
        }
    }
    // rho(x) y^b e_b - rho(y) x^a e_a + <e_a, y> D x^a
    for (size_t b = 0; b < n; ++b) out[b] += anchor(x, y[b]);
    for (size_t a = 0; a < n; ++a) {
        out[a] -= anchor(y, x[a]);
        if (x[a].is_constant()) continue;
        Element ea_y = s_.zero();
        for (size_t b = 0; b < n; ++b)
            if (!s_.metric(a, b).is_zero()) ea_y += y[b] * s_.metric(a, b);
        if (!ea_y.is_zero()) out = out + scale(ea_y, D(x[a]));
    }
    return out;
}

Section SectionCalculus::skew_bracket(const Section& a, const Section& b) const {
    return scale(Scalar::frac(1, 2), bracket(a, b) - bracket(b, a));
}

Element random_function(std::mt19937_64& rng, const Gens& base, int deg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    Element out(base);
    const size_t m = base->size();
    if (m == 0) {
        int c = 0;
        while (c == 0) c = coef(rng);
        return Element::constant(base, c);
    }
    // a few random monomials of total degree <= deg
    std::uniform_int_distribution<int> terms(1, 3);
    std::uniform_int_distribution<int> var(0, static_cast<int>(m) - 1);
    std::uniform_int_distribution<int> dd(0, deg);
    int t = terms(rng);
    for (int k = 0; k < t; ++k) {
        Monomial mono(m, 0);
        int d = dd(rng);
        for (int j = 0; j < d; ++j) ++mono[var(rng)];
        int c = coef(rng);
        if (c != 0) out.add_term(mono, c);
    }
    if (out.is_zero()) out = Element::constant(base, 1);
    return out;
}

std::string CourantReport::first_failure() const {
    if (!self_bracket_zero) return "{H,H} = " + self_bracket;
    if (!round_trip) return "round trip through H does not reproduce the presentation";
    for (const auto& a : axioms)
        if (!a.ok) return a.name + ": " + a.witness;
    return "";
}

namespace {

std::string tuple_str(std::initializer_list<size_t> idx) {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (size_t i : idx) {
        os << (first ? "" : ",") << "e" << (i + 1);
        first = false;
    }
    os << ")";
    return os.str();
}

}  // namespace

std::vector<AxiomCheck> check_axioms(const SectionCalculus& calc, const VerifyOptions& opt) {
    const auto& s = calc.presentation();
    const size_t n = s.rank;
    std::mt19937_64 rng(opt.seed);
    auto rf = [&] { return random_function(rng, s.base, opt.poly_degree); };
    const int samples = std::max(1, opt.samples);

    AxiomCheck jac{"jacobi", true, ""}, leib{"leibniz", true, ""}, sym{"symmetric_part", true, ""},
        adinv{"ad_invariance", true, ""};
    auto fail = [](AxiomCheck& c, const std::string& where, const std::string& residual) {
        if (!c.ok) return;
        c.ok = false;
        c.witness = where + " residual " + residual;
    };

    for (int t = 0; t < samples; ++t) {
        for (size_t a = 0; a < n && (jac.ok || leib.ok || sym.ok || adinv.ok); ++a) {
            for (size_t b = 0; b < n; ++b) {
                Element f1 = rf(), f2 = rf(), f3 = rf();
                Section x = scale(f1, s.basis_section(a));
                Section y = scale(f2, s.basis_section(b));
                Section xy = calc.bracket(x, y);
                // x . (f y) = rho(x)f y + f x . y
                if (leib.ok) {
                    Section r = calc.bracket(x, scale(f3, y)) - scale(calc.anchor(x, f3), y) - scale(f3, xy);
                    if (!is_zero(r)) fail(leib, tuple_str({a, b}), section_str(r));
                }
                // u . u = 1/2 D<u,u> for u = x + y
                if (sym.ok && a <= b) {
                    Section u = x + y;
                    Section r = calc.bracket(u, u) - scale(Scalar::frac(1, 2), calc.D(calc.pairing(u, u)));
                    if (!is_zero(r)) fail(sym, tuple_str({a, b}), section_str(r));
                }
                for (size_t c = 0; c < n; ++c) {
                    Section z = scale(f3, s.basis_section(c));
                    if (jac.ok) {
                        Section r = calc.bracket(x, calc.bracket(y, z)) - calc.bracket(xy, z) -
                                    calc.bracket(y, calc.bracket(x, z));
                        if (!is_zero(r)) fail(jac, tuple_str({a, b, c}), section_str(r));
                    }
                    // rho(x)<v,v> = 2<x . v, v> for v = y + z
                    if (adinv.ok && b <= c) {
                        Section v = y + z;
                        Element r = calc.anchor(x, calc.pairing(v, v)) -
                                    calc.pairing(calc.bracket(x, v), v) * Scalar(2);
                        if (!r.is_zero()) fail(adinv, tuple_str({a, b, c}), r.str());
                    }
                }
            }
        }
    }
    return {jac, leib, sym, adinv};
}

CourantReport verify_courant(const CourantPresentation& s, const VerifyOptions& opt) {
    CourantReport rep;
    DerivedStructure ds(s);
    Element hh = ds.self_bracket_residual();
    rep.self_bracket_zero = hh.is_zero();
    rep.self_bracket = hh.str();
    rep.round_trip = ds.recover() == s;
    rep.hamiltonian_verdict = rep.self_bracket_zero && rep.round_trip;

    SectionCalculus calc(s);
    rep.axioms = check_axioms(calc, opt);
    rep.axiom_verdict = true;
    for (const auto& a : rep.axioms) rep.axiom_verdict = rep.axiom_verdict && a.ok;
    rep.agree = rep.axiom_verdict == rep.hamiltonian_verdict;
    return rep;
}

}  // namespace courant
