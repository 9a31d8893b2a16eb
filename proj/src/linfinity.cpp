#include "courant/linfinity.hpp"

#include "courant/sections.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>

namespace courant {

LInfinityOptions LInfinityOptions::as_printed() {
    LInfinityOptions o;
    o.l2_coeff = Scalar(1);
    o.l3_coeff = Scalar::frac(-1, 3);
    return o;
}

bool LInfinityReport::ok() const {
    for (const auto& i : identities)
        if (!i.ok) return false;
    return true;
}

std::vector<Element> kernel_of_D(const CourantPresentation& s, int deg) {
    const size_t m = s.base_dim();
    std::vector<Element> out;
    out.push_back(s.constant(1));
    if (m == 0 || deg < 1) return out;
    // monomials of degree 1..deg
    std::vector<Monomial> monos;
    std::function<void(size_t, int, Monomial&)> gen = [&](size_t i, int left, Monomial& cur) {
        if (i == m) {
            int total = 0;
            for (int e : cur) total += e;
            if (total >= 1) monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            gen(i + 1, left - e, cur);
        }
        cur[i] = 0;
    };
    Monomial cur(m, 0);
    gen(0, deg, cur);
    SectionCalculus calc(s);
    // rows: (a, monomial of rho(e_a) f)
    std::map<std::pair<size_t, Monomial>, size_t> row;
    std::vector<std::vector<std::pair<size_t, Scalar>>> cols(monos.size());
    for (size_t j = 0; j < monos.size(); ++j) {
        Element f = Element::term(s.base, monos[j], 1);
        for (size_t a = 0; a < s.rank; ++a) {
            Element img = calc.anchor(s.basis_section(a), f);
            for (const auto& [mono, c] : img.terms()) {
                auto key = std::make_pair(a, mono);
                auto it = row.find(key);
                size_t r = it == row.end() ? row.emplace(key, row.size()).first->second : it->second;
                cols[j].push_back({r, c});
            }
        }
    }
    Matrix M(row.size(), monos.size());
    for (size_t j = 0; j < monos.size(); ++j)
        for (const auto& [r, c] : cols[j]) M(r, j) += c;
    Matrix K = kernel(M);
    for (size_t k = 0; k < K.cols(); ++k) {
        Element f(s.base);
        for (size_t j = 0; j < monos.size(); ++j)
            if (!K(j, k).is_zero()) f.add_term(monos[j], K(j, k));
        out.push_back(f);
    }
    return out;
}

namespace {

// A homogeneous element of V: deg 0 carries a section, deg 1 and 2 a function.
struct LElem {
    int deg = 0;
    Section phi;
    std::optional<Element> f;
};

using Opt = std::optional<LElem>;

struct Engine {
    const CourantPresentation& s;
    SectionCalculus calc;
    LInfinityOptions opt;

    Engine(const CourantPresentation& ss, const LInfinityOptions& o) : s(ss), calc(ss), opt(o) {}

    static bool is_zero(const LElem& x) { return x.deg == 0 ? courant::is_zero(x.phi) : x.f->is_zero(); }

    Opt l1(const LElem& x) const {
        if (x.deg == 1) return LElem{0, calc.D(*x.f), std::nullopt};
        if (x.deg == 2) return LElem{1, {}, *x.f};
        return std::nullopt;
    }
    Opt l2(const LElem& x, const LElem& y) const {
        if (x.deg == 0 && y.deg == 0) return LElem{0, calc.skew_bracket(x.phi, y.phi), std::nullopt};
        if (x.deg == 0 && y.deg == 1) return LElem{1, {}, calc.anchor(x.phi, *y.f) * opt.l2_coeff};
        if (x.deg == 1 && y.deg == 0) return LElem{1, {}, calc.anchor(y.phi, *x.f) * (-opt.l2_coeff)};
        return std::nullopt;
    }
    Opt l3(const LElem& x, const LElem& y, const LElem& z) const {
        if (x.deg != 0 || y.deg != 0 || z.deg != 0) return std::nullopt;
        Element c = calc.pairing(calc.skew_bracket(x.phi, y.phi), z.phi) +
                    calc.pairing(calc.skew_bracket(y.phi, z.phi), x.phi) +
                    calc.pairing(calc.skew_bracket(z.phi, x.phi), y.phi);
        return LElem{1, {}, c * opt.l3_coeff};
    }
    Opt apply(const std::vector<LElem>& xs) const {
        switch (xs.size()) {
            case 1: return l1(xs[0]);
            case 2: return l2(xs[0], xs[1]);
            case 3: return l3(xs[0], xs[1], xs[2]);
            default: return std::nullopt;
        }
    }

    // Sum over i+j = n+1 and (i, n-i) unshuffles of
    //   (-1)^{i(j-1)} chi(sigma) l_j(l_i(x_S), x_rest)
    Opt jacobiator(const std::vector<LElem>& xs) const {
        const size_t n = xs.size();
        Opt acc;
        auto add = [&](const LElem& t, int sign) {
            if (!acc) {
                acc = t;
                if (sign < 0) {
                    if (acc->deg == 0) acc->phi = scale(Scalar(-1), acc->phi);
                    else acc->f = -*acc->f;
                }
                return;
            }
            if (acc->deg == 0) acc->phi = sign > 0 ? acc->phi + t.phi : acc->phi - t.phi;
            else *acc->f = sign > 0 ? *acc->f + *t.f : *acc->f - *t.f;
        };
        for (size_t i = 1; i <= n; ++i) {
            const size_t j = n + 1 - i;
            if (i > 3 || j > 3) continue;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (static_cast<size_t>(__builtin_popcount(mask)) != i) continue;
                std::vector<size_t> order;
                for (size_t k = 0; k < n; ++k)
                    if (mask & (1u << k)) order.push_back(k);
                for (size_t k = 0; k < n; ++k)
                    if (!(mask & (1u << k))) order.push_back(k);
                // chi: each inversion swaps x, y with -(-1)^{|x||y|}
                int sign = 1;
                for (size_t a = 0; a < n; ++a)
                    for (size_t b = a + 1; b < n; ++b)
                        if (order[a] > order[b] && (xs[order[a]].deg * xs[order[b]].deg) % 2 == 0) sign = -sign;
                if ((i * (j - 1)) % 2) sign = -sign;
                std::vector<LElem> inner;
                for (size_t k = 0; k < i; ++k) inner.push_back(xs[order[k]]);
                Opt y = apply(inner);
                if (!y) continue;
                std::vector<LElem> outer{*y};
                for (size_t k = i; k < n; ++k) outer.push_back(xs[order[k]]);
                Opt z = apply(outer);
                if (z) add(*z, sign);
            }
        }
        return acc;
    }
};

std::string elem_str(const LElem& x) {
    return x.deg == 0 ? section_str(x.phi) : x.f->str();
}

}  // namespace

LInfinityReport l_infinity_check(const CourantPresentation& s, const LInfinityOptions& opt) {
    s.validate();
    Engine eng(s, opt);
    std::mt19937_64 rng(opt.seed);
    const bool point = s.over_point();
    const int samples = point ? 1 : std::max(1, opt.samples);
    std::vector<Element> v2 = kernel_of_D(s, point ? 0 : opt.kernel_degree);

    LInfinityReport rep;
    for (int n = 1; n <= 4; ++n) rep.identities.push_back({n, true, 0, ""});

    for (int t = 0; t < samples; ++t) {
        // test elements of each degree
        std::vector<std::vector<LElem>> pool(3);
        for (size_t a = 0; a < s.rank; ++a) {
            Element f = point ? s.constant(1) : random_function(rng, s.base, opt.poly_degree);
            pool[0].push_back({0, scale(f, s.basis_section(a)), std::nullopt});
        }
        pool[1].push_back({1, {}, point ? s.constant(1) : random_function(rng, s.base, opt.poly_degree + 1)});
        for (const auto& k : v2) pool[2].push_back({2, {}, k});

        for (int n = 1; n <= 4; ++n) {
            auto& id = rep.identities[n - 1];
            // nondecreasing degree patterns whose output degree lies in V
            std::vector<int> degs(n, 0);
            std::function<void(int, int)> pattern = [&](int pos, int from) {
                if (!id.ok) return;
                if (pos == n) {
                    int total = n - 3;
                    for (int d : degs) total += d;
                    if (total < 0 || total > 2) return;
                    std::vector<LElem> xs(n);
                    std::function<void(int)> pick = [&](int p) {
                        if (!id.ok) return;
                        if (p == n) {
                            ++id.tuples;
                            Opt r = eng.jacobiator(xs);
                            if (r && !Engine::is_zero(*r)) {
                                id.ok = false;
                                std::string w = "inputs";
                                for (const auto& x : xs) w += " [deg " + std::to_string(x.deg) + "] " + elem_str(x);
                                id.witness = w + " residual " + elem_str(*r);
                            }
                            return;
                        }
                        for (const auto& x : pool[degs[p]]) {
                            xs[p] = x;
                            pick(p + 1);
                        }
                    };
                    pick(0);
                    return;
                }
                for (int d = from; d <= 2; ++d) {
                    degs[pos] = d;
                    pattern(pos + 1, d);
                }
            };
            pattern(0, 0);
        }
    }
    return rep;
}

}  // namespace courant
