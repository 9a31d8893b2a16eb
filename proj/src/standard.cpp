#include "courant/standard.hpp"

#include <array>
#include <stdexcept>

namespace courant {

namespace {

using Vecs = std::vector<Element>;
using Cube = std::vector<std::vector<std::vector<Element>>>;

Cube cube(size_t a, size_t b, size_t c, const Element& z) {
    return Cube(a, std::vector<std::vector<Element>>(b, std::vector<Element>(c, z)));
}

}  // namespace

StandardData StandardData::make(Field field, std::vector<std::string> base, size_t m, size_t k) {
    StandardData d;
    d.field = field;
    d.base = base;
    d.m = m;
    d.k = k;
    std::vector<Generator> gs;
    for (const auto& b : base) gs.push_back({b, 0});
    d.gens_ = make_gens(gs, field);
    Element z(d.gens_);
    d.anchor.assign(m, Vecs(base.size(), z));
    d.f_br = cube(m, m, m, z);
    d.kappa = Matrix::identity(k);
    d.g_br = cube(k, k, k, z);
    d.nabla = cube(m, k, k, z);
    d.R = cube(m, m, k, z);
    d.H = cube(m, m, m, z);
    return d;
}

void StandardData::set_f_bracket(size_t i, size_t j, const std::vector<Element>& v) {
    for (size_t l = 0; l < m; ++l) {
        f_br[i][j][l] = v.at(l);
        f_br[j][i][l] = -v.at(l);
    }
}

void StandardData::set_g_bracket(size_t a, size_t b, const std::vector<Element>& v) {
    for (size_t c = 0; c < k; ++c) {
        g_br[a][b][c] = v.at(c);
        g_br[b][a][c] = -v.at(c);
    }
}

void StandardData::set_R(size_t i, size_t j, const std::vector<Element>& v) {
    for (size_t a = 0; a < k; ++a) {
        R[i][j][a] = v.at(a);
        R[j][i][a] = -v.at(a);
    }
}

void StandardData::set_H(size_t i, size_t j, size_t l, const Element& v) {
    H[i][j][l] = v;
    H[j][l][i] = v;
    H[l][i][j] = v;
    H[j][i][l] = -v;
    H[i][l][j] = -v;
    H[l][j][i] = -v;
}

namespace {

// Operations on sections of F (length m) and g (length k).
struct Ops {
    const StandardData& d;
    Element zero;

    explicit Ops(const StandardData& dd) : d(dd), zero(dd.zero()) {}

    Element rho(size_t i, const Element& f) const {
        Element out = zero;
        if (f.is_constant()) return out;
        for (size_t x = 0; x < d.base.size(); ++x)
            if (!d.anchor[i][x].is_zero()) out += d.anchor[i][x] * Derivation::coordinate(d.gens(), x)(f);
        return out;
    }
    Element rho(const Vecs& x, const Element& f) const {
        Element out = zero;
        for (size_t i = 0; i < d.m; ++i)
            if (!x[i].is_zero()) out += x[i] * rho(i, f);
        return out;
    }
    Vecs unit(size_t n, size_t i) const {
        Vecs v(n, zero);
        v[i] = Element::constant(d.gens(), 1);
        return v;
    }
    Vecs add(Vecs a, const Vecs& b, int sign = 1) const {
        for (size_t i = 0; i < a.size(); ++i) a[i] += sign > 0 ? b[i] : -b[i];
        return a;
    }
    // [x, y] on F with the Leibniz rule
    Vecs fbr(const Vecs& x, const Vecs& y) const {
        Vecs out(d.m, zero);
        for (size_t i = 0; i < d.m; ++i)
            for (size_t j = 0; j < d.m; ++j) {
                if (x[i].is_zero() || y[j].is_zero()) continue;
                for (size_t l = 0; l < d.m; ++l)
                    if (!d.f_br[i][j][l].is_zero()) out[l] += x[i] * y[j] * d.f_br[i][j][l];
            }
        for (size_t j = 0; j < d.m; ++j) out[j] += rho(x, y[j]) - rho(y, x[j]);
        return out;
    }
    // pointwise bracket on g
    Vecs gbr(const Vecs& s, const Vecs& t) const {
        Vecs out(d.k, zero);
        for (size_t a = 0; a < d.k; ++a)
            for (size_t b = 0; b < d.k; ++b) {
                if (s[a].is_zero() || t[b].is_zero()) continue;
                for (size_t c = 0; c < d.k; ++c)
                    if (!d.g_br[a][b][c].is_zero()) out[c] += s[a] * t[b] * d.g_br[a][b][c];
            }
        return out;
    }
    Vecs nab(const Vecs& x, const Vecs& s) const {
        Vecs out(d.k, zero);
        for (size_t b = 0; b < d.k; ++b) out[b] += rho(x, s[b]);
        for (size_t i = 0; i < d.m; ++i) {
            if (x[i].is_zero()) continue;
            for (size_t a = 0; a < d.k; ++a) {
                if (s[a].is_zero()) continue;
                for (size_t b = 0; b < d.k; ++b)
                    if (!d.nabla[i][a][b].is_zero()) out[b] += x[i] * s[a] * d.nabla[i][a][b];
            }
        }
        return out;
    }
    Vecs R(const Vecs& x, const Vecs& y) const {
        Vecs out(d.k, zero);
        for (size_t i = 0; i < d.m; ++i)
            for (size_t j = 0; j < d.m; ++j) {
                if (x[i].is_zero() || y[j].is_zero()) continue;
                for (size_t a = 0; a < d.k; ++a)
                    if (!d.R[i][j][a].is_zero()) out[a] += x[i] * y[j] * d.R[i][j][a];
            }
        return out;
    }
    Element H(const Vecs& x, const Vecs& y, const Vecs& z) const {
        Element out = zero;
        for (size_t i = 0; i < d.m; ++i)
            for (size_t j = 0; j < d.m; ++j)
                for (size_t l = 0; l < d.m; ++l)
                    if (!x[i].is_zero() && !y[j].is_zero() && !z[l].is_zero() && !d.H[i][j][l].is_zero())
                        out += x[i] * y[j] * z[l] * d.H[i][j][l];
        return out;
    }
    Element kappa(const Vecs& s, const Vecs& t) const {
        Element out = zero;
        for (size_t a = 0; a < d.k; ++a)
            for (size_t b = 0; b < d.k; ++b)
                if (!d.kappa(a, b).is_zero() && !s[a].is_zero() && !t[b].is_zero())
                    out += s[a] * t[b] * d.kappa(a, b);
        return out;
    }
    Vecs f(size_t i) const { return unit(d.m, i); }
    Vecs r(size_t a) const { return unit(d.k, a); }
};

bool all_zero(const Vecs& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

std::string vec_str(const Vecs& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

void fail(ConditionCheck& c, const std::string& w) {
    if (!c.ok) return;
    c.ok = false;
    c.witness = w;
}

std::string idx(std::initializer_list<size_t> is) {
    std::string s;
    for (size_t i : is) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
    return s;
}

}  // namespace

Element curvature_pairing(const StandardData& d, size_t i, size_t j, size_t k, size_t l) {
    Ops op(d);
    std::array<size_t, 4> x{i, j, k, l}, p{0, 1, 2, 3};
    Element sum = op.zero;
    do {
        int inv = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (p[a] > p[b]) ++inv;
        Element t = op.kappa(op.R(op.f(x[p[0]]), op.f(x[p[1]])), op.R(op.f(x[p[2]]), op.f(x[p[3]])));
        sum += inv % 2 ? -t : t;
    } while (std::next_permutation(p.begin(), p.end()));
    return sum * Scalar::frac(1, 4);
}

Element d_F_H(const StandardData& d, size_t i, size_t j, size_t k, size_t l) {
    Ops op(d);
    std::array<Vecs, 4> x{op.f(i), op.f(j), op.f(k), op.f(l)};
    Element out = op.zero;
    for (int a = 0; a < 4; ++a) {
        std::vector<Vecs> rest;
        for (int b = 0; b < 4; ++b)
            if (b != a) rest.push_back(x[b]);
        Element t = op.rho(x[a], op.H(rest[0], rest[1], rest[2]));
        out += a % 2 ? -t : t;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            std::vector<Vecs> rest;
            for (int c = 0; c < 4; ++c)
                if (c != a && c != b) rest.push_back(x[c]);
            Element t = op.H(op.fbr(x[a], x[b]), rest[0], rest[1]);
            out += (a + b) % 2 ? -t : t;
        }
    return out;
}

bool StandardBuild::ok() const {
    if (!lie_rinehart.ok) return false;
    for (const auto& c : conditions)
        if (!c.ok) return false;
    return true;
}

StandardBuild standard_regular_build(const StandardData& d) {
    const size_t m = d.m, k = d.k, n = 2 * m + k;
    if (d.kappa.rows() != k || d.kappa.cols() != k) throw std::invalid_argument("kappa has the wrong shape");
    Ops op(d);

    // E = F* (+) g (+) F
    auto xi_ix = [&](size_t i) { return i; };
    auto r_ix = [&](size_t a) { return m + a; };
    auto f_ix = [&](size_t i) { return m + k + i; };

    Matrix metric(n, n);
    for (size_t i = 0; i < m; ++i) metric(xi_ix(i), f_ix(i)) = metric(f_ix(i), xi_ix(i)) = Scalar::frac(1, 2);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) metric(r_ix(a), r_ix(b)) = d.kappa(a, b);

    StandardBuild out{CourantPresentation::make(d.field, d.base, n, metric), {}, {}, {"lie_rinehart", true, ""}};
    auto& s = out.presentation;
    s.base = d.gens();
    s.anchor.assign(n, std::vector<Element>(d.base.size(), op.zero));
    s.C.assign(n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, op.zero)));
    for (size_t i = 0; i < m; ++i)
        for (size_t x = 0; x < d.base.size(); ++x) s.anchor[f_ix(i)][x] = d.anchor[i][x];

    auto& T = out.table;
    T.assign(n, std::vector<Section>(n, Section(n, op.zero)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            // f_i . f_j = H(f_i,f_j,.) + R(f_i,f_j) + [f_i,f_j]
            for (size_t l = 0; l < m; ++l) {
                T[f_ix(i)][f_ix(j)][xi_ix(l)] = d.H[i][j][l];
                T[f_ix(i)][f_ix(j)][f_ix(l)] = d.f_br[i][j][l];
            }
            for (size_t a = 0; a < k; ++a) T[f_ix(i)][f_ix(j)][r_ix(a)] = d.R[i][j][a];
            // f_i . xi^j = L_{f_i} xi^j = -sum_l c_il^j xi^l, and xi^j . f_i is its negative
            for (size_t l = 0; l < m; ++l) {
                T[f_ix(i)][xi_ix(j)][xi_ix(l)] = -d.f_br[i][l][j];
                T[xi_ix(j)][f_ix(i)][xi_ix(l)] = d.f_br[i][l][j];
            }
        }
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) {
            // r_a . r_b = P(r_a,r_b) + [r_a,r_b],  <P(r_a,r_b), f_l> = 2 kappa(r_b, nabla_l r_a)
            for (size_t l = 0; l < m; ++l)
                T[r_ix(a)][r_ix(b)][xi_ix(l)] = op.kappa(op.r(b), op.nab(op.f(l), op.r(a))) * Scalar(2);
            for (size_t c = 0; c < k; ++c) T[r_ix(a)][r_ix(b)][r_ix(c)] = d.g_br[a][b][c];
        }
    for (size_t i = 0; i < m; ++i)
        for (size_t a = 0; a < k; ++a) {
            // f_i . r_a = -2 Q(f_i, r_a) + nabla_i r_a,  <Q(x,r), y> = kappa(r, R(x,y))
            Vecs nr = op.nab(op.f(i), op.r(a));
            for (size_t l = 0; l < m; ++l) {
                Element q = op.kappa(op.r(a), op.R(op.f(i), op.f(l)));
                T[f_ix(i)][r_ix(a)][xi_ix(l)] = q * Scalar(-2);
                T[r_ix(a)][f_ix(i)][xi_ix(l)] = q * Scalar(2);
            }
            for (size_t b = 0; b < k; ++b) {
                T[f_ix(i)][r_ix(a)][r_ix(b)] = nr[b];
                T[r_ix(a)][f_ix(i)][r_ix(b)] = -nr[b];
            }
        }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Element v = op.zero;
                for (size_t e = 0; e < n; ++e)
                    if (!metric(e, c).is_zero() && !T[a][b][e].is_zero()) v += T[a][b][e] * metric(e, c);
                s.C[a][b][c] = v;
            }

    // F is a Lie-Rinehart algebra
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            for (size_t x = 0; x < d.base.size(); ++x) {
                Element coord = Element::gen(d.gens(), x);
                Element lhs = op.rho(op.fbr(op.f(i), op.f(j)), coord);
                Element rhs = op.rho(i, op.rho(j, coord)) - op.rho(j, op.rho(i, coord));
                if (lhs != rhs) fail(out.lie_rinehart, "anchor on (" + idx({i, j}) + ")");
            }
            for (size_t l = 0; l < m; ++l) {
                Vecs jac = op.add(op.add(op.fbr(op.f(i), op.fbr(op.f(j), op.f(l))),
                                         op.fbr(op.fbr(op.f(i), op.f(j)), op.f(l)), -1),
                                  op.fbr(op.f(j), op.fbr(op.f(i), op.f(l))), -1);
                if (!all_zero(jac)) fail(out.lie_rinehart, "jacobi on (" + idx({i, j, l}) + ")");
            }
        }

    ConditionCheck c1{"metric_invariance", true, ""}, c2{"bracket_invariance", true, ""},
        c3{"bianchi", true, ""}, c4{"curvature", true, ""}, c5{"dH", true, ""};
    for (size_t i = 0; i < m; ++i)
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b) {
                Element lhs = op.rho(op.f(i), op.kappa(op.r(a), op.r(b)));
                Element rhs = op.kappa(op.nab(op.f(i), op.r(a)), op.r(b)) + op.kappa(op.r(a), op.nab(op.f(i), op.r(b)));
                if (lhs != rhs) fail(c1, "x=f" + idx({i}) + " r,s=" + idx({a, b}) + " residual " + (lhs - rhs).str());
                Vecs l2 = op.nab(op.f(i), op.gbr(op.r(a), op.r(b)));
                Vecs r2 = op.add(op.gbr(op.nab(op.f(i), op.r(a)), op.r(b)), op.gbr(op.r(a), op.nab(op.f(i), op.r(b))));
                Vecs res = op.add(l2, r2, -1);
                if (!all_zero(res)) fail(c2, "x=f" + idx({i}) + " r,s=" + idx({a, b}) + " residual " + vec_str(res));
            }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
            for (size_t l = j + 1; l < m; ++l) {
                std::array<size_t, 3> t{i, j, l};
                Vecs sum(k, op.zero);
                for (int c = 0; c < 3; ++c) {
                    Vecs x = op.f(t[c]), y = op.f(t[(c + 1) % 3]), z = op.f(t[(c + 2) % 3]);
                    sum = op.add(sum, op.nab(x, op.R(y, z)));
                    sum = op.add(sum, op.R(op.fbr(x, y), z), -1);
                }
                if (!all_zero(sum)) fail(c3, "(" + idx({i, j, l}) + ") residual " + vec_str(sum));
            }
            for (size_t a = 0; a < k; ++a) {
                Vecs x = op.f(i), y = op.f(j), r = op.r(a);
                Vecs lhs = op.add(op.add(op.nab(x, op.nab(y, r)), op.nab(y, op.nab(x, r)), -1), op.nab(op.fbr(x, y), r), -1);
                Vecs res = op.add(lhs, op.gbr(op.R(x, y), r), -1);
                if (!all_zero(res)) fail(c4, "x,y=" + idx({i, j}) + " r=" + idx({a}) + " residual " + vec_str(res));
            }
        }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t a = j + 1; a < m; ++a)
                for (size_t b = a + 1; b < m; ++b) {
                    Element res = d_F_H(d, i, j, a, b) - curvature_pairing(d, i, j, a, b);
                    if (!res.is_zero()) fail(c5, "(" + idx({i, j, a, b}) + ") residual " + res.str());
                }
    out.conditions = {c1, c2, c3, c4, c5};
    s.validate();
    return out;
}

}  // namespace courant
