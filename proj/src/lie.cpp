#include "courant/lie.hpp"

#include "courant/sections.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace courant {

LieAlgebra LieAlgebra::make(std::vector<std::string> names, Field field) {
    LieAlgebra g;
    g.field = field;
    g.names = std::move(names);
    const size_t n = g.names.size();
    g.f.assign(n, std::vector<Vec>(n, Vec(n)));
    return g;
}

void LieAlgebra::set(size_t a, size_t b, const Vec& v) {
    if (a >= dim() || b >= dim() || v.size() != dim()) throw std::out_of_range("LieAlgebra::set");
    for (size_t c = 0; c < dim(); ++c) {
        if (!in_field(v[c], field)) throw std::invalid_argument("structure constant outside the field");
        f[a][b][c] = v[c];
        f[b][a][c] = -v[c];
    }
    if (a == b && !is_zero_vector(v)) throw std::invalid_argument("[e_a, e_a] must vanish");
}

Vec LieAlgebra::basis(size_t a) const {
    Vec v(dim());
    v[a] = 1;
    return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    const size_t n = dim();
    Vec out(n);
    for (size_t a = 0; a < n; ++a) {
        if (x[a].is_zero()) continue;
        for (size_t b = 0; b < n; ++b) {
            if (y[b].is_zero()) continue;
            Scalar xy = x[a] * y[b];
            for (size_t c = 0; c < n; ++c)
                if (!f[a][b][c].is_zero()) out[c] += xy * f[a][b][c];
        }
    }
    return out;
}

bool LieAlgebra::antisymmetric() const {
    for (size_t a = 0; a < dim(); ++a)
        for (size_t b = 0; b < dim(); ++b)
            for (size_t c = 0; c < dim(); ++c)
                if (f[a][b][c] != -f[b][a][c]) return false;
    return true;
}

std::optional<std::array<size_t, 3>> LieAlgebra::jacobi_failure() const {
    const size_t n = dim();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Vec x = basis(a), y = basis(b), z = basis(c);
                Vec lhs = bracket(x, bracket(y, z));
                Vec r1 = bracket(bracket(x, y), z), r2 = bracket(y, bracket(x, z));
                for (size_t k = 0; k < n; ++k)
                    if (lhs[k] != r1[k] + r2[k]) return std::array<size_t, 3>{a, b, c};
            }
    return std::nullopt;
}

LieAlgebra abelian_lie(size_t n) {
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
    return LieAlgebra::make(names);
}

LieAlgebra so3_lie() {
    auto g = LieAlgebra::make({"e1", "e2", "e3"});
    g.set(0, 1, {0, 0, 1});
    g.set(1, 2, {1, 0, 0});
    g.set(2, 0, {0, 1, 0});
    return g;
}

LieAlgebra sl2_lie() {
    auto g = LieAlgebra::make({"H", "X+", "X-"});
    g.set(0, 1, {0, 2, 0});
    g.set(0, 2, {0, 0, -2});
    g.set(1, 2, {1, 0, 0});
    return g;
}

bool ad_invariant(const LieAlgebra& g, const Matrix& kappa) {
    const size_t n = g.dim();
    if (kappa.rows() != n || kappa.cols() != n) return false;
    // kappa([a,b],c) + kappa(b,[a,c]) = 0
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Scalar v;
                for (size_t k = 0; k < n; ++k) v += g.f[a][b][k] * kappa(k, c) + g.f[a][c][k] * kappa(b, k);
                if (!v.is_zero()) return false;
            }
    return true;
}

bool LieBialgebra::cocycle() const {
    const size_t n = g.dim();
    if (dual.dim() != n) return false;
    // F^{ij}_c f^c_ab = f^i_ak F^{kj}_b + f^j_ak F^{ik}_b - f^i_bk F^{kj}_a - f^j_bk F^{ik}_a
    auto F = [&](size_t i, size_t j, size_t c) -> const Scalar& { return dual.f[i][j][c]; };
    auto fg = [&](size_t c, size_t a, size_t b) -> const Scalar& { return g.f[a][b][c]; };
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    Scalar lhs, rhs;
                    for (size_t c = 0; c < n; ++c) lhs += F(i, j, c) * fg(c, a, b);
                    for (size_t k = 0; k < n; ++k)
                        rhs += fg(i, a, k) * F(k, j, b) + fg(j, a, k) * F(i, k, b) - fg(i, b, k) * F(k, j, a) -
                               fg(j, b, k) * F(i, k, a);
                    if (lhs != rhs) return false;
                }
    return true;
}

LieBialgebra sl2_bialgebra() {
    LieBialgebra b;
    b.g = sl2_lie();
    b.dual = LieAlgebra::make({"H*", "X+*", "X-*"});
    b.dual.set(0, 1, {Scalar::frac(1, 2), 0, 0});
    b.dual.set(2, 1, {0, 0, Scalar::frac(1, 2)});
    return b;
}

CourantPresentation quadratic_lie_algebra(const LieAlgebra& g, const Matrix& kappa) {
    if (!ad_invariant(g, kappa)) throw std::invalid_argument("metric is not ad-invariant");
    const size_t n = g.dim();
    auto s = CourantPresentation::make(g.field, {}, n, kappa);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c) {
                Scalar v;
                for (size_t k = 0; k < n; ++k) v += g.f[a][b][k] * kappa(k, c);
                s.C[a][b][c] = s.constant(v);
            }
    s.validate();
    return s;
}

CourantPresentation alekseev_double(const LieAlgebra& g, const Matrix& kappa) {
    const size_t n = g.dim();
    std::vector<std::string> names;
    for (int copy = 0; copy < 2; ++copy)
        for (const auto& nm : g.names) names.push_back(nm + (copy ? "'" : ""));
    auto gg = LieAlgebra::make(names, g.field);
    Matrix k2(2 * n, 2 * n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            k2(a, b) = kappa(a, b);
            k2(n + a, n + b) = -kappa(a, b);
            Vec v(2 * n), w(2 * n);
            for (size_t c = 0; c < n; ++c) {
                v[c] = g.f[a][b][c];
                w[n + c] = g.f[a][b][c];
            }
            if (a < b) {
                gg.set(a, b, v);
                gg.set(n + a, n + b, w);
            }
        }
    return quadratic_lie_algebra(gg, k2);
}

namespace {

// Bracket table of a bracket on g (+) g* given by its two components, with
// C read off through the pairing a(Y) + b(X).
template <class Bracket>
CourantPresentation double_from(Field field, size_t n, Bracket br) {
    Matrix metric(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i) metric(i, n + i) = metric(n + i, i) = 1;
    auto s = CourantPresentation::make(field, {}, 2 * n, metric);
    for (size_t a = 0; a < 2 * n; ++a)
        for (size_t b = 0; b < 2 * n; ++b) {
            Vec u(2 * n), v(2 * n);
            u[a] = 1;
            v[b] = 1;
            Vec w = br(u, v);  // first n: g, last n: g*
            for (size_t c = 0; c < 2 * n; ++c) s.C[a][b][c] = s.constant(c < n ? w[n + c] : w[c - n]);
        }
    s.validate();
    return s;
}

Vec head(const Vec& v, size_t n) { return Vec(v.begin(), v.begin() + n); }
Vec tail(const Vec& v, size_t n) { return Vec(v.begin() + n, v.end()); }

Scalar dot(const Vec& a, const Vec& b) {
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

}  // namespace

CourantPresentation drinfeld_double(const LieBialgebra& bi) {
    if (!bi.g.is_lie() || !bi.dual.is_lie()) throw std::invalid_argument("bialgebra brackets must be Lie");
    const size_t n = bi.g.dim();
    if (bi.dual.dim() != n) throw std::invalid_argument("dual has the wrong dimension");
    const auto& g = bi.g;
    const auto& d = bi.dual;
    return double_from(g.field, n, [&](const Vec& u, const Vec& v) {
        Vec X = head(u, n), a = tail(u, n), Y = head(v, n), b = tail(v, n);
        Vec out(2 * n);
        Vec XY = g.bracket(X, Y), ab = d.bracket(a, b);
        for (size_t k = 0; k < n; ++k) {
            Vec gam(n), Z(n);
            gam[k] = 1;
            Z[k] = 1;
            out[k] = dot(gam, XY) - dot(d.bracket(a, gam), Y) + dot(d.bracket(b, gam), X);
            out[n + k] = dot(ab, Z) - dot(b, g.bracket(X, Z)) + dot(a, g.bracket(Y, Z));
        }
        return out;
    });
}

namespace {

std::string theta_name(size_t a, size_t n) {
    std::string idx = std::to_string(a + 1);
    size_t width = std::to_string(std::max<size_t>(n, 1)).size();
    while (idx.size() < width) idx = "0" + idx;
    return "th" + idx;
}

Gens theta_gens(const LieAlgebra& g) {
    std::vector<Generator> gs;
    for (size_t a = 0; a < g.dim(); ++a) gs.push_back({theta_name(a, g.dim()), 1});
    return make_gens(gs, g.field);
}

}  // namespace

CEAlgebra::CEAlgebra(const LieAlgebra& g) : theta(theta_gens(g)), d(theta, 1) {
    const size_t n = g.dim();
    for (size_t c = 0; c < n; ++c) {
        Element img(theta);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                if (!g.f[a][b][c].is_zero()) img += form({a, b}, -g.f[a][b][c]);
        d.set(c, img);
    }
}

Element CEAlgebra::form(const std::vector<size_t>& idx, const Scalar& v) const {
    Monomial m(theta->size(), 0);
    for (size_t i : idx) m[i] = 1;
    if (std::adjacent_find(idx.begin(), idx.end(), std::greater_equal<size_t>()) != idx.end())
        throw std::invalid_argument("form indices must increase");
    return Element::term(theta, m, v);
}

Scalar CEAlgebra::eval(const Element& w, const std::vector<size_t>& idx) const {
    std::vector<size_t> s = idx;
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) sign = -sign;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return Scalar(0);
    Monomial m(theta->size(), 0);
    for (size_t i : s) m[i] = 1;
    Scalar v = w.coefficient(m);
    return sign > 0 ? v : -v;
}

Vec CEAlgebra::coordinates(const Element& w, int k) const {
    auto sets = subsets(theta->size(), static_cast<size_t>(k));
    Vec out;
    for (const auto& s : sets) out.push_back(eval(w, s));
    return out;
}

CochainComplex CEAlgebra::complex(int max_degree) const {
    const int top = std::min<int>(max_degree, static_cast<int>(theta->size()));
    std::vector<size_t> dims;
    std::vector<Matrix> ds;
    for (int k = 0; k <= top; ++k) dims.push_back(subsets(theta->size(), k).size());
    for (int k = 0; k < top; ++k) {
        auto src = subsets(theta->size(), k);
        std::vector<Vec> cols;
        for (const auto& s : src) cols.push_back(coordinates(d(form(s, 1)), k + 1));
        ds.push_back(Matrix::from_columns(dims[k + 1], cols));
    }
    return CochainComplex(0, dims, ds);
}

CourantPresentation twisted_dorfman(const LieAlgebra& a, const Element& h3) {
    CEAlgebra ce(a);
    require_same(ce.theta, h3.gens());
    if (!h3.is_zero() && !h3.is_homogeneous_of(3)) throw std::invalid_argument("H must be a 3-form");
    if (!ce.d(h3).is_zero()) throw std::invalid_argument("H is not closed");
    const size_t n = a.dim();
    return double_from(a.field, n, [&](const Vec& u, const Vec& v) {
        Vec X = head(u, n), al = tail(u, n), Y = head(v, n), be = tail(v, n);
        Vec out(2 * n);
        Vec XY = a.bracket(X, Y);
        for (size_t k = 0; k < n; ++k) {
            out[k] = XY[k];
            Vec Z = a.basis(k);
            // L_X b (Z) = -b([X,Z]),  -i_Y d a (Z) = a([Y,Z])
            Scalar h;
            for (size_t i = 0; i < n; ++i) {
                if (X[i].is_zero()) continue;
                for (size_t j = 0; j < n; ++j)
                    if (!Y[j].is_zero()) h += X[i] * Y[j] * ce.eval(h3, {i, j, k});
            }
            out[n + k] = -dot(be, a.bracket(X, Z)) + dot(al, a.bracket(Y, Z)) + h;
        }
        return out;
    });
}

SeveraResult severa_form(const CourantPresentation& e, const LieAlgebra& a, const Matrix& sigma) {
    const size_t n = a.dim();
    if (!e.over_point()) throw std::invalid_argument("severa_form works over a point");
    if (sigma.rows() != e.rank || sigma.cols() != n) throw std::invalid_argument("splitting has the wrong shape");
    CEAlgebra ce(a);
    SeveraResult r{Element(ce.theta), false, false, false, false, ""};
    r.isotropic = (sigma.transpose() * e.metric * sigma).is_zero();
    size_t rk = rank(sigma);
    r.exact = e.rank == 2 * n && rk == n;
    if (rk < n) r.caveat = "splitting has rank " + std::to_string(rk) + " < " + std::to_string(n);
    else if (e.rank != 2 * n) r.caveat = "rank of E is not twice the rank of A";

    SectionCalculus calc(e);
    auto section = [&](size_t i) {
        Section s = e.zero_section();
        for (size_t k = 0; k < e.rank; ++k) s[k] = e.constant(sigma(k, i));
        return s;
    };
    std::vector<std::vector<std::vector<Scalar>>> c(n, std::vector<std::vector<Scalar>>(n, Vec(n)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Section ij = calc.bracket(section(i), section(j));
            for (size_t k = 0; k < n; ++k) c[i][j][k] = calc.pairing(ij, section(k)).constant_term();
        }
    r.antisymmetric = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (c[i][j][k] != -c[j][i][k] || c[i][j][k] != -c[i][k][j]) r.antisymmetric = false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k)
                if (!c[i][j][k].is_zero()) r.form += ce.form({i, j, k}, c[i][j][k]);
    r.closed = ce.d(r.form).is_zero();
    return r;
}

Matrix shifted_splitting(const Matrix& sigma, const CEAlgebra& ce, const Element& b2) {
    const size_t n = ce.theta->size();
    if (sigma.rows() != 2 * n || sigma.cols() != n) throw std::invalid_argument("expected a splitting into A (+) A*");
    Matrix out = sigma;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out(n + j, i) += ce.eval(b2, {i, j});
    return out;
}

Element splitting_change(const CEAlgebra& ce, const Element& c3, const Element& b2) {
    return c3 + ce.d(b2);
}

Vec severa_class(const CEAlgebra& ce, const Element& c3) {
    CochainComplex cx = ce.complex(4);
    Cohomology h = cohomology(cx);
    return cohomology_class(cx, h, 3, ce.coordinates(c3, 3));
}

}  // namespace courant
