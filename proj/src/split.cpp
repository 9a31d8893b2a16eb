#include "courant/split.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

namespace courant {

namespace {

// Univariate polynomial, coefficients from low to high degree.
struct UPoly {
    std::vector<Scalar> c;

    UPoly() = default;
    explicit UPoly(std::vector<Scalar> v) : c(std::move(v)) { trim(); }
    static UPoly constant(const Scalar& s) { return UPoly({s}); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    const Scalar& lead() const { return c.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Scalar> r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return UPoly(r);
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Scalar> r(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return UPoly(r);
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> r(a.c.size() + b.c.size() - 1);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return UPoly(r);
    }
    // a = q b + r with deg r < deg b
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        r = a;
        std::vector<Scalar> qc(std::max(0, a.deg() - b.deg() + 1));
        while (!r.is_zero() && r.deg() >= b.deg()) {
            const int s = r.deg() - b.deg();
            Scalar f = r.lead() / b.lead();
            qc[s] += f;
            for (size_t i = 0; i < b.c.size(); ++i) r.c[i + s] -= f * b.c[i];
            r.trim();
        }
        q = UPoly(qc);
    }
    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly m = *this;
        Scalar l = lead();
        for (auto& x : m.c) x /= l;
        return m;
    }
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a.monic();
    }
    std::string str(const std::string& var) const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg(); i >= 0; --i) {
            const Scalar& x = c[i];
            if (x.is_zero()) continue;
            std::string s = x.str();
            bool neg = !s.empty() && s[0] == '-';
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            if (neg) s = s.substr(1);
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            if (mono.empty()) out += s;
            else if (s == "1") out += mono;
            else out += s + "*" + mono;
        }
        return out;
    }
};

using PolyMatrix = std::vector<std::vector<Element>>;  // rows x cols, entries over the vars

struct Diagonal {
    size_t rank = 0;
    std::vector<UPoly> factors;  // invariant factors, monic, divisibility chain
};

// Smith form over F[t] of a rows x cols matrix.
Diagonal smith(std::vector<std::vector<UPoly>> a, size_t rows, size_t cols) {
    Diagonal out;
    std::vector<UPoly> d;
    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest-degree nonzero entry of the remaining block
            int best = -1;
            size_t bi = 0, bj = 0;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (!a[i][j].is_zero() && (best < 0 || a[i][j].deg() < best)) {
                        best = a[i][j].deg();
                        bi = i;
                        bj = j;
                    }
            if (best < 0) goto done;
            std::swap(a[t], a[bi]);
            for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][bj]);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t].is_zero()) continue;
                UPoly q, r;
                UPoly::divmod(a[i][t], a[t][t], q, r);
                for (size_t j = t; j < cols; ++j) a[i][j] = a[i][j] - q * a[t][j];
                if (!r.is_zero()) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j].is_zero()) continue;
                UPoly q, r;
                UPoly::divmod(a[t][j], a[t][t], q, r);
                for (size_t i = t; i < rows; ++i) a[i][j] = a[i][j] - q * a[i][t];
                if (!r.is_zero()) clean = false;
            }
            if (clean) break;
        }
        d.push_back(a[t][t].monic());
    }
done:
    // gcd / lcm exchanges give the divisibility chain
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            UPoly g = UPoly::gcd(d[i], d[j]);
            UPoly q, r;
            UPoly::divmod(d[i] * d[j], g, q, r);
            d[i] = g;
            d[j] = q.monic();
        }
    out.rank = d.size();
    out.factors = d;
    return out;
}

UPoly to_upoly(const Element& e) {
    std::vector<Scalar> c;
    for (const auto& [m, x] : e.terms()) {
        size_t k = m.empty() ? 0 : static_cast<size_t>(m[0]);
        if (c.size() <= k) c.resize(k + 1);
        c[k] += x;
    }
    return UPoly(c);
}

size_t binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    size_t r = 1;
    for (long i = 1; i <= k; ++i) r = r * static_cast<size_t>(n - k + i) / static_cast<size_t>(i);
    return r;
}

// Number of monomials of degree j in k variables.
size_t sym_rank(size_t k, int j) {
    if (j == 0) return 1;
    return binom(static_cast<long>(k) + j - 1, j);
}

class Model {
public:
    explicit Model(const SplitBaseModel& m) : m_(m) {
        m_.validate();
        std::vector<Generator> tg;
        for (const auto& v : m_.vars) tg.push_back({v, 0});
        tgens_ = make_gens(tg, m_.field);
        for (const auto& g : m_.naive) naive_idx_.push_back(m_.gens->index(g.name));
        for (const auto& v : m_.vars) {
            var_idx_.push_back(m_.gens->index(v));
            var_t_.push_back(tgens_->index(v));
        }
    }

    const Gens& tgens() const { return tgens_; }
    size_t m() const { return m_.vars.size(); }

    // Monomials of A^p over the full generator set.
    std::vector<Monomial> basis(int p) const {
        std::vector<Monomial> out;
        Monomial cur(m_.gens->size(), 0);
        std::function<void(size_t, int)> rec = [&](size_t j, int left) {
            if (j == naive_idx_.size()) {
                if (left == 0) out.push_back(cur);
                return;
            }
            const size_t gi = naive_idx_[j];
            const int d = m_.gens->degree(gi);
            const int cap = m_.gens->odd(gi) ? 1 : left / d;
            for (int e = 0; e <= cap && e * d <= left; ++e) {
                cur[gi] = e;
                rec(j + 1, left - e * d);
            }
            cur[gi] = 0;
        };
        if (p >= 0) rec(0, p);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Coordinates of e in A^p (x) R on basis(p); entries over tgens.
    std::vector<Element> coords(const Element& e, const std::vector<Monomial>& basis) const {
        std::vector<Element> out(basis.size(), Element(tgens_));
        for (const auto& [mono, c] : e.terms()) {
            Monomial naive = mono, t(tgens_->size(), 0);
            for (size_t k = 0; k < var_idx_.size(); ++k) {
                t[var_t_[k]] = mono[var_idx_[k]];
                naive[var_idx_[k]] = 0;
            }
            auto it = std::lower_bound(basis.begin(), basis.end(), naive);
            if (it == basis.end() || *it != naive) throw std::logic_error("element outside the expected degree");
            out[static_cast<size_t>(it - basis.begin())].add_term(t, c);
        }
        return out;
    }

    Element tau(size_t k) const { return Derivation::coordinate(m_.gens, var_idx_[k])(m_.severa); }

    // Element over tgens moved back into the full generator set.
    Element lift(const Element& f) const { return f.rebase(m_.gens); }

    std::string var(size_t k) const { return m_.vars[k]; }

private:
    SplitBaseModel m_;
    Gens tgens_;
    std::vector<size_t> naive_idx_, var_idx_, var_t_;
};

std::string mono_name(const GeneratorSet& g, const Monomial& m) {
    std::string s = monomial_str(g, m);
    return s.empty() ? "1" : s;
}

// Rank over the fraction field by evaluation at several integer points.
size_t generic_rank(const PolyMatrix& M, size_t rows, size_t cols, const Gens& tg) {
    if (rows == 0 || cols == 0) return 0;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(-97, 97);
    size_t best = 0;
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::optional<Scalar>> pt(tg->size());
        for (auto& x : pt) x = Scalar(pick(rng));
        Matrix A(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) A(i, j) = M[i][j].substitute(pt).constant_term();
        best = std::max(best, rank(A));
    }
    return best;
}

Element minor(const PolyMatrix& M, const std::vector<size_t>& r, const std::vector<size_t>& c, const Gens& tg) {
    if (r.size() == 1) return M[r[0]][c[0]];
    Element out(tg);
    std::vector<size_t> rest(r.begin() + 1, r.end());
    for (size_t j = 0; j < c.size(); ++j) {
        if (M[r[0]][c[j]].is_zero()) continue;
        std::vector<size_t> cc;
        for (size_t k = 0; k < c.size(); ++k)
            if (k != j) cc.push_back(c[k]);
        Element sub = M[r[0]][c[j]] * minor(M, rest, cc, tg);
        if (j % 2) out -= sub;
        else out += sub;
    }
    return out;
}

// Nonzero r-minors, or nullopt when there are too many to enumerate.
std::optional<std::vector<Element>> minors(const PolyMatrix& M, size_t rows, size_t cols, size_t r, const Gens& tg) {
    if (r == 0) return std::vector<Element>{Element::constant(tg, 1)};
    if (r > 5 || binom(static_cast<long>(rows), static_cast<long>(r)) *
                         binom(static_cast<long>(cols), static_cast<long>(r)) > 2000)
        return std::nullopt;
    std::vector<Element> out;
    for (const auto& rs : subsets(rows, r))
        for (const auto& cs : subsets(cols, r)) {
            Element d = minor(M, rs, cs, tg);
            if (!d.is_zero()) out.push_back(d);
        }
    return out;
}

// The cokernel of M: R^cols -> R^rows.
ModuleRank cokernel(const PolyMatrix& M, size_t rows, size_t cols, const Model& model) {
    ModuleRank out;
    const size_t m = model.m();
    if (m == 0) {
        Matrix A(rows, cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) A(i, j) = M[i][j].constant_term();
        out.rank = rows - (rows && cols ? rank(A) : 0);
        return out;
    }
    if (m == 1) {
        std::vector<std::vector<UPoly>> a(rows, std::vector<UPoly>(cols));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) a[i][j] = to_upoly(M[i][j]);
        Diagonal d = smith(a, rows, cols);
        out.rank = rows - d.rank;
        for (const auto& f : d.factors)
            if (f.deg() > 0) out.torsion.push_back(f.str(model.var(0)));
        if (!out.torsion.empty()) out.freeness = "torsion";
        return out;
    }
    const size_t r = generic_rank(M, rows, cols, model.tgens());
    out.rank = rows - r;
    if (r == 0) return out;
    auto ms = minors(M, rows, cols, r, model.tgens());
    bool unit = false;
    if (ms)
        for (const auto& e : *ms) unit = unit || e.is_constant();
    // a unit r-minor makes the cokernel projective, hence free
    if (!unit) out.freeness = "undetermined";
    return out;
}

ModuleRank combine(const ModuleRank& q, size_t mult, const std::string& kil_freeness, int j) {
    ModuleRank out;
    out.rank = q.rank * mult;
    if (mult == 0) return out;
    for (size_t i = 0; i < mult; ++i) out.torsion.insert(out.torsion.end(), q.torsion.begin(), q.torsion.end());
    out.freeness = q.freeness;
    if (j > 0 && kil_freeness != "free") out.freeness = "undetermined";
    return out;
}

}  // namespace

SplitBaseModel SplitBaseModel::make(std::vector<NaiveGenerator> naive, std::vector<std::string> vars, Field field) {
    SplitBaseModel m;
    m.field = field;
    m.naive = std::move(naive);
    m.vars = std::move(vars);
    std::vector<Generator> gs;
    for (const auto& g : m.naive) {
        if (g.degree < 1) throw std::invalid_argument("naive generator " + g.name + " must have positive degree");
        gs.push_back({g.name, g.degree});
    }
    for (const auto& v : m.vars) gs.push_back({v, 0});
    m.gens = make_gens(gs, field);
    m.severa = Element(m.gens);
    return m;
}

void SplitBaseModel::validate() const {
    if (!gens) throw std::invalid_argument("split-base model has no generators");
    if (gens->size() != naive.size() + vars.size()) throw std::invalid_argument("generator set does not match the model");
    require_same(gens, severa.gens());
    if (!severa.is_zero() && !severa.is_homogeneous_of(3))
        throw std::invalid_argument("severa must be homogeneous of naive degree 3");
}

SplitBaseModel alekseev_model(size_t r, const std::string& f) {
    if (r < 1) throw std::invalid_argument("group rank must be at least 1");
    std::vector<NaiveGenerator> gens{{"C", 3}};
    for (size_t k = 2; k <= r; ++k) gens.push_back({"x" + std::to_string(k), static_cast<int>(2 * k + 1)});
    auto m = SplitBaseModel::make(gens, {"t"});
    Element fe = m.parse(f);
    if (!fe.is_zero() && !fe.is_homogeneous_of(0)) throw std::invalid_argument("f must be a function of t");
    m.severa = Element::gen(m.gens, "C") * fe;
    return m;
}

std::vector<std::string> naive_basis(const SplitBaseModel& m, int p) {
    Model model(m);
    std::vector<std::string> out;
    for (const auto& mono : model.basis(p)) out.push_back(mono_name(*m.gens, mono));
    return out;
}

bool TransgressionMap::is_zero() const {
    for (const auto& col : columns)
        for (const auto& e : col)
            if (!e.is_zero()) return false;
    return true;
}

TransgressionMap transgression(const SplitBaseModel& m) {
    Model model(m);
    TransgressionMap t;
    auto b3 = model.basis(3);
    for (const auto& mono : b3) t.rows.push_back(mono_name(*m.gens, mono));
    for (size_t k = 0; k < model.m(); ++k) t.columns.push_back(model.coords(model.tau(k), b3));
    return t;
}

Element transgression_apply(const SplitBaseModel& m, const std::vector<Element>& X) {
    Model model(m);
    if (X.size() != model.m()) throw std::invalid_argument("vector field has the wrong number of components");
    Element out(m.gens);
    for (size_t k = 0; k < X.size(); ++k) out += model.lift(X[k]) * model.tau(k);
    return out;
}

std::vector<size_t> SplitCohomology::ranks() const {
    std::vector<size_t> out;
    for (const auto& t : total) out.push_back(t.rank);
    return out;
}

SplitCohomology split_cohomology(const SplitBaseModel& m, int max_degree) {
    Model model(m);
    SplitCohomology out;
    out.max_degree = max_degree;
    const size_t nv = model.m();
    std::vector<Element> taus;
    for (size_t k = 0; k < nv; ++k) taus.push_back(model.tau(k));

    // ker T3
    auto b3 = model.basis(3);
    PolyMatrix T(b3.size(), std::vector<Element>(nv, Element(model.tgens())));
    for (size_t k = 0; k < nv; ++k) {
        auto col = model.coords(taus[k], b3);
        for (size_t i = 0; i < b3.size(); ++i) T[i][k] = col[i];
    }
    if (nv == 0) {
        out.kil_rank = 0;
        out.kil_locus = "none";
    } else if (nv == 1) {
        UPoly g;
        for (size_t i = 0; i < b3.size(); ++i) g = UPoly::gcd(g, to_upoly(T[i][0]));
        out.kil_rank = g.is_zero() ? 1 : 0;
        out.kil_locus = g.is_zero() || g.deg() == 0 ? "none" : g.str(model.var(0)) + " = 0";
    } else {
        const size_t r = generic_rank(T, b3.size(), nv, model.tgens());
        out.kil_rank = nv - r;
        if (r > 0 && r < nv) out.kil_freeness = "undetermined";
        auto ms = minors(T, b3.size(), nv, r, model.tgens());
        if (r == 0 || !ms) out.kil_locus = r == 0 ? "none" : "not computed";
        else {
            bool unit = false;
            for (const auto& e : *ms) unit = unit || e.is_constant();
            if (unit) out.kil_locus = "none";
            else {
                out.kil_locus = "common zeros of";
                for (size_t i = 0; i < ms->size() && i < 6; ++i) out.kil_locus += " " + (*ms)[i].str();
            }
        }
    }

    // A^p (x) R / (T3)
    for (int p = 0; p <= max_degree; ++p) {
        auto bp = model.basis(p);
        auto bl = model.basis(p - 3);
        PolyMatrix M(bp.size());
        size_t cols = 0;
        for (size_t k = 0; k < nv; ++k)
            for (const auto& u : bl) {
                if (taus[k].is_zero()) continue;
                Element prod = taus[k] * Element::term(m.gens, u, 1);
                auto c = model.coords(prod, bp);
                for (size_t i = 0; i < bp.size(); ++i) M[i].push_back(c[i]);
                ++cols;
            }
        out.quotient.push_back(cokernel(M, bp.size(), cols, model));
    }

    for (int n = 0; n <= max_degree; ++n) {
        ModuleRank tot;
        for (int q = 0; q <= n; q += 2) {
            const int p = n - q;
            ModuleRank e = combine(out.quotient[p], sym_rank(out.kil_rank, q / 2), out.kil_freeness, q / 2);
            out.e4[{p, q}] = e;
            tot.rank += e.rank;
            tot.torsion.insert(tot.torsion.end(), e.torsion.begin(), e.torsion.end());
            if (e.freeness == "undetermined") tot.freeness = "undetermined";
            else if (e.freeness == "torsion" && tot.freeness == "free") tot.freeness = "torsion";
        }
        out.total.push_back(tot);
    }
    if (nv > 0)
        out.note = "ranks are over the polynomial ring in " + std::to_string(nv) +
                   " variable(s); the q = 0 column keeps that ring as a factor, so a killed class leaves "
                   "R rather than the ground field in degree 0";
    return out;
}

SheetTables sheet_tables(const SplitBaseModel& m, int max_degree) {
    Model model(m);
    SheetTables st;
    const size_t nv = model.m();
    for (int n = 0; n <= max_degree; ++n)
        for (int q = 0; q <= n; ++q) {
            const int p = n - q;
            size_t x = (q % 2) ? 0 : (nv == 0 ? (q == 0 ? 1 : 0) : sym_rank(nv, q / 2));
            st.e2[{p, q}] = model.basis(p).size() * x;
            if (q % 2 && st.e2[{p, q}] != 0) st.e3_equals_e2 = false;
        }
    auto sc = split_cohomology(m, max_degree);
    st.e4 = sc.e4;
    // generators of E4 sit in (deg g, 0) and, when ker T3 != 0, in (0, 2)
    std::vector<Bidegree> gens;
    for (const auto& g : m.naive) gens.push_back({g.degree, 0});
    if (sc.kil_rank > 0) gens.push_back({0, 2});
    for (int r = 4; r <= max_degree + 1 && st.collapse_at_4; ++r)
        for (const auto& [p, q] : gens) {
            const int tq = q - r + 1, tp = p + r;
            if (tq < 0) continue;
            auto it = st.e4.find({tp, tq});
            if (it != st.e4.end() && (it->second.rank > 0 || !it->second.torsion.empty())) {
                st.collapse_at_4 = false;
                st.collapse_reason = "d" + std::to_string(r) + " from (" + std::to_string(p) + "," +
                                     std::to_string(q) + ") has a nonzero target";
                break;
            }
        }
    if (st.collapse_at_4)
        st.collapse_reason = "every d_r with r >= 4 sends the generators (p,0) and (0,2) below q = 0";
    return st;
}

}  // namespace courant
