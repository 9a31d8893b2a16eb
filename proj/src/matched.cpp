#include "courant/matched.hpp"

#include "courant/dirac.hpp"

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace courant {

namespace {

using Table3 = std::vector<std::vector<std::vector<Element>>>;

Table3 zero_table(size_t a, size_t b, size_t c, const Gens& g) {
    return Table3(a, std::vector<std::vector<Element>>(b, std::vector<Element>(c, Element(g))));
}

std::string idx(const char* p, size_t i) { return std::string(p) + std::to_string(i + 1); }

// Sections with a polynomial multiplier on one basis vector.
Section times_basis(const CourantPresentation& s, const Element& f, size_t a) {
    Section out = s.zero_section();
    out[a] = f;
    return out;
}

Section column_section(const CourantPresentation& s, const Matrix& L, size_t j) {
    Section out = s.zero_section();
    for (size_t k = 0; k < s.rank; ++k) out[k] = s.constant(L(k, j));
    return out;
}

// Every monomial coefficient vector of v lies in the column span of L.
bool in_span(const Matrix& L, const Section& v) {
    std::map<Monomial, Vec> cols;
    for (size_t k = 0; k < v.size(); ++k)
        for (const auto& [m, c] : v[k].terms()) {
            auto& col = cols[m];
            col.resize(v.size());
            col[k] = c;
        }
    for (const auto& [m, col] : cols)
        if (!solve(L, col)) return false;
    return true;
}

}  // namespace

MatchedPair MatchedPair::make(const CourantPresentation& e1, const CourantPresentation& e2) {
    MatchedPair mp;
    mp.E1 = e1;
    mp.E2 = e2;
    require_same(e1.base, e2.base);
    mp.right = zero_table(e1.rank, e2.rank, e2.rank, e1.base);
    mp.left = zero_table(e2.rank, e1.rank, e1.rank, e1.base);
    return mp;
}

void MatchedPair::validate() const {
    E1.validate();
    E2.validate();
    require_same(E1.base, E2.base);
    if (E1.field != E2.field) throw std::invalid_argument("matched pair over two different fields");
    auto shape = [](const Table3& t, size_t a, size_t b, size_t c, const char* what) {
        bool ok = t.size() == a;
        for (const auto& r : t) {
            ok = ok && r.size() == b;
            for (const auto& q : r) ok = ok && q.size() == c;
        }
        if (!ok) throw std::invalid_argument(std::string(what) + " connection table has the wrong shape");
    };
    shape(right, n1(), n2(), n2(), "right");
    shape(left, n2(), n1(), n1(), "left");
}

MatchedCalculus::MatchedCalculus(const MatchedPair& mp) : mp_(mp), c1_(mp.E1), c2_(mp.E2) {
    mp_.validate();
    g1inv_ = *inverse(mp_.E1.metric);
    g2inv_ = *inverse(mp_.E2.metric);
}

Section MatchedCalculus::right(const Section& a, const Section& beta) const {
    const size_t n1 = mp_.n1(), n2 = mp_.n2();
    Section out = mp_.E2.zero_section();
    for (size_t g = 0; g < n2; ++g) out[g] = c1_.anchor(a, beta[g]);
    for (size_t i = 0; i < n1; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t al = 0; al < n2; ++al) {
            if (beta[al].is_zero()) continue;
            Element ab = a[i] * beta[al];
            for (size_t g = 0; g < n2; ++g)
                if (!mp_.right[i][al][g].is_zero()) out[g] += ab * mp_.right[i][al][g];
        }
    }
    return out;
}

Section MatchedCalculus::left(const Section& alpha, const Section& b) const {
    const size_t n1 = mp_.n1(), n2 = mp_.n2();
    Section out = mp_.E1.zero_section();
    for (size_t c = 0; c < n1; ++c) out[c] = c2_.anchor(alpha, b[c]);
    for (size_t al = 0; al < n2; ++al) {
        if (alpha[al].is_zero()) continue;
        for (size_t i = 0; i < n1; ++i) {
            if (b[i].is_zero()) continue;
            Element ab = alpha[al] * b[i];
            for (size_t c = 0; c < n1; ++c)
                if (!mp_.left[al][i][c].is_zero()) out[c] += ab * mp_.left[al][i][c];
        }
    }
    return out;
}

// <gamma, Omega(a,b)>_2 = 1/2 (<nabla<-_gamma a, b>_1 - <a, nabla<-_gamma b>_1)
Section MatchedCalculus::omega(const Section& a, const Section& b) const {
    const size_t n2 = mp_.n2();
    std::vector<Element> v(n2, mp_.E2.zero());
    for (size_t k = 0; k < n2; ++k) {
        Section g = mp_.E2.basis_section(k);
        v[k] = (c1_.pairing(left(g, a), b) - c1_.pairing(a, left(g, b))) * Scalar::frac(1, 2);
    }
    Section out = mp_.E2.zero_section();
    for (size_t be = 0; be < n2; ++be)
        for (size_t k = 0; k < n2; ++k)
            if (!g2inv_(be, k).is_zero() && !v[k].is_zero()) out[be] += v[k] * g2inv_(be, k);
    return out;
}

// <c, Mho(alpha,beta)>_1 = 1/2 (<nabla->_c alpha, beta>_2 - <alpha, nabla->_c beta>_2)
Section MatchedCalculus::mho(const Section& alpha, const Section& beta) const {
    const size_t n1 = mp_.n1();
    std::vector<Element> w(n1, mp_.E1.zero());
    for (size_t k = 0; k < n1; ++k) {
        Section c = mp_.E1.basis_section(k);
        w[k] = (c2_.pairing(right(c, alpha), beta) - c2_.pairing(alpha, right(c, beta))) * Scalar::frac(1, 2);
    }
    Section out = mp_.E1.zero_section();
    for (size_t i = 0; i < n1; ++i)
        for (size_t k = 0; k < n1; ++k)
            if (!g1inv_(i, k).is_zero() && !w[k].is_zero()) out[i] += w[k] * g1inv_(i, k);
    return out;
}

Section MatchedCalculus::right_curvature(const Section& a, const Section& b, const Section& alpha) const {
    return right(a, right(b, alpha)) - right(b, right(a, alpha)) - right(c1_.bracket(a, b), alpha);
}

Section MatchedCalculus::left_curvature(const Section& alpha, const Section& beta, const Section& a) const {
    return left(alpha, left(beta, a)) - left(beta, left(alpha, a)) - left(c2_.bracket(alpha, beta), a);
}

std::pair<Section, Section> MatchedCalculus::full_bracket(const Section& a, const Section& alpha, const Section& b,
                                                          const Section& beta) const {
    const Scalar half = Scalar::frac(1, 2);
    Section first = c1_.bracket(a, b) + left(alpha, b) - left(beta, a) + mho(alpha, beta) +
                    scale(half, c1_.D(c2_.pairing(alpha, beta)));
    Section second = c2_.bracket(alpha, beta) + right(a, beta) - right(b, alpha) + omega(a, b) +
                     scale(half, c2_.D(c1_.pairing(a, b)));
    return {first, second};
}

CourantPresentation matched_sum(const MatchedPair& mp) {
    MatchedCalculus mc(mp);
    const size_t n1 = mp.n1(), n2 = mp.n2(), n = n1 + n2;
    Matrix g(n, n);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < n1; ++j) g(i, j) = mp.E1.metric(i, j);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < n2; ++j) g(n1 + i, n1 + j) = mp.E2.metric(i, j);

    CourantPresentation s;
    s.field = mp.E1.field;
    s.base = mp.E1.base;
    s.rank = n;
    s.metric = g;
    s.anchor = mp.E1.anchor;
    for (const auto& row : mp.E2.anchor) s.anchor.push_back(row);

    // basis section of the sum split into its two halves
    auto halves = [&](size_t A) {
        Section x = mp.E1.zero_section(), y = mp.E2.zero_section();
        if (A < n1) x[A] = mp.E1.constant(1);
        else y[A - n1] = mp.E2.constant(1);
        return std::make_pair(x, y);
    };
    s.C = zero_table(n, n, n, s.base);
    for (size_t A = 0; A < n; ++A) {
        auto [a, alpha] = halves(A);
        for (size_t B = 0; B < n; ++B) {
            auto [b, beta] = halves(B);
            auto [p1, p2] = mc.full_bracket(a, alpha, b, beta);
            Section whole = p1;
            whole.insert(whole.end(), p2.begin(), p2.end());
            for (size_t Cc = 0; Cc < n; ++Cc) {
                Element v = s.zero();
                for (size_t D = 0; D < n; ++D)
                    if (!g(D, Cc).is_zero() && !whole[D].is_zero()) v += whole[D] * g(D, Cc);
                s.C[A][B][Cc] = v;
            }
        }
    }
    return s;
}

bool MatchedReport::structure_ok() const {
    for (const auto& c : structure)
        if (!c.ok) return false;
    return true;
}

bool MatchedReport::conditions_ok() const {
    for (const auto& c : conditions)
        if (!c.ok) return false;
    return true;
}

std::string MatchedReport::first_failure() const {
    for (const auto* list : {&structure, &conditions})
        for (const auto& c : *list)
            if (!c.ok) return c.name + ": " + c.witness;
    return "";
}

std::string matched_statement(const std::string& name) {
    static const std::map<std::string, std::string> table{
        {"E1 courant", "E1 is Courant"},
        {"E2 courant", "E2 is Courant"},
        {"right metric", "∇⃗ preserves ⟨,⟩₂"},
        {"left metric", "∇⃖ preserves ⟨,⟩₁"},
        {"right kills D", "∇⃗_{𝔇₁f} = 0"},
        {"left kills D", "∇⃖_{𝔇₂f} = 0"},
        {"left derivation", "∇⃖ derives ⋄₁ up to ℧(α,Ω)"},
        {"right derivation", "∇⃗ derives ⋄₂ up to Ω(a,℧)"},
        {"curvature", "R⃗+R⃖=0"},
        {"omega cycle", "Σcyc ∇⃖_{Ω(a1,a2)}a3 = 0"},
        {"mho cycle", "Σcyc ∇⃗_{℧(α1,α2)}α3 = 0"},
        {"anchor compatibility", "ρ₂∇⃗_aβ − ρ₁∇⃖_βa = [ρ₁a,ρ₂β]"},
    };
    auto it = table.find(name);
    return it == table.end() ? std::string() : it->second;
}

MatchedReport verify_matched_pair(const MatchedPair& mp, const VerifyOptions& opt) {
    MatchedCalculus mc(mp);
    const auto& E1 = mp.E1;
    const auto& E2 = mp.E2;
    const size_t n1 = mp.n1(), n2 = mp.n2();
    const Scalar half = Scalar::frac(1, 2);
    MatchedReport rep;

    auto fail = [](MatchedCheck& c, const std::string& w) {
        if (!c.ok) return;
        c.ok = false;
        c.witness = w;
    };

    // structure
    {
        MatchedCheck c1{"E1 courant", true, "", false}, c2{"E2 courant", true, "", false};
        auto r1 = verify_courant(E1, opt);
        auto r2 = verify_courant(E2, opt);
        if (!r1.valid()) fail(c1, r1.first_failure());
        if (!r2.valid()) fail(c2, r2.first_failure());
        rep.structure.push_back(c1);
        rep.structure.push_back(c2);

        MatchedCheck mr{"right metric", true, "", false}, ml{"left metric", true, "", false};
        for (size_t i = 0; i < n1; ++i)
            for (size_t al = 0; al < n2; ++al)
                for (size_t be = 0; be < n2; ++be) {
                    Element v = E1.zero();
                    for (size_t g = 0; g < n2; ++g)
                        v += mp.right[i][al][g] * E2.metric(g, be) + mp.right[i][be][g] * E2.metric(al, g);
                    if (!v.is_zero())
                        fail(mr, "<nabla->_" + idx("e", i) + " " + idx("eps", al) + ", " + idx("eps", be) +
                                     "> + <.,.> = " + v.str());
                }
        for (size_t al = 0; al < n2; ++al)
            for (size_t i = 0; i < n1; ++i)
                for (size_t j = 0; j < n1; ++j) {
                    Element v = E1.zero();
                    for (size_t g = 0; g < n1; ++g)
                        v += mp.left[al][i][g] * E1.metric(g, j) + mp.left[al][j][g] * E1.metric(i, g);
                    if (!v.is_zero())
                        fail(ml, "<nabla<-_" + idx("eps", al) + " " + idx("e", i) + ", " + idx("e", j) +
                                     "> + <.,.> = " + v.str());
                }
        rep.structure.push_back(mr);
        rep.structure.push_back(ml);

        // nabla->_{D1 f} = 0 and nabla<-_{D2 f} = 0, one base direction at a time
        MatchedCheck er{"right kills D", true, "", false}, el{"left kills D", true, "", false};
        Matrix g1inv = *inverse(E1.metric), g2inv = *inverse(E2.metric);
        for (size_t x = 0; x < E1.base_dim(); ++x) {
            std::vector<Element> d1(n1, E1.zero()), d2(n2, E2.zero());  // components of D(x)
            for (size_t i = 0; i < n1; ++i)
                for (size_t j = 0; j < n1; ++j)
                    if (!g1inv(i, j).is_zero()) d1[i] += E1.anchor[j][x] * g1inv(i, j);
            for (size_t i = 0; i < n2; ++i)
                for (size_t j = 0; j < n2; ++j)
                    if (!g2inv(i, j).is_zero()) d2[i] += E2.anchor[j][x] * g2inv(i, j);
            for (size_t al = 0; al < n2; ++al)
                for (size_t g = 0; g < n2; ++g) {
                    Element v = E1.zero();
                    for (size_t i = 0; i < n1; ++i) v += d1[i] * mp.right[i][al][g];
                    if (!v.is_zero()) fail(er, "direction " + (*E1.base)[x].name + ", " + idx("eps", al) + ": " + v.str());
                }
            for (size_t i = 0; i < n1; ++i)
                for (size_t c = 0; c < n1; ++c) {
                    Element v = E1.zero();
                    for (size_t al = 0; al < n2; ++al) v += d2[al] * mp.left[al][i][c];
                    if (!v.is_zero()) fail(el, "direction " + (*E1.base)[x].name + ", " + idx("e", i) + ": " + v.str());
                }
        }
        rep.structure.push_back(er);
        rep.structure.push_back(el);
    }

    const auto& c1 = mc.c1();
    const auto& c2 = mc.c2();
    std::mt19937_64 rng(opt.seed);
    const bool point = E1.over_point();
    const int samples = point ? 1 : std::max(1, opt.samples);
    auto rf = [&] { return random_function(rng, E1.base, opt.poly_degree); };

    MatchedCheck d1{"left derivation", true, "", false}, d2{"right derivation", true, "", false},
        cc{"curvature", true, "", false}, n4x{"omega cycle", true, "", false}, n4y{"mho cycle", true, "", false};
    MatchedCheck anc{"anchor compatibility", true, "", true};

    for (int t = 0; t < samples; ++t) {
        // left derivation over (alpha, a1, a2)
        for (size_t al = 0; al < n2 && d1.ok; ++al)
            for (size_t i = 0; i < n1 && d1.ok; ++i)
                for (size_t j = 0; j < n1 && d1.ok; ++j) {
                    Section alpha = times_basis(E2, rf(), al), a1 = times_basis(E1, rf(), i),
                            a2 = times_basis(E1, rf(), j);
                    Section lhs = mc.left(alpha, c1.bracket(a1, a2)) - c1.bracket(mc.left(alpha, a1), a2) -
                                  c1.bracket(a1, mc.left(alpha, a2)) - mc.left(mc.right(a2, alpha), a1) +
                                  mc.left(mc.right(a1, alpha), a2);
                    Section w = mc.omega(a1, a2) + scale(half, c2.D(c1.pairing(a1, a2)));
                    Section rhs = scale(Scalar(-1), mc.mho(alpha, w)) - scale(half, c1.D(c2.pairing(alpha, w)));
                    Section r = lhs - rhs;
                    if (!is_zero(r))
                        fail(d1, "(" + idx("eps", al) + "," + idx("e", i) + "," + idx("e", j) + ") residual " +
                                     section_str(r));
                }
        // right derivation over (a, alpha1, alpha2)
        for (size_t i = 0; i < n1 && d2.ok; ++i)
            for (size_t al = 0; al < n2 && d2.ok; ++al)
                for (size_t be = 0; be < n2 && d2.ok; ++be) {
                    Section a = times_basis(E1, rf(), i), x1 = times_basis(E2, rf(), al),
                            x2 = times_basis(E2, rf(), be);
                    Section lhs = mc.right(a, c2.bracket(x1, x2)) - c2.bracket(mc.right(a, x1), x2) -
                                  c2.bracket(x1, mc.right(a, x2)) - mc.right(mc.left(x2, a), x1) +
                                  mc.right(mc.left(x1, a), x2);
                    Section v = mc.mho(x1, x2) + scale(half, c1.D(c2.pairing(x1, x2)));
                    Section rhs = scale(Scalar(-1), mc.omega(a, v)) - scale(half, c2.D(c1.pairing(a, v)));
                    Section r = lhs - rhs;
                    if (!is_zero(r))
                        fail(d2, "(" + idx("e", i) + "," + idx("eps", al) + "," + idx("eps", be) + ") residual " +
                                     section_str(r));
                }
        // curvature: <R->(a,b) alpha, beta> + <R<-(alpha,beta) a, b> = 0
        for (size_t i = 0; i < n1 && cc.ok; ++i)
            for (size_t j = i + 1; j < n1 && cc.ok; ++j)
                for (size_t al = 0; al < n2 && cc.ok; ++al)
                    for (size_t be = al + 1; be < n2 && cc.ok; ++be) {
                        Section a = times_basis(E1, rf(), i), b = times_basis(E1, rf(), j),
                                x = times_basis(E2, rf(), al), y = times_basis(E2, rf(), be);
                        Element v = c2.pairing(mc.right_curvature(a, b, x), y) +
                                    c1.pairing(mc.left_curvature(x, y, a), b);
                        if (!v.is_zero())
                            fail(cc, "(" + idx("e", i) + "," + idx("e", j) + "," + idx("eps", al) + "," +
                                         idx("eps", be) + ") residual " + v.str());
                    }
        // omega cycle / mho cycle: cyclic sums
        for (size_t i = 0; i < n1 && n4x.ok; ++i)
            for (size_t j = i + 1; j < n1 && n4x.ok; ++j)
                for (size_t k = j + 1; k < n1 && n4x.ok; ++k) {
                    Section a1 = times_basis(E1, rf(), i), a2 = times_basis(E1, rf(), j), a3 = times_basis(E1, rf(), k);
                    Section r = mc.left(mc.omega(a1, a2), a3) + mc.left(mc.omega(a2, a3), a1) +
                                mc.left(mc.omega(a3, a1), a2);
                    if (!is_zero(r))
                        fail(n4x, "(" + idx("e", i) + "," + idx("e", j) + "," + idx("e", k) + ") residual " +
                                      section_str(r));
                }
        for (size_t i = 0; i < n2 && n4y.ok; ++i)
            for (size_t j = i + 1; j < n2 && n4y.ok; ++j)
                for (size_t k = j + 1; k < n2 && n4y.ok; ++k) {
                    Section x1 = times_basis(E2, rf(), i), x2 = times_basis(E2, rf(), j), x3 = times_basis(E2, rf(), k);
                    Section r = mc.right(mc.mho(x1, x2), x3) + mc.right(mc.mho(x2, x3), x1) +
                                mc.right(mc.mho(x3, x1), x2);
                    if (!is_zero(r))
                        fail(n4y, "(" + idx("eps", i) + "," + idx("eps", j) + "," + idx("eps", k) + ") residual " +
                                      section_str(r));
                }
        // rho2(nabla->_a beta) - rho1(nabla<-_beta a) = [rho1 a, rho2 beta] on coordinates
        for (size_t i = 0; i < n1 && anc.ok; ++i)
            for (size_t be = 0; be < n2 && anc.ok; ++be) {
                Section a = times_basis(E1, rf(), i), beta = times_basis(E2, rf(), be);
                for (size_t x = 0; x < E1.base_dim(); ++x) {
                    Element cx = Element::gen(E1.base, x);
                    Element v = c2.anchor(mc.right(a, beta), cx) - c1.anchor(mc.left(beta, a), cx) -
                                c1.anchor(a, c2.anchor(beta, cx)) + c2.anchor(beta, c1.anchor(a, cx));
                    if (!v.is_zero()) {
                        fail(anc, "(" + idx("e", i) + "," + idx("eps", be) + ") on " + (*E1.base)[x].name + ": " + v.str());
                        break;
                    }
                }
            }
    }
    rep.conditions = {d1, d2, cc, n4x, n4y};
    rep.extra = {anc};
    return rep;
}

MatchedVerdict matched_iff_courant(const MatchedPair& mp, const VerifyOptions& opt) {
    MatchedVerdict v;
    v.report = verify_matched_pair(mp, opt);
    v.matched = v.report.ok();
    v.courant_report = verify_courant(matched_sum(mp), opt);
    v.courant = v.courant_report.valid();
    return v;
}

CourantPresentation change_frame(const CourantPresentation& s, const Matrix& M) {
    s.validate();
    if (M.rows() != s.rank || M.cols() != s.rank) throw std::invalid_argument("frame must be square of the rank");
    if (!inverse(M)) throw std::invalid_argument("frame is singular");
    const size_t n = s.rank;
    CourantPresentation t = s;
    t.metric = M.transpose() * s.metric * M;
    for (size_t i = 0; i < n; ++i)
        for (size_t x = 0; x < s.base_dim(); ++x) {
            Element v = s.zero();
            for (size_t a = 0; a < n; ++a)
                if (!M(a, i).is_zero()) v += s.anchor[a][x] * M(a, i);
            t.anchor[i][x] = v;
        }
    // contract one index at a time
    Table3 c1 = zero_table(n, n, n, s.base), c2 = c1;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t l = 0; l < n; ++l)
                for (size_t c = 0; c < n; ++c)
                    if (!M(c, l).is_zero()) c1[a][b][l] += s.C[a][b][c] * M(c, l);
    for (size_t a = 0; a < n; ++a)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l)
                for (size_t b = 0; b < n; ++b)
                    if (!M(b, j).is_zero()) c2[a][j][l] += c1[a][b][l] * M(b, j);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l) {
                Element v = s.zero();
                for (size_t a = 0; a < n; ++a)
                    if (!M(a, i).is_zero()) v += c2[a][j][l] * M(a, i);
                t.C[i][j][l] = v;
            }
    return t;
}

Decomposition decompose(const CourantPresentation& s, const Matrix& P1, const VerifyOptions& opt) {
    s.validate();
    if (P1.rows() != s.rank) throw std::invalid_argument("subbundle basis has the wrong number of rows");
    const size_t n1 = P1.cols();
    if (rank(P1) != n1) throw std::invalid_argument("subbundle basis is not independent");
    Matrix G1 = P1.transpose() * s.metric * P1;
    if (determinant(G1).is_zero()) throw std::invalid_argument("metric is degenerate on the subbundle");
    Matrix P2 = kernel(P1.transpose() * s.metric);
    const size_t n2 = P2.cols();

    Decomposition dec;
    dec.frame = P1.hconcat(P2);
    CourantPresentation t = change_frame(s, dec.frame);

    auto restrict = [&](size_t off, size_t r) {
        CourantPresentation e;
        e.field = t.field;
        e.base = t.base;
        e.rank = r;
        e.metric = Matrix(r, r);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) e.metric(i, j) = t.metric(off + i, off + j);
        for (size_t i = 0; i < r; ++i) e.anchor.push_back(t.anchor[off + i]);
        e.C = zero_table(r, r, r, t.base);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j)
                for (size_t l = 0; l < r; ++l) e.C[i][j][l] = t.C[off + i][off + j][off + l];
        return e;
    };
    dec.pair = MatchedPair::make(restrict(0, n1), restrict(n1, n2));
    SectionCalculus calc(t);
    for (size_t i = 0; i < n1; ++i)
        for (size_t al = 0; al < n2; ++al) {
            const Section& mixed = calc.table(i, n1 + al);
            const Section& back = calc.table(n1 + al, i);
            for (size_t be = 0; be < n2; ++be) dec.pair.right[i][al][be] = mixed[n1 + be];
            for (size_t b = 0; b < n1; ++b) {
                dec.pair.left[al][i][b] = back[b];
                if (dec.parrot && mixed[b] != -back[b]) {
                    dec.parrot = false;
                    dec.witness = "pr1(" + idx("e", i) + "." + idx("eps", al) + ") != -nabla<-_" + idx("eps", al) +
                                  " " + idx("e", i);
                }
            }
        }
    dec.e1_report = verify_courant(dec.pair.E1, opt);
    dec.e2_report = verify_courant(dec.pair.E2, opt);
    return dec;
}

MatchedPair flat_standard_to_matched(const StandardData& d) {
    const size_t m = d.m, k = d.k;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            for (size_t a = j + 1; a < m; ++a)
                for (size_t b = a + 1; b < m; ++b) {
                    if (!curvature_pairing(d, i, j, a, b).is_zero())
                        throw std::invalid_argument("<R,R> does not vanish; the standard structure is not flat");
                    if (!d_F_H(d, i, j, a, b).is_zero())
                        throw std::invalid_argument("d_F H does not vanish");
                }

    // (F (+) F*)_H: the same data without g
    StandardData d1 = d;
    d1.k = 0;
    d1.kappa = Matrix(0, 0);
    d1.g_br.clear();
    for (auto& row : d1.nabla) row.clear();
    for (auto& row : d1.R)
        for (auto& v : row) v.clear();
    CourantPresentation e1 = standard_regular_build(d1).presentation;

    CourantPresentation e2;
    e2.field = d.field;
    e2.base = e1.base;
    e2.rank = k;
    e2.metric = d.kappa;
    e2.anchor.assign(k, std::vector<Element>(e1.base_dim(), e1.zero()));
    e2.C = zero_table(k, k, k, e1.base);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b)
            for (size_t c = 0; c < k; ++c)
                for (size_t x = 0; x < k; ++x)
                    if (!d.kappa(x, c).is_zero()) e2.C[a][b][c] += d.g_br[a][b][x].rebase(e1.base) * d.kappa(x, c);

    MatchedPair mp = MatchedPair::make(e1, e2);
    for (size_t j = 0; j < m; ++j)
        for (size_t al = 0; al < k; ++al) {
            for (size_t be = 0; be < k; ++be) mp.right[m + j][al][be] = d.nabla[j][al][be].rebase(e1.base);
            // nabla<-_{r_al} f_j = 2 Q(f_j, r_al), Q(x,r)(y) = kappa(r, R(x,y))
            for (size_t l = 0; l < m; ++l) {
                Element v = e1.zero();
                for (size_t be = 0; be < k; ++be)
                    if (!d.kappa(al, be).is_zero()) v += d.R[j][l][be].rebase(e1.base) * d.kappa(al, be);
                mp.left[al][m + j][l] = v * Scalar(2);
            }
        }
    return mp;
}

MatchedDiracReport matched_dirac_check(const MatchedPair& mp, const Matrix& D1, const Matrix& D2,
                                       const VerifyOptions& opt) {
    MatchedCalculus mc(mp);
    const auto& E1 = mp.E1;
    const auto& E2 = mp.E2;
    MatchedDiracReport r;
    auto r1 = dirac_check(E1, D1);
    auto r2 = dirac_check(E2, D2);
    r.inputs_dirac = r1.dirac() && r2.dirac();
    if (!r.inputs_dirac) {
        r.witness = !r1.dirac() ? "D1: " + r1.witness : "D2: " + r2.witness;
        return r;
    }

    r.verdict = true;
    for (size_t i = 0; i < D1.cols() && r.verdict; ++i)
        for (size_t al = 0; al < D2.cols() && r.verdict; ++al) {
            Section a = column_section(E1, D1, i), x = column_section(E2, D2, al);
            Section ra = mc.right(a, x), la = mc.left(x, a);
            if (!in_span(D2, ra)) {
                r.verdict = false;
                r.witness = "nabla-> of D1 column " + std::to_string(i + 1) + " moves D2 column " +
                            std::to_string(al + 1) + " to " + section_str(ra);
            } else if (!in_span(D1, la)) {
                r.verdict = false;
                r.witness = "nabla<- of D2 column " + std::to_string(al + 1) + " moves D1 column " +
                            std::to_string(i + 1) + " to " + section_str(la);
            }
        }

    const size_t n1 = mp.n1(), n2 = mp.n2();
    Matrix D(n1 + n2, D1.cols() + D2.cols());
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < D1.cols(); ++j) D(i, j) = D1(i, j);
    for (size_t i = 0; i < n2; ++i)
        for (size_t j = 0; j < D2.cols(); ++j) D(n1 + i, D1.cols() + j) = D2(i, j);
    r.sum_dirac = dirac_check(matched_sum(mp), D).dirac();

    // Lie algebroid matched pair on (D1, D2): only meaningful once the
    // connections restrict.
    if (!r.verdict) return r;
    r.lie_pair = true;
    std::mt19937_64 rng(opt.seed);
    const int samples = E1.over_point() ? 1 : std::max(1, opt.samples);
    auto rf = [&] { return random_function(rng, E1.base, opt.poly_degree); };
    auto col = [&](const CourantPresentation& e, const Matrix& L, size_t j) {
        return scale(rf(), column_section(e, L, j));
    };
    auto fail = [&](const std::string& w) {
        if (!r.lie_pair) return;
        r.lie_pair = false;
        r.lie_witness = w;
    };
    const auto& c1 = mc.c1();
    const auto& c2 = mc.c2();
    for (int t = 0; t < samples && r.lie_pair; ++t)
        for (size_t i = 0; i < D1.cols(); ++i)
            for (size_t j = 0; j < D1.cols(); ++j)
                for (size_t al = 0; al < D2.cols(); ++al)
                    for (size_t be = 0; be < D2.cols(); ++be) {
                        if (!r.lie_pair) break;
                        Section b = col(E1, D1, i), c = col(E1, D1, j), x = col(E2, D2, al), y = col(E2, D2, be);
                        if (!is_zero(mc.right_curvature(b, c, x))) fail("nabla-> is not flat on D1");
                        if (!is_zero(mc.left_curvature(x, y, b))) fail("nabla<- is not flat on D2");
                        Section croc = mc.left(x, c1.bracket(b, c)) - c1.bracket(mc.left(x, b), c) -
                                       c1.bracket(b, mc.left(x, c)) - mc.left(mc.right(c, x), b) +
                                       mc.left(mc.right(b, x), c);
                        if (!is_zero(croc)) fail("crocodile residual " + section_str(croc));
                        Section alli = mc.right(b, c2.bracket(x, y)) - c2.bracket(mc.right(b, x), y) -
                                       c2.bracket(x, mc.right(b, y)) - mc.right(mc.left(y, b), x) +
                                       mc.right(mc.left(x, b), y);
                        if (!is_zero(alli)) fail("alligator residual " + section_str(alli));
                    }
    return r;
}

}  // namespace courant
