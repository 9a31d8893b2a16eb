#include "courant/graded.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <stdexcept>

namespace courant {

GeneratorSet::GeneratorSet(std::vector<Generator> gens, Field field)
    : gens_(std::move(gens)), field_(field) {
    for (const auto& g : gens_) {
        if (g.name.empty()) throw std::invalid_argument("generator with empty name");
        if (g.degree < 0) throw std::invalid_argument("generator '" + g.name + "' has negative degree");
    }
    std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.name < b.name;
    });
    for (size_t i = 1; i < gens_.size(); ++i)
        if (gens_[i].name == gens_[i - 1].name)
            throw std::invalid_argument("duplicate generator '" + gens_[i].name + "'");
    std::set<std::string> seen;
    for (const auto& g : gens_)
        if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator '" + g.name + "'");
}

std::optional<size_t> GeneratorSet::find(std::string_view name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

size_t GeneratorSet::index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return *i;
}

std::vector<size_t> GeneratorSet::of_degree(int d) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].degree == d) out.push_back(i);
    return out;
}

bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    if (a.field_ != b.field_ || a.gens_.size() != b.gens_.size()) return false;
    for (size_t i = 0; i < a.gens_.size(); ++i)
        if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree) return false;
    return true;
}

Gens make_gens(std::vector<Generator> gens, Field field) {
    return std::make_shared<const GeneratorSet>(std::move(gens), field);
}

void require_same(const Gens& a, const Gens& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw std::invalid_argument("mismatched generator sets");
}

int monomial_degree(const GeneratorSet& g, const Monomial& m) {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * g.degree(i);
    return d;
}

int monomial_product(const GeneratorSet& g, const Monomial& a, const Monomial& b, Monomial& out) {
    const size_t n = g.size();
    out.assign(n, 0);
    // sign: each odd generator of b moves left past the larger odd generators of a
    int swaps = 0;
    int odd_in_a_after = 0;  // odd generators of a with index > current
    for (size_t i = 0; i < n; ++i)
        if (g.odd(i)) odd_in_a_after += a[i];
    for (size_t i = 0; i < n; ++i) {
        if (g.odd(i)) {
            odd_in_a_after -= a[i];
            if (a[i] && b[i]) return 0;
            if (b[i]) swaps += odd_in_a_after;
        }
        out[i] = a[i] + b[i];
    }
    return (swaps % 2) ? -1 : 1;
}

std::string monomial_str(const GeneratorSet& g, const Monomial& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += g[i].name;
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

Element::Element(Gens g) : gens_(std::move(g)) {
    if (!gens_) throw std::invalid_argument("element without generator set");
}

Element Element::constant(Gens g, const Scalar& c) {
    Element e(std::move(g));
    e.add_term(Monomial(e.gens_->size(), 0), c);
    return e;
}

Element Element::gen(Gens g, size_t i) {
    Element e(std::move(g));
    if (i >= e.gens_->size()) throw std::out_of_range("generator index");
    Monomial m(e.gens_->size(), 0);
    m[i] = 1;
    e.add_term(m, Scalar(1));
    return e;
}

Element Element::gen(Gens g, std::string_view name) {
    size_t i = g->index(name);
    return gen(std::move(g), i);
}

Element Element::term(Gens g, Monomial m, const Scalar& c) {
    Element e(std::move(g));
    if (m.size() != e.gens_->size()) throw std::invalid_argument("monomial length mismatch");
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) throw std::invalid_argument("negative exponent");
        if (e.gens_->odd(i) && m[i] > 1) return e;
    }
    e.add_term(m, c);
    return e;
}

void Element::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    if (!in_field(c, gens_->field()))
        throw std::invalid_argument("scalar " + c.str() + " is outside the field " + field_name(gens_->field()));
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Scalar Element::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Element::constant_term() const { return coefficient(Monomial(gens_->size(), 0)); }

bool Element::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(*gens_, terms_.begin()->first) == 0 &&
                              std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                          [](int e) { return e == 0; }));
}

std::optional<int> Element::homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int k = monomial_degree(*gens_, m);
        if (d && *d != k) return std::nullopt;
        d = k;
    }
    return d;
}

bool Element::is_homogeneous_of(int d) const {
    for (const auto& [m, c] : terms_)
        if (monomial_degree(*gens_, m) != d) return false;
    return true;
}

Element Element::part(int degree) const {
    Element e(gens_);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(*gens_, m) == degree) e.terms_.emplace(m, c);
    return e;
}

std::vector<int> Element::degrees() const {
    std::set<int> s;
    for (const auto& [m, c] : terms_) s.insert(monomial_degree(*gens_, m));
    return {s.begin(), s.end()};
}

Element& Element::operator+=(const Element& o) {
    require_same(gens_, o.gens_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    require_same(gens_, o.gens_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (!in_field(c, gens_->field()))
        throw std::invalid_argument("scalar " + c.str() + " is outside the field " + field_name(gens_->field()));
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Element Element::operator-() const {
    Element e = *this;
    for (auto& [m, v] : e.terms_) v = -v;
    return e;
}

Element operator*(const Element& a, const Element& b) {
    require_same(a.gens_, b.gens_);
    Element out(a.gens_);
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            int s = monomial_product(*a.gens_, ma, mb, prod);
            if (s == 0) continue;
            Scalar c = ca * cb;
            if (s < 0) c = -c;
            out.add_term(prod, c);
        }
    }
    return out;
}

bool operator==(const Element& a, const Element& b) {
    require_same(a.gens_, b.gens_);
    return a.terms_ == b.terms_;
}

Element Element::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    Element r = constant(gens_, 1);
    for (int j = 0; j < k; ++j) r = r * *this;
    return r;
}

Element Element::rebase(const Gens& target) const {
    if (gens_ == target || *gens_ == *target) {
        Element e(target);
        e.terms_ = terms_;
        return e;
    }
    std::vector<size_t> map(gens_->size());
    std::vector<bool> used(gens_->size(), false);
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i]) used[i] = true;
    for (size_t i = 0; i < gens_->size(); ++i) {
        if (!used[i]) continue;
        auto j = target->find((*gens_)[i].name);
        if (!j || target->degree(*j) != gens_->degree(i))
            throw std::invalid_argument("generator '" + (*gens_)[i].name + "' missing from target set");
        map[i] = *j;
    }
    Element out(target);
    for (const auto& [m, c] : terms_) {
        Element t = constant(target, c);
        for (size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) t = t * gen(target, map[i]);
        out += t;
    }
    return out;
}

Element Element::substitute(const std::vector<std::optional<Scalar>>& values) const {
    Element out(gens_);
    for (const auto& [m, c] : terms_) {
        Monomial r = m;
        Scalar v = c;
        for (size_t i = 0; i < m.size() && i < values.size(); ++i) {
            if (!values[i] || m[i] == 0) continue;
            if (gens_->degree(i) != 0) throw std::invalid_argument("substitution into a graded generator");
            for (int k = 0; k < m[i]; ++k) v *= *values[i];
            r[i] = 0;
        }
        out.add_term(r, v);
    }
    return out;
}

std::string Element::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono = monomial_str(*gens_, m);
        std::string t;
        if (mono.empty()) t = c.str();
        else if (c.is_one()) t = mono;
        else if (c == Scalar(-1)) t = "-" + mono;
        else t = c.str() + "*" + mono;
        if (first) s = t;
        else if (t[0] == '-') s += " - " + t.substr(1);
        else s += " + " + t;
        first = false;
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.str(); }

namespace {

class Parser {
public:
    Parser(const Gens& g, std::string_view t) : g_(g), t_(t) {}

    Element parse() {
        Element e = expr();
        skip();
        if (pos_ != t_.size()) fail("unexpected character");
        return e;
    }

private:
    const Gens& g_;
    std::string_view t_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + std::string(t_) + "': " + why + " at " +
                                    std::to_string(pos_));
    }
    void skip() {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < t_.size() && t_[pos_] == c;
    }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    Element expr() {
        Element acc(g_);
        bool neg = false;
        if (peek('+')) ++pos_;
        else if (peek('-')) {
            ++pos_;
            neg = true;
        }
        Element t = term();
        acc += neg ? -t : t;
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    Element term() {
        Element acc = factor();
        while (peek('*')) {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    Element factor() {
        skip();
        if (pos_ >= t_.size()) fail("unexpected end");
        char c = t_[pos_];
        Element base(g_);
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!peek(')')) fail("missing ')'");
            ++pos_;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
            if (pos_ < t_.size() && t_[pos_] == '/') {
                ++pos_;
                size_t ds = pos_;
                while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
                if (ds == pos_) fail("bad fraction");
            }
            Scalar v = Scalar::parse(t_.substr(st, pos_ - st));
            if (pos_ < t_.size() && t_[pos_] == 'i' && (pos_ + 1 >= t_.size() || !ident_char(t_[pos_ + 1]))) {
                ++pos_;
                v *= Scalar::i();
            }
            base = Element::constant(g_, v);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = pos_;
            while (pos_ < t_.size() && ident_char(t_[pos_])) ++pos_;
            std::string_view name = t_.substr(st, pos_ - st);
            auto idx = g_->find(name);
            if (idx) base = Element::gen(g_, *idx);
            else if (name == "i") base = Element::constant(g_, Scalar::i());
            else fail("unknown generator '" + std::string(name) + "'");
        } else {
            fail("unexpected character");
        }
        if (peek('^')) {
            ++pos_;
            skip();
            size_t st = pos_;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
            if (st == pos_) fail("bad exponent");
            base = base.pow(std::stoi(std::string(t_.substr(st, pos_ - st))));
        }
        return base;
    }
};

}  // namespace

Element parse_element(const Gens& g, std::string_view text) { return Parser(g, text).parse(); }

Derivation::Derivation(Gens g, int degree) : gens_(std::move(g)), degree_(degree) {
    images_.reserve(gens_->size());
    for (size_t i = 0; i < gens_->size(); ++i) images_.emplace_back(gens_);
}

Derivation Derivation::coordinate(Gens g, size_t i) {
    Derivation d(g, -g->degree(i));
    d.set(i, Element::constant(g, 1));
    return d;
}

Derivation Derivation::euler(Gens g) {
    Derivation d(g, 0);
    for (size_t i = 0; i < g->size(); ++i)
        if (g->degree(i) != 0) d.set(i, Element::gen(g, i) * Scalar(g->degree(i)));
    return d;
}

void Derivation::set(size_t i, Element image) {
    require_same(gens_, image.gens());
    if (!image.is_homogeneous_of(gens_->degree(i) + degree_))
        throw std::invalid_argument("derivation image of '" + (*gens_)[i].name + "' has the wrong degree");
    images_[i] = std::move(image);
}

Element Derivation::operator()(const Element& a) const {
    require_same(gens_, a.gens());
    const auto& gs = *gens_;
    const size_t n = gs.size();
    Element out(gens_);
    for (const auto& [m, c] : a.terms()) {
        int prefix_deg = 0;
        for (size_t i = 0; i < n; ++i) {
            if (m[i] == 0) continue;
            if (!images_[i].is_zero()) {
                Monomial pre(n, 0), suf(n, 0);
                for (size_t j = 0; j < i; ++j) pre[j] = m[j];
                for (size_t j = i + 1; j < n; ++j) suf[j] = m[j];
                Element mid = images_[i];
                Scalar coef = c;
                if (!gs.odd(i) && m[i] > 1) {
                    Monomial pw(n, 0);
                    pw[i] = m[i] - 1;
                    mid = Element::term(gens_, pw, Scalar(1)) * mid;
                    coef *= Scalar(m[i]);
                }
                if ((static_cast<long>(degree_) * prefix_deg) % 2 != 0) coef = -coef;
                Element piece = Element::term(gens_, pre, coef) * mid * Element::term(gens_, suf, Scalar(1));
                out += piece;
            }
            prefix_deg += m[i] * gs.degree(i);
        }
    }
    return out;
}

Derivation& Derivation::operator+=(const Derivation& o) {
    require_same(gens_, o.gens_);
    if (degree_ != o.degree_) throw std::invalid_argument("adding derivations of different degrees");
    for (size_t i = 0; i < images_.size(); ++i) images_[i] += o.images_[i];
    return *this;
}

Element commutator_apply(const Derivation& d1, const Derivation& d2, const Element& a) {
    Element r = d1(d2(a));
    Element s = d2(d1(a));
    if ((static_cast<long>(d1.degree()) * d2.degree()) % 2 != 0) return r + s;
    return r - s;
}

}  // namespace courant
