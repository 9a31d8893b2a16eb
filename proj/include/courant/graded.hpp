#pragma once

// Free graded-commutative algebras over Q or Q(i): generators, monomials,
// elements and graded derivations.

#include "courant/scalar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace courant {

struct Generator {
    std::string name;
    int degree = 0;
    bool odd() const { return degree % 2 != 0; }
};

/// An ordered set of generators.  The canonical order sorts by degree, then
/// by name; monomials store exponents in that order.
class GeneratorSet {
public:
    GeneratorSet(std::vector<Generator> gens, Field field = Field::Q);

    size_t size() const { return gens_.size(); }
    const Generator& operator[](size_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    int degree(size_t i) const { return gens_[i].degree; }
    bool odd(size_t i) const { return gens_[i].odd(); }
    Field field() const { return field_; }

    std::optional<size_t> find(std::string_view name) const;
    size_t index(std::string_view name) const;  // throws if absent

    // Indices of the generators of one degree, in canonical order.
    std::vector<size_t> of_degree(int d) const;

    friend bool operator==(const GeneratorSet& a, const GeneratorSet& b);

private:
    std::vector<Generator> gens_;
    Field field_;
};

using Gens = std::shared_ptr<const GeneratorSet>;

Gens make_gens(std::vector<Generator> gens, Field field = Field::Q);

// Throws std::invalid_argument unless both sets are the same.
void require_same(const Gens& a, const Gens& b);

using Monomial = std::vector<int>;

int monomial_degree(const GeneratorSet& g, const Monomial& m);

// Product of two canonical monomials.  Returns the Koszul sign (+1/-1) and
// writes the product, or returns 0 when an odd generator repeats.
int monomial_product(const GeneratorSet& g, const Monomial& a, const Monomial& b, Monomial& out);

std::string monomial_str(const GeneratorSet& g, const Monomial& m);

/// Finite sum of monomials with nonzero coefficients.
class Element {
public:
    using Terms = std::map<Monomial, Scalar>;

    explicit Element(Gens g);
    static Element constant(Gens g, const Scalar& c);
    static Element gen(Gens g, size_t i);
    static Element gen(Gens g, std::string_view name);
    static Element term(Gens g, Monomial m, const Scalar& c);

    const Gens& gens() const { return gens_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const Scalar& c);
    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const;
    bool is_constant() const;

    // Degree shared by all terms; nullopt for zero or inhomogeneous elements.
    std::optional<int> homogeneous_degree() const;
    bool is_homogeneous_of(int d) const;
    Element part(int degree) const;
    std::vector<int> degrees() const;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Scalar& c);
    Element operator-() const;
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, const Scalar& c) { return a *= c; }
    friend Element operator*(const Scalar& c, Element a) { return a *= c; }
    friend Element operator*(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    Element pow(int k) const;

    // Same element written over another generator set; generators are
    // matched by name and every used generator must exist in the target.
    Element rebase(const Gens& target) const;

    // Evaluate the degree-0 generators listed in `values` (by index).
    Element substitute(const std::vector<std::optional<Scalar>>& values) const;

    std::string str() const;

private:
    Gens gens_;
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

// Parse a polynomial such as "3/2*x^2*xi1 - (1+2i)*p_x + 1".
Element parse_element(const Gens& g, std::string_view text);

/// Graded derivation of a fixed degree, determined by its values on
/// generators:  D(ab) = D(a) b + (-1)^{|D||a|} a D(b).
class Derivation {
public:
    Derivation(Gens g, int degree);

    static Derivation coordinate(Gens g, size_t i);  // left d/dg_i, degree -|g_i|
    static Derivation euler(Gens g);                 // multiplies by degree

    int degree() const { return degree_; }
    const Gens& gens() const { return gens_; }
    void set(size_t i, Element image);
    const Element& image(size_t i) const { return images_[i]; }

    Element operator()(const Element& a) const;

    Derivation& operator+=(const Derivation& o);

private:
    Gens gens_;
    int degree_;
    std::vector<Element> images_;
};

// Graded commutator [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, as a map.
Element commutator_apply(const Derivation& d1, const Derivation& d2, const Element& a);

}  // namespace courant
