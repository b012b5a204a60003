#pragma once

#include "jetframe/rational.hpp"
#include "jetframe/variable.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jetframe {

struct VarPower {
    Variable var;
    unsigned exp = 0;
    bool operator==(const VarPower&) const = default;
};

/// Sparse power product, variables strictly increasing, exponents positive.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Variable v, unsigned exp = 1);
    /// Accepts any order and repeated variables; canonicalizes.
    static Monomial from_powers(std::vector<VarPower> powers);

    const std::vector<VarPower>& powers() const { return p_; }
    bool is_one() const { return p_.empty(); }
    unsigned degree() const;
    unsigned exponent(Variable v) const;

    Monomial operator*(const Monomial& other) const;
    /// Exact quotient when other divides *this.
    std::optional<Monomial> divide(const Monomial& other) const;
    /// Drops v entirely.
    Monomial without(Variable v) const;
    Monomial with_exponent(Variable v, unsigned exp) const;

    bool operator==(const Monomial&) const = default;

    std::string to_string() const;

private:
    std::vector<VarPower> p_;
};

/// Graded lexicographic order: total degree, then lex on the global variable order
/// (a larger exponent on the earliest differing variable makes the monomial larger).
/// This is a monomial order, so leading terms are multiplicative.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Canonical form: no zero coefficients, terms keyed in graded lex order, so
/// structural equality is mathematical equality.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational, GradedLex>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
    Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT
    explicit Polynomial(Variable v);
    Polynomial(const Monomial& m, const Rational& c);

    static Polynomial var(Variable v) { return Polynomial(v); }
    /// Builds from (monomial, coeff) pairs, summing duplicates.
    static Polynomial from_terms(std::vector<std::pair<Monomial, Rational>> terms);

    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;
    unsigned degree() const;
    /// Leading term in graded lex order; requires non-zero.
    const std::pair<const Monomial, Rational>& leading_term() const;
    std::vector<Variable> support() const;
    bool involves(Variable v) const;
    /// Highest exponent of v among all terms.
    unsigned degree_in(Variable v) const;
    /// Joint degree in the variables accepted by the predicate.
    unsigned degree_in(const std::function<bool(Variable)>& in_group) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    /// Adds c * m * o without materializing the product.
    void add_scaled(const Polynomial& o, const Rational& c, const Monomial& m = Monomial());
    void add_term(const Monomial& m, const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(Polynomial a, long c) { return a *= Rational(c); }
    friend Polynomial operator*(long c, Polynomial a) { return a *= Rational(c); }
    friend Polynomial operator*(Polynomial a, int c) { return a *= Rational(c); }
    friend Polynomial operator*(int c, Polynomial a) { return a *= Rational(c); }
    Polynomial operator-() const;

    /// Throws std::domain_error for negative exponents.
    Polynomial pow(long exponent) const;

    bool operator==(const Polynomial& o) const { return t_ == o.t_; }

    /// Canonical text: terms joined by " + " / " - ", each "coeff * var^exp * ...".
    std::string to_string() const;
    static Polynomial parse(const std::string& text);

private:
    static std::string to_string_signed(const Rational& c, const Monomial& m);
    Terms t_;
};

/// Formal partial derivative with every other variable independent.
Polynomial partial_derivative(const Polynomial& p, Variable v);

/// Simultaneous substitution; unbound variables pass through.
Polynomial substitute(const Polynomial& p, const std::unordered_map<Variable, Polynomial>& bindings);

/// Full evaluation; throws std::out_of_range if a variable of p is unbound.
Rational evaluate(const Polynomial& p, const std::unordered_map<Variable, Rational>& values);

/// Partial evaluation of only the bound variables.
Polynomial evaluate_partial(const Polynomial& p, const std::unordered_map<Variable, Rational>& values);

/// Exact division q = p / g when g divides p; std::nullopt otherwise.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& g);

/// Groups terms by their exponents in the variables accepted by `key_vars`:
/// returns key-monomial -> polynomial in the remaining variables.
std::map<Monomial, Polynomial, GradedLex> collect_by(const Polynomial& p, const std::function<bool(Variable)>& key_vars);

}  // namespace jetframe
