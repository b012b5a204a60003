#pragma once

#include "jetframe/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace jetframe {

/// Derivation sum_v c_v d/dv with polynomial coefficients. Absent variables have
/// coefficient zero; zero coefficients are never stored.
class VectorField {
public:
    using Coefficients = std::map<Variable, Polynomial>;

    VectorField() = default;

    void set(Variable v, Polynomial coefficient);
    void add(Variable v, const Polynomial& coefficient);
    /// Zero polynomial when v is not a direction of the field.
    const Polynomial& coefficient(Variable v) const;
    const Coefficients& coefficients() const { return c_; }
    bool touches(Variable v) const { return c_.contains(v); }
    bool is_zero() const { return c_.empty(); }

    /// T(p) = sum_v c_v dp/dv.
    Polynomial apply(const Polynomial& p) const;

    VectorField& operator+=(const VectorField& o);
    VectorField& operator*=(const Rational& c);
    bool operator==(const VectorField& o) const { return c_ == o.c_; }

    /// One line per nonzero direction: "d/d<var>: <polynomial>".
    std::string to_string() const;

private:
    Coefficients c_;
};

/// Lie bracket [X, Y] as a derivation, evaluated on p: X(Y(p)) - Y(X(p)).
Polynomial commutator_apply(const VectorField& x, const VectorField& y, const Polynomial& p);

}  // namespace jetframe
