#include "jetframe/vector_field.hpp"

namespace jetframe {

void VectorField::set(Variable v, Polynomial coefficient) {
    if (coefficient.is_zero())
        c_.erase(v);
    else
        c_[v] = std::move(coefficient);
}

void VectorField::add(Variable v, const Polynomial& coefficient) {
    auto it = c_.find(v);
    if (it == c_.end()) {
        set(v, coefficient);
        return;
    }
    it->second += coefficient;
    if (it->second.is_zero()) c_.erase(it);
}

const Polynomial& VectorField::coefficient(Variable v) const {
    static const Polynomial zero;
    auto it = c_.find(v);
    return it == c_.end() ? zero : it->second;
}

Polynomial VectorField::apply(const Polynomial& p) const {
    Polynomial r;
    for (const auto& [v, coeff] : c_) {
        Polynomial dp = partial_derivative(p, v);
        if (!dp.is_zero()) r += coeff * dp;
    }
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    for (const auto& [v, coeff] : o.c_) add(v, coeff);
    return *this;
}

VectorField& VectorField::operator*=(const Rational& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& [v, coeff] : c_) coeff *= c;
    return *this;
}

std::string VectorField::to_string() const {
    std::string s;
    for (const auto& [v, coeff] : c_) s += "d/d" + v.name() + ": " + coeff.to_string() + "\n";
    return s;
}

Polynomial commutator_apply(const VectorField& x, const VectorField& y, const Polynomial& p) {
    return x.apply(y.apply(p)) - y.apply(x.apply(p));
}

}  // namespace jetframe
