#pragma once

#include "jetframe/polynomial.hpp"
#include "jetframe/rational.hpp"

#include <stdexcept>
#include <vector>

namespace jetframe {

template <typename T> using Matrix = std::vector<std::vector<T>>;

class NonSquareMatrix : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The system has no solution.
class InconsistentSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The system is consistent but the solution is not unique.
class UnderdeterminedSystem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Determinant by Laplace expansion along the first row.
Polynomial determinant_cofactor(const Matrix<Polynomial>& m);

/// Fraction-free Bareiss elimination over the polynomial ring, exact division at every step.
Polynomial determinant_bareiss(const Matrix<Polynomial>& m);

/// Cofactor expansion below 5x5, Bareiss from 5x5 on.
Polynomial determinant(const Matrix<Polynomial>& m);

Rational determinant(const Matrix<Rational>& m);

std::size_t rank(Matrix<Rational> m);

/// Solves A x = b exactly for a rational coefficient matrix. Rectangular systems are
/// accepted when consistent with a unique solution. The right-hand side may be rational
/// or polynomial (the row operations only ever scale it by rationals).
std::vector<Rational> solve_linear_exact(const Matrix<Rational>& a, const std::vector<Rational>& b);
std::vector<Polynomial> solve_linear_exact(const Matrix<Rational>& a, const std::vector<Polynomial>& b);

/// Same, for a polynomial matrix whose entries are all constants; throws std::invalid_argument otherwise.
std::vector<Polynomial> solve_linear_exact(const Matrix<Polynomial>& a, const std::vector<Polynomial>& b);

/// Inverse of a square nonsingular rational matrix.
Matrix<Rational> inverse(const Matrix<Rational>& m);

}  // namespace jetframe
