#include "jetframe/linalg.hpp"

#include <string>

namespace jetframe {

namespace {

template <typename T> std::size_t require_square(const Matrix<T>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw NonSquareMatrix("determinant needs a square matrix");
    return n;
}

Polynomial cofactor_rec(const Matrix<Polynomial>& m, std::vector<std::size_t>& cols, std::size_t row) {
    if (row == m.size()) return Polynomial(1);
    Polynomial total;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k];
        if (m[row][c].is_zero()) continue;
        cols.erase(cols.begin() + static_cast<long>(k));
        Polynomial minor = cofactor_rec(m, cols, row + 1);
        cols.insert(cols.begin() + static_cast<long>(k), c);
        if (minor.is_zero()) continue;
        if (k % 2 == 0)
            total += m[row][c] * minor;
        else
            total -= m[row][c] * minor;
    }
    return total;
}

// Reduced row echelon form in place over Q; returns pivot columns.
template <typename Rhs> std::vector<std::size_t> row_reduce(Matrix<Rational>& a, std::vector<Rhs>* b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        if (b) std::swap((*b)[p], (*b)[r]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        if (b) (*b)[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            if (b) (*b)[i] -= (*b)[r] * f;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

bool is_zero_value(const Rational& q) { return q == 0; }
bool is_zero_value(const Polynomial& p) { return p.is_zero(); }

template <typename Rhs> std::vector<Rhs> solve_impl(Matrix<Rational> a, std::vector<Rhs> b) {
    if (a.size() != b.size()) throw std::invalid_argument("row count of A and length of b differ");
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("ragged coefficient matrix");
    const auto pivots = row_reduce(a, &b);
    for (std::size_t i = pivots.size(); i < a.size(); ++i)
        if (!is_zero_value(b[i])) throw InconsistentSystem("row " + std::to_string(i) + " reduces to 0 = nonzero");
    if (pivots.size() < cols) throw UnderdeterminedSystem("rank " + std::to_string(pivots.size()) + " < " + std::to_string(cols) + " unknowns");
    std::vector<Rhs> x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
    return x;
}

}  // namespace

Polynomial determinant_cofactor(const Matrix<Polynomial>& m) {
    const std::size_t n = require_square(m);
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    return cofactor_rec(m, cols, 0);
}

Polynomial determinant_bareiss(const Matrix<Polynomial>& input) {
    const std::size_t n = require_square(input);
    if (n == 0) return Polynomial(1);
    Matrix<Polynomial> m = input;
    Polynomial previous(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Polynomial();
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = exact_divide(num, previous);
                if (!q) throw std::logic_error("Bareiss step is not an exact division");
                m[i][j] = std::move(*q);
            }
            m[i][k] = Polynomial();
        }
        previous = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Polynomial determinant(const Matrix<Polynomial>& m) {
    return require_square(m) < 5 ? determinant_cofactor(m) : determinant_bareiss(m);
}

Rational determinant(const Matrix<Rational>& input) {
    const std::size_t n = require_square(input);
    Matrix<Rational> m = input;
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::size_t rank(Matrix<Rational> m) { return row_reduce<Rational>(m, nullptr).size(); }

std::vector<Rational> solve_linear_exact(const Matrix<Rational>& a, const std::vector<Rational>& b) { return solve_impl(a, b); }

std::vector<Polynomial> solve_linear_exact(const Matrix<Rational>& a, const std::vector<Polynomial>& b) { return solve_impl(a, b); }

std::vector<Polynomial> solve_linear_exact(const Matrix<Polynomial>& a, const std::vector<Polynomial>& b) {
    Matrix<Rational> q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& e : a[i]) {
            if (!e.is_constant()) throw std::invalid_argument("solve_linear_exact needs constant coefficients");
            q[i].push_back(e.constant_term());
        }
    return solve_impl(std::move(q), b);
}

Matrix<Rational> inverse(const Matrix<Rational>& m) {
    const std::size_t n = require_square(m);
    Matrix<Rational> aug(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    const auto pivots = row_reduce<Rational>(aug, nullptr);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw UnderdeterminedSystem("matrix is singular");
    Matrix<Rational> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

}  // namespace jetframe
