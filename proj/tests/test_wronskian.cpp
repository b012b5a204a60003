#include "jetframe/wronskian.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace jetframe;
using namespace jetframe::testing;

TEST_CASE("Wronskian identity for small n") {
    JetContext c1(1, 2);
    CHECK(delta(1, c1) == jet(1, 1));
    JetContext c2(2, 3);
    CHECK(delta(2, c2) == 2 * jet(2, 1).pow(3));
    JetContext c3(3, 4);
    CHECK(delta(1, c3) == 12 * jet(1, 1).pow(6));
    CHECK_THROWS_AS(delta(5, c3), std::invalid_argument);
}

TEST_CASE("Wronskian identity for all charts up to n = 5") {
    for (unsigned n = 1; n <= 5; ++n) {
        JetContext ctx(n, n + 1);
        for (unsigned chart = 1; chart <= n + 1; ++chart) CHECK(delta(chart, ctx) == delta_closed_form(chart, n));
    }
    CHECK(delta_closed_form(1, 4) == 288 * jet(1, 1).pow(10));
    CHECK(appendix_identity_check(1));
    CHECK(appendix_identity_check(4));
}

TEST_CASE("classical Wronskian") {
    JetContext c1(1, 2);
    CHECK(classical_W(c1) == jet(1, 1));
    JetContext c2(2, 3);
    const Polynomial w = classical_W(c2);
    CHECK(w == jet(1, 1) * jet(2, 2) - jet(2, 1) * jet(1, 2));
    CHECK(evaluate(w, {{Variable::jet(1, 1), 1}, {Variable::jet(2, 1), 0}, {Variable::jet(1, 2), 0}, {Variable::jet(2, 2), 1}}) == 1);
    for (unsigned n = 1; n <= 3; ++n) {
        JetContext ctx(n, n + 1);
        const Polynomial wn = classical_W(ctx);
        for (unsigned row = 1; row <= n; ++row) {
            std::unordered_map<Variable, Polynomial> zero;
            for (unsigned lambda = 1; lambda <= n; ++lambda) zero[Variable::jet(row, lambda)] = Polynomial();
            CHECK(substitute(wn, zero).is_zero());
        }
    }
}

TEST_CASE("admissible alpha counts") {
    for (unsigned n = 1; n <= 4; ++n) {
        JetContext ctx(n, n + 1);
        const std::size_t expected = static_cast<std::size_t>(binomial(2 * n + 1, n).get_num().get_ui()) - (n + 1);
        for (unsigned chart = 1; chart <= n + 1; ++chart) CHECK(cramer_alphas(Variant::Delta, chart, ctx).size() == expected);
        CHECK(cramer_alphas(Variant::Wronskian, 1, ctx).size() == expected);
    }
    JetContext ctx(2, 3);
    CHECK(cramer_alphas(Variant::Delta, 1, ctx).size() == 7);
    CHECK_THROWS_AS(cramer_B(Variant::Delta, MultiIndex{2, 0, 0}, 1, ctx), std::invalid_argument);
    CHECK_THROWS_AS(cramer_B(Variant::Wronskian, MultiIndex{0, 1, 0}, 1, ctx), std::invalid_argument);
    CHECK_THROWS_AS(cramer_B(Variant::Delta, MultiIndex{1, 1, 1}, 1, ctx), std::invalid_argument);
    CHECK_NOTHROW(cramer_B(Variant::Delta, MultiIndex{0, 1, 0}, 1, ctx));
}

TEST_CASE("Cramer coefficients solve the graph system identically") {
    for (unsigned n = 1; n <= 3; ++n) {
        JetContext ctx(n, n + 1);
        for (unsigned chart = 1; chart <= n + 1; ++chart)
            for (const auto& c : cramer_table(Variant::Delta, chart, ctx)) {
                for (const auto& r : cramer_residuals(c, ctx)) CHECK(r.is_zero());
                for (const auto& b : c.B)
                    for (Variable v : b.support()) CHECK(v.is_jet_like());
            }
        for (const auto& c : cramer_table(Variant::Wronskian, 1, ctx, Exec::Parallel)) {
            CHECK(c.denominator == classical_W(ctx));
            for (const auto& r : cramer_residuals(c, ctx)) CHECK(r.is_zero());
        }
    }
}

TEST_CASE("hand Cramer on the 2x2 system") {
    JetContext ctx(2, 3);
    for (unsigned chart = 1; chart <= 3; ++chart)
        for (unsigned j = 1; j <= 3; ++j) {
            if (j == chart) continue;
            MultiIndex alpha = ctx.unit(j - 1);
            const auto c = cramer_B(Variant::Delta, alpha, chart, ctx);
            const Polynomial zi = z(chart), d1 = jet(chart, 1), d2 = jet(chart, 2);
            const Polynomial e1 = jet(j, 1), e2 = jet(j, 2);
            // Columns (z_i', z_i'') and (2 z_i z_i', 2 z_i'^2 + 2 z_i z_i''), right side (z_j', z_j'').
            const Polynomial m11 = d1, m21 = d2, m12 = 2 * zi * d1, m22 = 2 * d1 * d1 + 2 * zi * d2;
            CHECK(c.denominator == m11 * m22 - m12 * m21);
            CHECK(c.B[1] == e1 * m22 - m12 * e2);
            CHECK(c.B[2] == m11 * e2 - e1 * m21);
            CHECK(c.B[0] == -c.B[1] * zi - c.B[2] * zi * zi + c.denominator * z(j));
        }
    const auto c2 = cramer_B(Variant::Wronskian, MultiIndex{1, 1, 0}, 0, ctx);
    for (const auto& r : cramer_residuals(c2, ctx)) CHECK(r.is_zero());
}

TEST_CASE("B coefficients alternate under column swaps") {
    JetContext ctx(3, 4);
    const auto m = delta_matrix(2, ctx);
    const MultiIndex alpha{1, 0, 1, 0};
    const auto c = cramer_B(Variant::Delta, alpha, 2, ctx);
    Polynomial p = monomial_z(alpha);
    std::vector<Polynomial> col;
    for (unsigned kappa = 1; kappa <= 3; ++kappa) col.push_back(p = total_derivative(p, ctx));
    Matrix<Polynomial> mk = m;
    for (unsigned r = 0; r < 3; ++r) mk[r][0] = col[r];
    CHECK(determinant(mk) == c.B[1]);
    for (unsigned r = 0; r < 3; ++r) std::swap(mk[r][1], mk[r][2]);
    CHECK(determinant(mk) == -c.B[1]);
}
