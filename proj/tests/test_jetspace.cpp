#include "jetframe/jetspace.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace jetframe;
using namespace jetframe::testing;

namespace {

// Truncated power series in the curve parameter t.
using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b) {
    Series r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// D^kappa(z^beta) at a point, read off the Taylor expansion of the curve t -> z(t).
Rational taylor_derivative(const MultiIndex& beta, unsigned kappa, const JetPoint& p, unsigned n) {
    Series prod(n + 1);
    prod[0] = 1;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        Series zj(n + 1);
        for (unsigned lambda = 0; lambda <= n; ++lambda)
            zj[lambda] = p[Variable::jet_or_coord(static_cast<unsigned>(j + 1), lambda)] / factorial(lambda);
        for (unsigned e = 0; e < beta[j]; ++e) prod = series_mul(prod, zj);
    }
    return prod[kappa] * factorial(kappa);
}

JetPoint random_point(const JetContext& ctx, std::mt19937_64& rng) {
    JetPoint p;
    for (Variable v : ctx.ambient_variables()) p.assignment[v] = random_rational(rng);
    return p;
}

unsigned jet_weight(const Monomial& m) {
    unsigned w = 0;
    for (const auto& vp : m.powers())
        if (vp.var.tag() == VarTag::Jet) w += vp.var.order() * vp.exp;
    return w;
}

}  // namespace

TEST_CASE("context counts") {
    JetContext c23(2, 3);
    CHECK(c23.coefficient_count() == 19);
    CHECK(c23.ambient_dimension() == 28);
    CHECK(c23.expected_dimension() == 25);
    JetContext c34(3, 4);
    CHECK(c34.coefficient_count() == 69);
    CHECK(c34.ambient_dimension() == 85);
    for (unsigned n = 1; n <= 4; ++n) {
        JetContext ctx(n, n + 2);
        CHECK(ctx.coefficient_count() + 1 == binomial(n + 1 + n + 2, n + 2));
        CHECK_FALSE(ctx.is_admissible(ctx.top_index()));
        CHECK(ctx.coefficient(ctx.top_index()) == Polynomial(1));
    }
    CHECK_THROWS_AS(JetContext(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(JetContext(0, 3), std::invalid_argument);
}

TEST_CASE("total derivative") {
    JetContext ctx(2, 3);
    CHECK(total_derivative(z(1), ctx) == jet(1, 1));
    CHECK(total_derivative(z(1).pow(2), ctx) == 2 * z(1) * jet(1, 1));
    CHECK(total_derivative(z(1) * z(2), 2, ctx) == jet(1, 2) * z(2) + 2 * jet(1, 1) * jet(2, 1) + z(1) * jet(2, 2));
    CHECK_THROWS_AS(total_derivative(jet(1, 2), ctx), std::invalid_argument);
    CHECK(total_derivative(a(MultiIndex{1, 0, 0}), ctx).is_zero());

    // Weight raised by exactly one on every monomial.
    std::mt19937_64 rng(21);
    const std::vector<Variable> vars{Variable::coord(1), Variable::coord(3), Variable::jet(2, 1)};
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p;
        for (int t = 0; t < 3; ++t) {
            std::uniform_int_distribution<unsigned> e(0, 2);
            p.add_term(Monomial::from_powers({{vars[0], e(rng)}, {vars[1], e(rng)}, {Variable::jet(2, 1), 1}}), random_rational(rng));
        }
        const Polynomial dp = total_derivative(p, ctx);
        for (const auto& [m, c] : dp.terms()) CHECK(jet_weight(m) == 2);
    }
}

TEST_CASE("low-order equations match the displayed forms") {
    JetContext ctx(1, 2);
    const auto eqs = defining_equations_iterated(ctx);
    // E_1 = sum a_alpha sum_j d(z^alpha)/dz_j z_j' plus 2 z1 z1' from the normalized z1^2.
    Polynomial expected = 2 * z(1) * jet(1, 1);
    for (const auto& alpha : ctx.coefficient_indices()) {
        Polynomial inner;
        for (unsigned j = 1; j <= 2; ++j) inner += partial_derivative(monomial_z(alpha), Variable::coord(j)) * jet(j, 1);
        expected += a(alpha) * inner;
    }
    CHECK(eqs[1] == expected);
}

TEST_CASE("multinomial coefficients at orders three and four") {
    JetContext ctx(4, 5);
    const auto eqs = defining_equations_iterated(ctx);
    const Variable a11 = Variable::coeff(MultiIndex{1, 1, 0, 0, 0});
    const Variable a111 = Variable::coeff(MultiIndex{1, 1, 1, 0, 0});
    const Variable a2 = Variable::coeff(MultiIndex{0, 2, 0, 0, 0});
    auto mono = [](std::vector<VarPower> p) { return Monomial::from_powers(std::move(p)); };
    // For z1 z2 the mixed second partial is 1 and both orderings (j1, j2) contribute.
    CHECK(eqs[3].coefficient(mono({{a11, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 2), 1}})) == 3);
    CHECK(eqs[4].coefficient(mono({{a11, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 3), 1}})) == 4);
    CHECK(eqs[4].coefficient(mono({{a11, 1}, {Variable::jet(1, 2), 1}, {Variable::jet(2, 2), 1}})) == 2 * 3);
    // For z2^2 the second partial is 2 and the ordered pair is (2,2) once.
    CHECK(eqs[4].coefficient(mono({{a2, 1}, {Variable::jet(2, 2), 2}})) == 2 * 3);
    CHECK(eqs[4].coefficient(mono({{a2, 1}, {Variable::jet(2, 1), 1}, {Variable::jet(2, 3), 1}})) == 2 * 4);
    // For z1 z2 z3, z1' z2' z3'' arises from the two orderings of (1, 2).
    CHECK(eqs[4].coefficient(mono({{a111, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 1), 1}, {Variable::jet(3, 2), 1}})) == 2 * 6);
}

TEST_CASE("iterated and Faa di Bruno routes agree") {
    for (unsigned n = 1; n <= 4; ++n) {
        JetContext ctx(n, n + 1);
        const auto iterated = defining_equations_iterated(ctx);
        CHECK(defining_equations_faa_di_bruno(ctx) == iterated);
        CHECK(defining_equations_faa_di_bruno(ctx, Exec::Parallel) == iterated);
        CHECK(defining_equations_iterated(ctx, Exec::Parallel) == iterated);
    }
}

TEST_CASE("structure of the defining equations") {
    for (unsigned n = 1; n <= 3; ++n) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        CHECK(jet_order(eqs[0]) == 0);
        for (unsigned kappa = 0; kappa <= n; ++kappa) {
            const auto is_coeff = [](Variable v) { return v.tag() == VarTag::Coeff; };
            CHECK(eqs[kappa].degree_in(is_coeff) <= 1);
            for (const auto& [m, c] : eqs[kappa].terms()) {
                CHECK(jet_weight(m) == kappa);
                unsigned z_degree = 0, jets = 0;
                for (const auto& vp : m.powers()) {
                    if (vp.var.tag() == VarTag::Coord) z_degree += vp.exp;
                    if (vp.var.tag() == VarTag::Jet) jets += vp.exp;
                    CHECK((vp.var.tag() != VarTag::Jet || vp.var.order() >= 1));
                }
                // Block a_beta d^e(z^beta) z^(nu_1)...z^(nu_e): e jet factors, |beta| - e coordinates.
                CHECK(z_degree + jets <= ctx.d());
            }
        }
    }
}

TEST_CASE("equations agree with the Taylor-series oracle") {
    std::mt19937_64 rng(22);
    for (unsigned n = 1; n <= 3; ++n) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        for (int trial = 0; trial < 3; ++trial) {
            const JetPoint p = random_point(ctx, rng);
            for (unsigned kappa = 0; kappa <= n; ++kappa) {
                Rational expected = taylor_derivative(ctx.top_index(), kappa, p, n);
                for (const auto& alpha : ctx.coefficient_indices())
                    expected += p[Variable::coeff(alpha)] * taylor_derivative(alpha, kappa, p, n);
                CHECK(evaluate(eqs[kappa], p.assignment) == expected);
            }
        }
    }
}

TEST_CASE("sampled jets are certified and of full codimension") {
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        for (unsigned chart = 1; chart <= n + 1; ++chart)
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const JetPoint p = sample_vertical_jet(ctx, eqs, chart, seed);
                for (const Rational& r : evaluate_equations(eqs, p)) CHECK(r == 0);
                CHECK(p[Variable::jet(chart, 1)] != 0);
                CHECK_FALSE(in_sigma_tilde(p, ctx));
                const std::size_t r = jacobian_rank_at(p, eqs, ctx);
                CHECK(r == n + 1);
                CHECK(ctx.ambient_dimension() - r == binomial(n + 1 + ctx.d(), ctx.d()) + n * (n + 1) - 1);
            }
    }
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    CHECK(to_json(sample_vertical_jet(ctx, eqs, 1, 7)) == to_json(sample_vertical_jet(ctx, eqs, 1, 7)));
    CHECK_THROWS_AS(sample_vertical_jet(ctx, eqs, 4, 0), std::invalid_argument);
}

TEST_CASE("jacobian matches symbolic partial derivatives") {
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    const JetPoint p = sample_vertical_jet(ctx, eqs, 2, 5);
    const auto jac = jacobian_at(p, eqs, ctx);
    for (std::size_t row = 0; row < eqs.size(); ++row)
        for (Variable v : ctx.ambient_variables())
            CHECK(jac[row][ctx.ambient_position(v)] == evaluate(partial_derivative(eqs[row], v), p.assignment));
}

TEST_CASE("bad sets") {
    JetContext ctx(2, 3);
    JetPoint p;
    for (Variable v : ctx.ambient_variables()) p.assignment[v] = 0;
    CHECK(in_sigma_tilde(p, ctx));
    CHECK(in_sigma(p, ctx));
    p.assignment[Variable::jet(1, 1)] = 1;
    CHECK_FALSE(in_sigma_tilde(p, ctx));
    CHECK(in_sigma(p, ctx));
    p.assignment[Variable::jet(2, 2)] = 1;
    CHECK_FALSE(in_sigma(p, ctx));
}

TEST_CASE("jet points round-trip through JSON") {
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    const JetPoint p = sample_vertical_jet(ctx, eqs, 1, 3);
    const auto j = to_json(p);
    CHECK(j["assignment"].size() == ctx.ambient_dimension());
    const JetPoint q = jet_point_from_json(j);
    CHECK(q.chart == 1);
    CHECK(q.assignment == p.assignment);
}
