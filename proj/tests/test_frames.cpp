#include "jetframe/frames.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace jetframe;
using namespace jetframe::testing;

namespace {

Matrix<Rational> random_lambda(std::mt19937_64& rng, unsigned size) {
    Matrix<Rational> m(size, std::vector<Rational>(size));
    for (auto& row : m)
        for (auto& x : row) x = random_rational(rng);
    return m;
}

// All tuples (j_1..j_e) over 1..slots.
std::vector<std::vector<unsigned>> index_tuples(unsigned slots, unsigned e) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> t(e, 1);
    while (true) {
        out.push_back(t);
        std::size_t pos = 0;
        while (pos < e && ++t[pos] > slots) t[pos++] = 1;
        if (pos == e) break;
    }
    return out;
}

}  // namespace

TEST_CASE("T_alpha annihilates every equation, both variants") {
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        for (unsigned chart = 1; chart <= n + 1; ++chart)
            for (const auto& alpha : cramer_alphas(Variant::Delta, chart, ctx)) {
                const auto f = build_T_alpha(Variant::Delta, alpha, chart, ctx);
                CHECK_FALSE(exact_tangency_failure(f, eqs).has_value());
                for (const auto& [v, c] : f.field.coefficients()) CHECK(v.tag() == VarTag::Coeff);
            }
        for (const auto& alpha : cramer_alphas(Variant::Wronskian, 1, ctx))
            CHECK_FALSE(exact_tangency_failure(build_T_alpha(Variant::Wronskian, alpha, 1, ctx), eqs).has_value());
    }
    JetContext ctx(2, 3);
    CHECK(cramer_alphas(Variant::Delta, 1, ctx).size() == 7);
}

TEST_CASE("T_alpha^ell expansion for ell = (2,2,0,0)") {
    JetContext ctx(3, 4);
    const MultiIndex alpha{2, 2, 0, 0}, ell{2, 2, 0, 0};
    const auto f = build_T_alpha_ell(alpha, ell, ctx);
    auto da = [&](unsigned a1, unsigned a2) { return Variable::coeff(MultiIndex{a1, a2, 0, 0}); };
    VectorField expected;
    expected.set(da(2, 2), 1);
    expected.set(da(1, 2), -2 * z(1));
    expected.set(da(2, 1), -2 * z(2));
    expected.set(da(0, 2), z(1).pow(2));
    expected.set(da(1, 1), 4 * z(1) * z(2));
    expected.set(da(2, 0), z(2).pow(2));
    expected.set(da(0, 1), -2 * z(1).pow(2) * z(2));
    expected.set(da(1, 0), -2 * z(1) * z(2).pow(2));
    expected.set(da(0, 0), z(1).pow(2) * z(2).pow(2));
    CHECK(f.field == expected);
    CHECK_THROWS_AS(build_T_alpha_ell(MultiIndex{2, 1, 0, 0}, ell, ctx), std::invalid_argument);
    CHECK_THROWS_AS(build_T_alpha_ell(MultiIndex{2, 2, 0, 0}, MultiIndex{2, 1, 0, 0}, ctx), std::invalid_argument);
    CHECK_THROWS_AS(build_T_alpha_ell(MultiIndex{4, 0, 0, 0}, MultiIndex{4, 0, 0, 0}, ctx), std::invalid_argument);
}

TEST_CASE("boxed identity and the inductive array") {
    for (unsigned n : {2u, 3u}) {
        const unsigned d = n + 2;
        const unsigned slots = n + 1;
        for (const auto& ell : multi_indices_of_length(slots, n + 1))
            for (const auto& alpha : multi_indices_up_to(slots, d)) {
                if (!ell.dominated_by(alpha) || alpha[0] >= d) continue;
                for (unsigned e = 0; e <= n; ++e)
                    for (const auto& tuple : index_tuples(slots, e))
                        for (std::size_t e1 = 0; e1 <= e; ++e1) CHECK(annihilation_array(alpha, ell, tuple, e1).is_zero());
            }
    }
}

TEST_CASE("T_alpha^ell annihilates every equation") {
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        for (const auto& alpha : ctx.coefficient_indices()) {
            if (alpha.length() < n + 1) continue;
            for (const auto& ell : multi_indices_of_length(ctx.slots(), n + 1)) {
                if (!ell.dominated_by(alpha)) continue;
                const auto f = build_T_alpha_ell(alpha, ell, ctx);
                CHECK_FALSE(exact_tangency_failure(f, eqs).has_value());
                for (const auto& [v, c] : f.field.coefficients()) {
                    CHECK(v.tag() == VarTag::Coeff);
                    CHECK(c.size() == 1);
                    for (Variable u : c.support()) CHECK(u.tag() == VarTag::Coord);
                }
            }
        }
    }
}

TEST_CASE("canonical ell") {
    CHECK(canonical_ell(MultiIndex{1, 2, 1}, 2) == MultiIndex{1, 2, 0});
    CHECK(canonical_ell(MultiIndex{0, 1, 5}, 2) == MultiIndex{0, 1, 2});
    CHECK_THROWS_AS(canonical_ell(MultiIndex{1, 1, 0}, 2), std::invalid_argument);
    for (unsigned n = 1; n <= 4; ++n) {
        JetContext ctx(n, n + 2);
        for (const auto& alpha : ctx.coefficient_indices()) {
            if (alpha.length() < n + 1) continue;
            const auto ell = canonical_ell(alpha, n);
            CHECK(ell.dominated_by(alpha));
            CHECK(ell.length() == n + 1);
        }
    }
}

TEST_CASE("T_i annihilates and commutes with D") {
    std::mt19937_64 rng(31);
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        const VectorField dfield = total_derivative_field(ctx);
        std::vector<Variable> low;
        for (Variable v : ctx.ambient_variables())
            if (!(v.tag() == VarTag::Jet && v.order() >= n)) low.push_back(v);
        for (unsigned i = 1; i <= n + 1; ++i) {
            const auto t = build_T_coord(i, ctx);
            CHECK_FALSE(exact_tangency_failure(t, eqs).has_value());
            for (int trial = 0; trial < 10; ++trial) {
                const Polynomial p = random_polynomial(rng, low, 5, 2);
                CHECK(dfield.apply(p) == total_derivative(p, ctx));
                CHECK(commutator_apply(t.field, dfield, p).is_zero());
            }
        }
    }
    // The normalized coefficient contributes the constant d through alpha + eps_1 = (d, 0, 0).
    JetContext ctx(2, 3);
    CHECK(build_T_coord(1, ctx).field.coefficient(Variable::coeff(MultiIndex{2, 0, 0})) == Polynomial(-3));
    CHECK_THROWS_AS(build_T_coord(4, ctx), std::invalid_argument);
}

TEST_CASE("L systems are nonsingular, bilinear and vanish past degree d") {
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto l = solve_L_coefficients(symbolic_lambda(n + 1), ctx, Exec::Parallel);
        CHECK(l.systems.size() == multi_indices_up_to(ctx.slots(), ctx.d()).size());
        for (const auto& s : l.systems) CHECK(s.det != 0);
        const auto in_a = [](Variable v) { return v.tag() == VarTag::Coeff; };
        const auto in_lambda = [](Variable v) { return v.tag() == VarTag::Mat; };
        for (const auto& [key, value] : l.table) {
            CHECK(key.second.length() <= n);
            CHECK(key.first.length() + key.second.length() <= ctx.d());
            CHECK(value.degree_in(in_a) <= 1);
            CHECK(value.degree_in(in_lambda) <= 1);
            for (Variable v : value.support()) CHECK((in_a(v) || in_lambda(v)));
        }
        CHECK(l.theta.degree_in(in_a) <= 1);
        CHECK(l.theta.degree_in(in_lambda) <= 1);
        for (const auto& alpha : multi_indices_up_to(ctx.slots(), ctx.d()))
            for (const auto& beta : multi_indices_up_to(ctx.slots(), n))
                if (alpha.length() + beta.length() >= ctx.d() + 1) CHECK(l.at(alpha, beta).is_zero());

        // Serial and parallel kernels agree.
        const auto serial = solve_L_coefficients(symbolic_lambda(n + 1), ctx, Exec::Serial);
        CHECK(serial.table == l.table);
        CHECK(serial.theta == l.theta);
    }
}

TEST_CASE("T_Lambda is tangent: T(E_k) = -theta E_k") {
    std::mt19937_64 rng(32);
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    const auto symbolic = solve_L_coefficients(symbolic_lambda(3), ctx);
    for (int trial = 0; trial < 5; ++trial) {
        const auto lam = random_lambda(rng, 3);
        const auto direct = solve_L_coefficients(lam, ctx);
        const auto inst = symbolic.instantiate(lam);
        CHECK(direct.table == inst.table);
        CHECK(direct.theta == inst.theta);
        const auto f = build_T_Lambda(lam, direct, ctx);
        for (unsigned kappa = 0; kappa <= 2; ++kappa) CHECK(f.field.apply(eqs[kappa]) == -direct.theta * eqs[kappa]);
        const auto q = exact_divide(f.field.apply(eqs[0]), eqs[0]);
        REQUIRE(q.has_value());
        CHECK(*q == -direct.theta);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto p = sample_vertical_jet(ctx, eqs, 1 + seed % 3, 1000 * trial + seed);
            for (const Rational& v : tangency_values_at(f, eqs, p)) CHECK(v == 0);
        }
        for (const auto& [v, c] : f.field.coefficients()) {
            CHECK(v.tag() != VarTag::Coord);
            if (v.tag() == VarTag::Coeff) CHECK(c.degree_in([](Variable u) { return u.tag() == VarTag::Coord; }) <= ctx.n());
        }
    }
}

TEST_CASE("T_Lambda second-order cancellation") {
    std::mt19937_64 rng(33);
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    const auto lam = random_lambda(rng, 3);
    const auto l = solve_L_coefficients(lam, ctx);
    const auto f = build_T_Lambda(lam, l, ctx);
    const Polynomial t1 = f.field.apply(eqs[1]);
    const Polynomial t2 = f.field.apply(eqs[2]);
    for (unsigned j = 1; j <= 3; ++j) {
        const Variable first = Variable::jet(j, 1), second = Variable::jet(j, 2);
        // In T(E_1) the z_j' coefficient is the (1_j) combination; it reduces to -theta dE_0/dz_j.
        const Polynomial c1 = partial_derivative(t1, first);
        CHECK(c1 + l.theta * partial_derivative(eqs[0], Variable::coord(j)) == Polynomial());
        // The z_j'' coefficient of T(E_2) is that same combination, so it vanishes once (1_j) holds.
        CHECK(partial_derivative(t2, second) == c1);
    }
}

TEST_CASE("T_Lambda with identity matrix has Euler jet part") {
    JetContext ctx(2, 3);
    Matrix<Rational> id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto f = build_T_Lambda(id, ctx);
    for (unsigned order = 1; order <= 2; ++order)
        for (unsigned k = 1; k <= 3; ++k) CHECK(f.field.coefficient(Variable::jet(k, order)) == jet(k, order));
}

TEST_CASE("frame enumeration") {
    JetContext ctx(2, 3);
    const auto frame = enumerate_frame(ctx, 1);
    CHECK(frame.size() == 7 + 9 + 3 + 9);
    const auto again = enumerate_frame(ctx, 1, Variant::Delta, Exec::Parallel);
    REQUIRE(again.size() == frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        CHECK(frame[i].label() == again[i].label());
        CHECK(frame[i].field == again[i].field);
    }
    const auto eqs = defining_equations_iterated(ctx);
    std::vector<FrameField> exact;
    for (const auto& f : frame)
        if (f.family != Family::TLambda) exact.push_back(f);
    for (bool ok : check_exact_tangency(exact, eqs, Exec::Parallel)) CHECK(ok);
    CHECK(enumerate_frame(ctx, 2, Variant::Wronskian).size() == frame.size());
}
