#include "jetframe/analysis.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <functional>

using namespace jetframe;
using namespace jetframe::testing;

namespace {

ReparamJet random_phi(std::mt19937_64& rng, unsigned n) {
    std::vector<Rational> higher;
    for (unsigned k = 2; k <= n; ++k) higher.push_back(random_rational(rng, 5, 3));
    return ReparamJet::from_derivatives(higher);
}

// Truncated product of power series.
std::vector<Rational> series_mul(const std::vector<Rational>& f, const std::vector<Rational>& g) {
    std::vector<Rational> out(f.size());
    for (std::size_t a = 0; a < f.size(); ++a)
        for (std::size_t b = 0; a + b < f.size(); ++b) out[a + b] += f[a] * g[b];
    return out;
}

// Every Coord/Jet monomial of total degree 1..max_degree.
std::vector<Polynomial> all_monomials(const JetContext& ctx, unsigned max_degree) {
    std::vector<Variable> vars;
    for (Variable v : ctx.ambient_variables())
        if (v.is_jet_like()) vars.push_back(v);
    std::vector<Polynomial> out;
    std::function<void(std::size_t, Polynomial, unsigned)> rec = [&](std::size_t i, Polynomial m, unsigned deg) {
        if (i == vars.size()) {
            if (deg > 0) out.push_back(m);
            return;
        }
        for (unsigned e = 0; deg + e <= max_degree; ++e) {
            rec(i + 1, m, deg + e);
            m *= Polynomial(vars[i]);
        }
    };
    rec(0, Polynomial(1), 0);
    return out;
}

}  // namespace

TEST_CASE("pole_order weight rule") {
    CHECK(pole_order(z(1)).order == 1);
    CHECK(pole_order(jet(1, 1)).order == 2);
    CHECK(pole_order(jet(2, 3)).order == 4);
    CHECK(pole_order(z(1) * jet(2, 1) * jet(2, 1)).order == 5);
    CHECK_FALSE(pole_order(z(1) + jet(1, 1)).uniform);
    CHECK(pole_order(z(1) + jet(1, 1)).order == 2);
    CHECK_THROWS_AS(pole_order(a(MultiIndex({1, 0, 0}))), std::invalid_argument);

    for (unsigned n = 1; n <= 4; ++n) {
        JetContext ctx(n, n + 1);
        const auto d = pole_order(delta(1, ctx));
        CHECK(d.order == static_cast<long>(n * n + n));
        CHECK(d.uniform);
        const auto w = pole_order(classical_W(ctx));
        CHECK(w.uniform);
        CHECK(w.order == static_cast<long>(n * n + 3 * n) / 2);
    }
}

TEST_CASE("chart change oracle on single objects") {
    JetContext ctx(2, 3);
    CHECK(chart_change_oracle(z(1), 2, ctx).pole_exponent == 1);
    CHECK(chart_change_oracle(jet(1, 1), 3, ctx).pole_exponent == 2);
    CHECK(chart_change_oracle(jet(1, 2), 3, ctx).pole_exponent == 3);
    CHECK(chart_change_oracle(z(2), 2, ctx).pole_exponent == 1);
    CHECK(chart_change_oracle(Polynomial(5), 1, ctx).pole_exponent == 0);

    // z_1'' with upsilon = 3: (z_1'' z_3^2 - 2 z_1' z_3' z_3 - z_1 z_3'' z_3 + 2 z_1 z_3'^2) / z_3^3.
    const auto q = chart_change_oracle(jet(1, 2), 3, ctx);
    const Polynomial expected = jet(1, 2) * z(3) * z(3) - 2 * jet(1, 1) * jet(3, 1) * z(3) - z(1) * jet(3, 2) * z(3) +
                                2 * z(1) * jet(3, 1) * jet(3, 1);
    CHECK(q.numerator == expected);

    CHECK(chart_change_oracle(delta(1, ctx), 3, ctx).pole_exponent == 6);
    CHECK(oracle_pole_order(delta(1, ctx), ctx) == 6);
    CHECK_THROWS_AS(chart_change_oracle(z(1), 4, ctx), std::invalid_argument);
}

TEST_CASE("oracle agrees with the weight rule on every monomial") {
    for (unsigned n : {1u, 2u}) {
        JetContext ctx(n, n + 1);
        for (const auto& m : all_monomials(ctx, 4)) {
            INFO(m.to_string());
            CHECK(oracle_pole_order(m, ctx) == pole_order(m).order);
        }
    }
    JetContext ctx(3, 4);
    for (const auto& m : all_monomials(ctx, 3)) {
        INFO(m.to_string());
        CHECK(oracle_pole_order(m, ctx) == pole_order(m).order);
    }
}

TEST_CASE("Wronskian W has a lower true pole than its weight") {
    // Cancellation: W(z_1/z_3, z_2/z_3) has pole 3 although every monomial has weight 5.
    JetContext ctx(2, 3);
    const Polynomial w = classical_W(ctx);
    CHECK(pole_order(w).order == 5);
    for (unsigned u = 1; u <= 3; ++u) CHECK(chart_change_oracle(w, u, ctx).pole_exponent == 3);
}

TEST_CASE("pole table against closed formulas") {
    for (unsigned n = 2; n <= 6; ++n) {
        JetContext ctx(n, n + 1);
        PoleTableOptions options;
        options.run_oracle = false;
        const auto report = verify_pole_table(ctx, options);
        CHECK(report.c_variant1_computed == static_cast<long>(n * n + 2 * n));
        CHECK(report.c_variant2_computed == static_cast<long>(n * n + 5 * n) / 2);
        for (const auto& item : report.items) {
            INFO(item.label());
            CHECK(item.uniform);
            if (item.object == "W")
                CHECK(item.computed == static_cast<long>(n * n + 3 * n) / 2);
            else
                CHECK(item.computed == item.claimed);
        }
        const auto bad = report.mismatches();
        REQUIRE(bad.size() == 1);
        CHECK(bad.front()->object == "W");
    }
    {
        const auto r2 = verify_pole_table(JetContext(2, 3));
        CHECK(r2.c_variant2_computed == 7);
        const auto r3 = verify_pole_table(JetContext(3, 4), {.run_oracle = false});
        CHECK(r3.c_variant2_computed == 12);
    }
}

TEST_CASE("graded and symbolic routes agree") {
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto symbolic = verify_pole_table(ctx, {.symbolic_up_to = 3, .run_oracle = false});
        const auto graded = verify_pole_table(ctx, {.symbolic_up_to = 0, .run_oracle = false});
        REQUIRE(symbolic.items.size() == graded.items.size());
        for (std::size_t i = 0; i < symbolic.items.size(); ++i) {
            INFO(symbolic.items[i].label());
            CHECK(symbolic.items[i].computed == graded.items[i].computed);
            CHECK(graded.items[i].method == "graded");
        }
    }
}

TEST_CASE("oracle maxima at n = 2") {
    const auto r = verify_pole_table(JetContext(2, 3));
    REQUIRE(r.oracle_run());
    CHECK(*r.c_variant1_oracle == 6);
    CHECK(*r.c_variant2_oracle == 6);
    for (const auto& item : r.items) {
        REQUIRE(item.oracle.has_value());
        CHECK(*item.oracle <= item.computed);
        if (item.object == "Delta") CHECK(*item.oracle == item.computed);
    }
}

TEST_CASE("serial and parallel pole tables agree") {
    JetContext ctx(3, 4);
    const auto s = verify_pole_table(ctx, {.exec = Exec::Serial});
    const auto p = verify_pole_table(ctx, {.exec = Exec::Parallel});
    REQUIRE(s.items.size() == p.items.size());
    for (std::size_t i = 0; i < s.items.size(); ++i) {
        CHECK(s.items[i].label() == p.items[i].label());
        CHECK(s.items[i].computed == p.items[i].computed);
        CHECK(s.items[i].oracle == p.items[i].oracle);
    }
}

TEST_CASE("jet_value matches symbolic total derivatives") {
    std::mt19937_64 rng(4);
    JetContext ctx(3, 4);
    JetPoint p;
    for (Variable v : ctx.ambient_variables())
        if (v.is_jet_like()) p.assignment[v] = random_rational(rng);
    for (const MultiIndex& beta : {MultiIndex({1, 0, 0, 0}), MultiIndex({2, 1, 0, 0}), MultiIndex({0, 1, 1, 1})}) {
        Polynomial zb = monomial_z(beta);
        for (unsigned kappa = 1; kappa <= 3; ++kappa) {
            zb = total_derivative(zb, ctx);
            CHECK(jet_value(beta, kappa, p, 3) == evaluate(zb, p.assignment));
        }
    }
}

TEST_CASE("reparametrization coefficients") {
    // Order 3: w''' = z''' + 3 phi'' z'' + phi''' z'.
    const auto phi = ReparamJet::from_derivatives({Rational(2), Rational(7)});
    const auto c = reparam_coefficients(phi);
    CHECK(c[1][1] == 1);
    CHECK(c[2][2] == 1);
    CHECK(c[2][1] == 2);
    CHECK(c[3][3] == 1);
    CHECK(c[3][2] == 3 * 2);
    CHECK(c[3][1] == 7);

    JetContext ctx(2, 3);
    const auto sub = reparam_substitution(ReparamJet::from_derivatives({Rational(5)}), ctx);
    CHECK(sub.at(Variable::jet(1, 1)) == jet(1, 1));
    CHECK(sub.at(Variable::jet(2, 2)) == jet(2, 2) + 5 * jet(2, 1));
}

TEST_CASE("reparametrization coefficients match series composition") {
    std::mt19937_64 rng(11);
    for (unsigned n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const auto phi = random_phi(rng, n);
            std::vector<Rational> zs(n + 1), ps(n + 1);
            for (unsigned k = 1; k <= n; ++k) {
                zs[k] = random_rational(rng);
                ps[k] = phi.phi[k] / factorial(k);
            }
            // z(phi(t)) = sum_k zs[k] phi(t)^k.
            std::vector<Rational> comp(n + 1), power(n + 1);
            power[0] = 1;
            for (unsigned k = 1; k <= n; ++k) {
                power = series_mul(power, ps);
                for (unsigned i = 0; i <= n; ++i) comp[i] += zs[k] * power[i];
            }
            const auto c = reparam_coefficients(phi);
            for (unsigned l = 1; l <= n; ++l) {
                Rational lhs;
                for (unsigned m = 1; m <= l; ++m) lhs += c[l][m] * zs[m] * factorial(m);
                CHECK(lhs == comp[l] * factorial(l));
            }
        }
}

TEST_CASE("inverse reparametrization") {
    std::mt19937_64 rng(5);
    for (unsigned n = 1; n <= 3; ++n) {
        JetContext ctx(n, n + 1);
        for (int trial = 0; trial < 5; ++trial) {
            const auto phi = random_phi(rng, n);
            const auto inv = inverse(phi);
            JetPoint p;
            for (Variable v : ctx.ambient_variables())
                if (v.is_jet_like()) p.assignment[v] = random_rational(rng);
            const auto back = reparam_action(reparam_action(p, phi, ctx), inv, ctx);
            for (const auto& [v, x] : p.assignment) CHECK(back[v] == x);
            const auto forth = reparam_action(reparam_action(p, inv, ctx), phi, ctx);
            for (const auto& [v, x] : p.assignment) CHECK(forth[v] == x);

            const Polynomial q = jet(1, n) * z(2) + jet(2, 1) * jet(1, 1);
            CHECK(reparam_action(reparam_action(q, phi, ctx), inv, ctx) == q);
        }
    }
    // Explicit order 2: inverse of phi'' = s is -s.
    CHECK(inverse(ReparamJet::from_derivatives({Rational(3)})).phi[2] == -3);
}

TEST_CASE("reparametrized sampled points stay on the jet variety") {
    std::mt19937_64 rng(8);
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto p = sample_vertical_jet(ctx, eqs, 1, seed);
            const auto q = reparam_action(p, random_phi(rng, n), ctx);
            for (const auto& r : evaluate_equations(eqs, q)) CHECK(r == 0);
        }
    }
}

TEST_CASE("frame fields are invariant under reparametrization") {
    std::mt19937_64 rng(21);
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        std::vector<FrameField> fields = enumerate_frame(ctx, 1, Variant::Delta, Exec::Parallel);
        const auto v2 = enumerate_frame(ctx, 1, Variant::Wronskian, Exec::Parallel);
        for (const auto& f : v2)
            if (f.family == Family::TAlpha) fields.push_back(f);
        for (int trial = 0; trial < 5; ++trial) {
            const auto phi = random_phi(rng, n);
            std::vector<char> ok(fields.size());
            for_each_index(Exec::Parallel, fields.size(), [&](std::size_t i) { ok[i] = invariance_check(fields[i], phi, ctx); });
            for (std::size_t i = 0; i < fields.size(); ++i) {
                INFO(fields[i].label());
                CHECK(ok[i]);
            }
        }
    }
}

TEST_CASE("a non-invariant field is detected") {
    JetContext ctx(2, 3);
    VectorField f;
    f.set(Variable::jet(1, 1), jet(1, 2));  // z'' d/dz'
    const auto phi = ReparamJet::from_derivatives({Rational(1)});
    CHECK_FALSE(pushforward(f, phi, ctx) == f);
    VectorField g;
    g.set(Variable::coord(1), Polynomial(1));  // d/dz_1
    CHECK(pushforward(g, phi, ctx) == g);
}

TEST_CASE("spanning off the bad sets") {
    for (Variant variant : {Variant::Delta, Variant::Wronskian}) {
        {
            JetContext ctx(2, 3);
            const auto eqs = defining_equations_iterated(ctx);
            const auto v = spanning_check(ctx, eqs, 1, 5, 0, variant, Exec::Parallel);
            CHECK(v.passed());
            REQUIRE(v.trials.size() == 5);
            for (const auto& t : v.trials) {
                INFO(t.failure);
                CHECK(t.tangent);
                CHECK(t.rank == 25);
            }
        }
        {
            JetContext ctx(3, 4);
            const auto eqs = defining_equations_iterated(ctx);
            const auto v = spanning_check(ctx, eqs, 1, 3, 0, variant, Exec::Parallel);
            CHECK(v.passed());
            for (const auto& t : v.trials) CHECK(t.rank == 81);
        }
    }
}

TEST_CASE("spanning fails for a truncated frame") {
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    auto frame = enumerate_frame(ctx, 1);
    std::erase_if(frame, [](const FrameField& f) { return f.family == Family::TCoord; });
    const auto v = spanning_check(ctx, eqs, frame, 1, 2, 0, Variant::Delta);
    CHECK_FALSE(v.passed());
    for (const auto& t : v.trials) {
        CHECK(t.tangent);
        CHECK(t.rank < 25);
    }
}

TEST_CASE("serial and parallel spanning agree") {
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    const auto s = spanning_check(ctx, eqs, 1, 3, 7, Variant::Wronskian, Exec::Serial);
    const auto p = spanning_check(ctx, eqs, 1, 3, 7, Variant::Wronskian, Exec::Parallel);
    REQUIRE(s.trials.size() == p.trials.size());
    for (std::size_t i = 0; i < s.trials.size(); ++i) {
        CHECK(s.trials[i].seed == p.trials[i].seed);
        CHECK(s.trials[i].rank == p.trials[i].rank);
        CHECK(s.trials[i].rejected == p.trials[i].rejected);
    }
}
