// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "jetframe/analysis.hpp"
#include "jetframe/cli.hpp"
#include "jetframe/frames.hpp"

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

using namespace jetframe;

namespace {

// Time limits in seconds.
constexpr double kLimitWronskian = 30;
constexpr double kLimitEquations = 60;
constexpr double kLimitTangency = 120;
constexpr double kLimitTLambda = 120;
constexpr double kLimitPoleLedger = 10;
constexpr double kLimitOracle = 300;
constexpr double kLimitSpanning = 300;

constexpr unsigned kWronskianMaxN = 5;
constexpr unsigned kPoleMinN = 2, kPoleMaxN = 6;
constexpr unsigned kTLambdaMatrices = 5, kTLambdaPoints = 20;
constexpr unsigned kSpanPointsN2 = 5, kSpanPointsN3 = 3;
constexpr unsigned kCodimPoints = 10;
constexpr unsigned kReparamDraws = 5;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Criteria {
public:
    void run(int id, const std::string& name, double limit, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limit > 0 && s >= limit) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("time limit exceeded");
        }
        all_ &= o.pass;
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << s << "s";
        if (limit > 0) t << " < " << limit << "s";
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << name << "  [" << t.str() << "]  " << o.detail << std::endl;
    }
    bool all() const { return all_; }

private:
    bool all_ = true;
};

Matrix<Rational> random_matrix(std::mt19937_64& rng, unsigned size) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    Matrix<Rational> m(size, std::vector<Rational>(size));
    for (auto& row : m)
        for (auto& x : row) {
            x = Rational(num(rng), den(rng));
            x.canonicalize();
        }
    return m;
}

Outcome wronskian_identity() {
    for (unsigned n = 1; n <= kWronskianMaxN; ++n) {
        JetContext ctx(n, n + 1);
        for (unsigned chart = 1; chart <= n + 1; ++chart)
            if (delta(chart, ctx) != delta_closed_form(chart, n))
                return {false, "n=" + std::to_string(n) + " chart=" + std::to_string(chart)};
    }
    return {true, "n=1..5, every chart"};
}

Outcome equation_cross_check() {
    for (auto [n, d] : std::array<std::pair<unsigned, unsigned>, 4>{{{1, 2}, {2, 3}, {3, 4}, {4, 5}}}) {
        JetContext ctx(n, d);
        if (defining_equations_iterated(ctx, Exec::Parallel) != defining_equations_faa_di_bruno(ctx, Exec::Parallel))
            return {false, "routes differ at n=" + std::to_string(n)};
    }
    // Orders three and four at n = 4; ordered-index multiplicities and partial derivatives divided out.
    JetContext ctx(4, 5);
    const auto eqs = defining_equations_iterated(ctx);
    const Variable a11 = Variable::coeff(MultiIndex{1, 1, 0, 0, 0});
    const Variable a111 = Variable::coeff(MultiIndex{1, 1, 1, 0, 0});
    const Variable a2 = Variable::coeff(MultiIndex{0, 2, 0, 0, 0});
    auto coeff = [&](unsigned kappa, std::vector<VarPower> p) { return eqs[kappa].coefficient(Monomial::from_powers(std::move(p))); };
    const Rational k3 = coeff(3, {{a11, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 2), 1}});
    const Rational k4a = coeff(4, {{a11, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 3), 1}});
    const Rational k4b = coeff(4, {{a2, 1}, {Variable::jet(2, 2), 2}}) / 2;
    const Rational k4c = coeff(4, {{a111, 1}, {Variable::jet(1, 1), 1}, {Variable::jet(2, 1), 1}, {Variable::jet(3, 2), 1}}) / 2;
    std::ostringstream os;
    os << "kappa=3: " << k3 << "; kappa=4: " << k4a << ", " << k4b << ", " << k4c;
    return {k3 == 3 && k4a == 4 && k4b == 3 && k4c == 6, os.str()};
}

Outcome exact_tangency() {
    std::size_t total = 0;
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx, Exec::Parallel);
        std::vector<FrameField> fields;
        for (unsigned chart = 1; chart <= n + 1; ++chart)
            for (const auto& alpha : cramer_alphas(Variant::Delta, chart, ctx))
                fields.push_back(build_T_alpha(Variant::Delta, alpha, chart, ctx));
        for (const auto& alpha : cramer_alphas(Variant::Wronskian, 1, ctx)) fields.push_back(build_T_alpha(Variant::Wronskian, alpha, 1, ctx));
        for (const auto& alpha : multi_indices_up_to(ctx.slots(), ctx.d())) {
            if (alpha.length() < n + 1 || alpha == ctx.top_index()) continue;
            for (const auto& ell : sub_indices(alpha))
                if (ell.length() == n + 1) fields.push_back(build_T_alpha_ell(alpha, ell, ctx));
        }
        for (unsigned i = 1; i <= n + 1; ++i) fields.push_back(build_T_coord(i, ctx));
        const auto ok = check_exact_tangency(fields, eqs, Exec::Parallel);
        for (std::size_t i = 0; i < fields.size(); ++i)
            if (!ok[i]) return {false, fields[i].label() + " at n=" + std::to_string(n)};
        total += fields.size();
    }
    return {true, std::to_string(total) + " fields annihilate every E_k"};
}

Outcome t_lambda() {
    JetContext ctx(2, 3);
    const auto eqs = defining_equations_iterated(ctx);
    std::mt19937_64 rng(kSeed);
    std::size_t points = 0;
    for (unsigned t = 0; t < kTLambdaMatrices; ++t) {
        const auto lam = random_matrix(rng, 3);
        const auto l = solve_L_coefficients(lam, ctx, Exec::Parallel);
        const auto f = build_T_Lambda(lam, l, ctx);
        for (unsigned s = 0; s < kTLambdaPoints; ++s) {
            const auto p = sample_vertical_jet(ctx, eqs, 1 + s % 3, kSeed + 100 * t + s);
            for (const Rational& v : evaluate_equations(eqs, p))
                if (v != 0) return {false, "sampled point not on the variety"};
            for (const Rational& v : tangency_values_at(f, eqs, p))
                if (v != 0) return {false, "T_Lambda(E_k) nonzero at a certified point"};
            ++points;
        }
        if (!exact_divide(f.field.apply(eqs[0]), eqs[0])) return {false, "T_Lambda(E_0) not divisible by E_0"};
    }
    const auto sym = solve_L_coefficients(symbolic_lambda(3), ctx, Exec::Parallel);
    const auto is_a = [](Variable v) { return v.tag() == VarTag::Coeff; };
    const auto is_m = [](Variable v) { return v.tag() == VarTag::Mat; };
    for (const auto& alpha : multi_indices_up_to(ctx.slots(), ctx.d()))
        for (const auto& beta : multi_indices_up_to(ctx.slots(), ctx.n())) {
            const Polynomial& value = sym.at(alpha, beta);
            if (alpha.length() + beta.length() >= ctx.d() + 1 && !value.is_zero())
                return {false, "L nonzero with |alpha|+|beta| >= d+1"};
            for (const auto& [m, c] : value.terms()) {
                unsigned da = 0, dm = 0;
                for (const auto& vp : m.powers()) {
                    if (is_a(vp.var)) da += vp.exp;
                    if (is_m(vp.var)) dm += vp.exp;
                }
                if (da > 1 || dm != 1) return {false, "L not bilinear in (a, Lambda)"};
            }
        }
    return {true, std::to_string(points) + " certified points, " + std::to_string(sym.table.size()) + " L entries"};
}

Outcome pole_ledger() {
    std::size_t items = 0;
    std::vector<std::string> bad;
    std::ostringstream cs;
    for (unsigned n = kPoleMinN; n <= kPoleMaxN; ++n) {
        PoleTableOptions options;
        options.run_oracle = false;
        options.seed = kSeed;
        options.exec = Exec::Parallel;
        const auto r = verify_pole_table(JetContext(n, n + 1), options);
        items += r.items.size();
        for (const auto* it : r.mismatches())
            bad.push_back(it->label() + "@n=" + std::to_string(n) + ":" + std::to_string(it->computed) + "!=" + std::to_string(it->claimed));
        if (r.c_variant1_computed != r.c_variant1_claimed || r.c_variant2_computed != r.c_variant2_claimed)
            bad.push_back("c_n@n=" + std::to_string(n));
        cs << (n == kPoleMinN ? "" : ",") << r.c_variant1_computed << "/" << r.c_variant2_computed;
    }
    std::ostringstream os;
    os << items - bad.size() << "/" << items << " items match; c_n(v1/v2) n=2..6: " << cs.str();
    if (!bad.empty()) {
        os << "; mismatches:";
        for (const auto& b : bad) os << " " << b;
    }
    return {bad.empty(), os.str()};
}

Outcome oracle_agreement() {
    std::ostringstream os;
    bool pass = true;
    const auto start = std::chrono::steady_clock::now();
    for (unsigned n : {2u, 3u}) {
        if (n == 3 && std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > kLimitOracle / 2) {
            os << " n=3 skipped for budget;";
            break;
        }
        PoleTableOptions options;
        options.oracle_up_to = 3;
        options.seed = kSeed;
        options.exec = Exec::Parallel;
        const auto r = verify_pole_table(JetContext(n, n + 1), options);
        const auto bad = r.oracle_mismatches();
        pass = pass && r.oracle_agrees();
        os << " n=" << n << ": " << r.items.size() - bad.size() << "/" << r.items.size() << " agree, oracle c_n(v1/v2) "
           << *r.c_variant1_oracle << "/" << *r.c_variant2_oracle << " vs weight " << r.c_variant1_computed << "/"
           << r.c_variant2_computed;
        for (const auto* it : bad)
            if (it->object != "B") os << ", " << it->label() << " oracle " << *it->oracle << " weight " << it->computed;
        os << ";";
    }
    return {pass, os.str()};
}

Outcome spanning() {
    std::ostringstream os;
    bool pass = true;
    for (auto [n, points] : std::array<std::pair<unsigned, unsigned>, 2>{{{2, kSpanPointsN2}, {3, kSpanPointsN3}}}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx, Exec::Parallel);
        for (Variant v : {Variant::Delta, Variant::Wronskian}) {
            const auto verdict = spanning_check(ctx, eqs, 1, points, kSeed, v, Exec::Parallel);
            std::size_t min_rank = ctx.ambient_variables().size();
            for (const auto& t : verdict.trials) min_rank = std::min(min_rank, t.rank);
            pass = pass && verdict.passed() && verdict.trials.size() == points;
            os << " n=" << n << " " << to_string(v) << ": rank " << min_rank << "/" << ctx.ambient_variables().size() - (n + 1)
               << " at " << verdict.trials.size() << " points;";
        }
    }
    return {pass, os.str()};
}

Outcome codimension() {
    std::ostringstream os;
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        const auto eqs = defining_equations_iterated(ctx, Exec::Parallel);
        for (unsigned s = 0; s < kCodimPoints; ++s) {
            const auto p = sample_vertical_jet(ctx, eqs, 1 + s % (n + 1), kSeed + s);
            if (in_sigma_tilde(p, ctx)) return {false, "sample landed in the bad set"};
            if (jacobian_rank_at(p, eqs, ctx) != n + 1) return {false, "rank deficit at n=" + std::to_string(n)};
        }
        os << " n=" << n << ": rank " << n + 1 << " at " << kCodimPoints << " points;";
    }
    return {true, os.str()};
}

Outcome invariance() {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    std::size_t checks = 0;
    for (unsigned n : {2u, 3u}) {
        JetContext ctx(n, n + 1);
        auto fields = enumerate_frame(ctx, 1, Variant::Delta, Exec::Parallel);
        for (const auto& f : enumerate_frame(ctx, 1, Variant::Wronskian, Exec::Parallel))
            if (f.family == Family::TAlpha) fields.push_back(f);
        for (unsigned t = 0; t < kReparamDraws; ++t) {
            std::vector<Rational> higher;
            for (unsigned k = 2; k <= n; ++k) {
                Rational r(num(rng), den(rng));
                r.canonicalize();
                higher.push_back(r);
            }
            const auto phi = ReparamJet::from_derivatives(higher);
            std::vector<char> ok(fields.size());
            for_each_index(Exec::Parallel, fields.size(), [&](std::size_t i) { ok[i] = invariance_check(fields[i], phi, ctx); });
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (!ok[i]) return {false, fields[i].label() + " not invariant at n=" + std::to_string(n)};
            checks += fields.size();
        }
    }
    // Order-3 display: w''' = z''' + 3 phi'' z'' + phi''' z'.
    JetContext ctx(3, 4);
    const Rational p2(2), p3(5);
    const auto sub = reparam_substitution(ReparamJet::from_derivatives({p2, p3}), ctx);
    const Polynomial expected = Polynomial(Variable::jet(1, 3)) + Rational(3) * p2 * Polynomial(Variable::jet(1, 2)) + p3 * Polynomial(Variable::jet(1, 1));
    if (sub.at(Variable::jet(1, 3)) != expected) return {false, "order-3 action differs from w''' = z''' + 3 phi'' z'' + phi''' z'"};
    return {true, std::to_string(checks) + " field/phi pairs invariant; order-3 coefficient on phi'' z'' is 3"};
}

nlohmann::json cli_report(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" --output json " + args;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) throw std::runtime_error("cannot run " + cli);
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0;) out.append(buf.data(), got);
    return nlohmann::json::parse(out);
}

Outcome determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no CLI path given"};
    const std::string args = "--n 2 --d 3 --seed " + std::to_string(kSeed) + " --trials 3 2>/dev/null";
    const auto a = strip_timing(cli_report(cli, args));
    const auto b = strip_timing(cli_report(cli, args));
    const std::string da = a.dump(), db = b.dump();
    return {da == db, "two runs, " + std::to_string(da.size()) + " bytes each, " + (da == db ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    CLI::App app{"jetframe acceptance criteria"};
    app.add_option("--cli", cli, "Path to jetframe_cli for the determinism criterion");
    CLI11_PARSE(app, argc, argv);

    Criteria c;
    c.run(1, "Wronskian identity", kLimitWronskian, wronskian_identity);
    c.run(2, "Equation cross-check", kLimitEquations, equation_cross_check);
    c.run(3, "Exact tangency", kLimitTangency, exact_tangency);
    c.run(4, "T_Lambda tangency", kLimitTLambda, t_lambda);
    c.run(5, "Pole-order ledger", kLimitPoleLedger, pole_ledger);
    c.run(6, "Oracle agreement", kLimitOracle, oracle_agreement);
    c.run(7, "Spanning", kLimitSpanning, spanning);
    c.run(8, "Codimension", 0, codimension);
    c.run(9, "Reparametrization invariance", 0, invariance);
    c.run(10, "Determinism", 0, [&] { return determinism(cli); });
    std::cout << (c.all() ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
    return c.all() ? 0 : 1;
}
