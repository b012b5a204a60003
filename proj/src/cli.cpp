#include "jetframe/cli.hpp"

#include "jetframe/analysis.hpp"
#include "jetframe/frames.hpp"
#include "jetframe/jetspace.hpp"
#include "jetframe/wronskian.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace jetframe {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"equations", "wronskian", "frames", "pole-orders", "span", "invariance", "appendix"};
    return names;
}

void RunConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (d <= n) throw std::invalid_argument("d must exceed n (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    if (chart < 1 || chart > n + 1) throw std::invalid_argument("chart must lie in [1, n+1]");
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
}

std::vector<std::string> parse_suites(const std::string& list) {
    std::vector<std::string> picked;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        if (item == "all") return suite_names();
        if (std::find(suite_names().begin(), suite_names().end(), item) == suite_names().end())
            throw std::invalid_argument("unknown suite '" + item + "'");
        picked.push_back(item);
    }
    std::vector<std::string> out;
    for (const auto& s : suite_names())
        if (std::find(picked.begin(), picked.end(), s) != picked.end()) out.push_back(s);
    return out;
}

namespace {

// Collects checked items of one suite.
struct Suite {
    std::string name;
    json items = json::array();
    json summary = json::object();

    void check(const std::string& id, const json& claimed, const json& computed, bool pass) {
        items.push_back({{"id", id}, {"claimed", claimed}, {"computed", computed}, {"pass", pass}});
    }
    void equal(const std::string& id, const json& claimed, const json& computed) { check(id, claimed, computed, claimed == computed); }

    json finish(double ms) const {
        json first = nullptr;
        for (const auto& it : items)
            if (!it["pass"].get<bool>()) {
                first = it["id"];
                break;
            }
        return {{"name", name},
                {"status", first.is_null() ? "pass" : "fail"},
                {"items", items},
                {"summary", summary},
                {"first_failure", first},
                {"timing_ms", ms}};
    }
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

ReparamJet random_reparam(std::mt19937_64& rng, unsigned n) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    std::vector<Rational> higher;
    for (unsigned k = 2; k <= n; ++k) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        higher.push_back(r);
    }
    return ReparamJet::from_derivatives(higher);
}

void suite_equations(Suite& s, const RunConfig& c, const JetContext& ctx, const DefiningEquations& eqs) {
    const unsigned n = c.n;
    s.equal("equation_count", n + 1, eqs.size());
    s.equal("iterated_equals_faa_di_bruno", true, defining_equations_faa_di_bruno(ctx, c.exec) == eqs);
    s.equal("expected_dimension", ctx.ambient_variables().size() - (n + 1), ctx.expected_dimension());
    s.summary = {{"ambient", ctx.ambient_variables().size()}, {"coefficients", ctx.coefficient_count()}, {"codimension", n + 1}};
    for (unsigned t = 0; t < c.trials; ++t) {
        const std::uint64_t seed = c.seed + t;
        const auto p = sample_vertical_jet(ctx, eqs, c.chart, seed);
        const auto values = evaluate_equations(eqs, p);
        const bool on = std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 0; });
        s.equal("on_variety[seed=" + std::to_string(seed) + "]", true, on);
        s.equal("off_sigma_tilde[seed=" + std::to_string(seed) + "]", true, !in_sigma_tilde(p, ctx));
        s.equal("jacobian_rank[seed=" + std::to_string(seed) + "]", n + 1, jacobian_rank_at(p, eqs, ctx));
    }
}

void suite_wronskian(Suite& s, const RunConfig& c, const JetContext& ctx) {
    const unsigned n = c.n;
    for (unsigned chart = 1; chart <= n + 1; ++chart)
        s.equal("Delta[chart=" + std::to_string(chart) + "]", delta_closed_form(chart, n).to_string(), delta(chart, ctx).to_string());
    s.check("W_nonzero", true, !classical_W(ctx).is_zero(), !classical_W(ctx).is_zero());
    for (Variant v : {Variant::Delta, Variant::Wronskian}) {
        const auto table = cramer_table(v, c.chart, ctx, c.exec);
        std::size_t bad = 0;
        for (const auto& coeffs : table)
            for (const auto& r : cramer_residuals(coeffs, ctx))
                if (!r.is_zero()) ++bad;
        s.equal(std::string("cramer_nonzero_residuals[") + to_string(v) + "]", 0, bad);
        s.summary[std::string("cramer_alphas_") + to_string(v)] = table.size();
    }
    s.summary["Delta"] = delta(c.chart, ctx).to_string();
}

void suite_frames(Suite& s, const RunConfig& c, const JetContext& ctx, const DefiningEquations& eqs) {
    const unsigned n = c.n;
    std::vector<FrameField> fields;
    for (Variant v : {Variant::Delta, Variant::Wronskian}) {
        const unsigned chart = v == Variant::Delta ? c.chart : 1;
        for (const auto& alpha : cramer_alphas(v, chart, ctx)) fields.push_back(build_T_alpha(v, alpha, chart, ctx));
    }
    for (const auto& alpha : multi_indices_up_to(ctx.slots(), c.d))
        if (alpha.length() >= n + 1 && alpha != ctx.top_index()) fields.push_back(build_T_alpha_ell(alpha, canonical_ell(alpha, n), ctx));
    for (unsigned i = 1; i <= n + 1; ++i) fields.push_back(build_T_coord(i, ctx));

    const auto tangent = check_exact_tangency(fields, eqs, c.exec);
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // family -> (tangent, total)
    for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string key = to_string(fields[i].family);
        if (fields[i].family == Family::TAlpha) key += std::string("[") + to_string(fields[i].variant) + "]";
        auto& t = tally[key];
        t.first += tangent[i];
        ++t.second;
        if (!tangent[i]) s.check("tangent[" + fields[i].label() + "]", true, false, false);
    }
    for (const auto& [key, t] : tally) s.equal("tangent_count[" + key + "]", t.second, t.first);

    std::mt19937_64 rng(c.seed);
    for (unsigned t = 0; t < c.trials; ++t) {
        const auto lam = random_matrix(rng, n + 1);
        const auto l = solve_L_coefficients(lam, ctx, c.exec);
        const auto f = build_T_Lambda(lam, l, ctx);
        bool euler = true;
        for (std::size_t k = 0; k < eqs.size(); ++k) euler = euler && f.field.apply(eqs[k]) == -l.theta * eqs[k];
        const auto q = exact_divide(f.field.apply(eqs[0]), eqs[0]);
        const std::string tag = "[trial=" + std::to_string(t) + "]";
        s.equal("T_Lambda_E_k_equals_minus_theta_E_k" + tag, true, euler);
        s.equal("T_Lambda_E0_divisible_by_E0" + tag, true, q.has_value());
    }
    s.summary = {{"fields_checked", fields.size()}, {"lambda_trials", c.trials}};
}

void suite_pole_orders(Suite& s, const RunConfig& c, const JetContext& ctx) {
    PoleTableOptions options;
    options.chart = c.chart;
    options.seed = c.seed;
    options.exec = c.exec;
    const auto r = verify_pole_table(ctx, options);
    for (const auto& it : r.items) {
        json row{{"id", it.label()}, {"claimed", it.claimed}, {"computed", it.computed}, {"uniform", it.uniform},
                 {"method", it.method}, {"pass", it.matches()}};
        s.items.push_back(row);
        if (it.oracle)
            s.check("oracle[" + it.label() + "]", it.computed, *it.oracle, it.oracle_agrees());
    }
    s.equal("c_variant1", r.c_variant1_claimed, r.c_variant1_computed);
    s.equal("c_variant2", r.c_variant2_claimed, r.c_variant2_computed);
    s.summary = {{"c_variant1", r.c_variant1_computed}, {"c_variant2", r.c_variant2_computed},
                 {"c_variant1_claimed", r.c_variant1_claimed}, {"c_variant2_claimed", r.c_variant2_claimed},
                 {"oracle_run", r.oracle_run()}};
    if (r.oracle_run()) {
        s.summary["c_variant1_oracle"] = *r.c_variant1_oracle;
        s.summary["c_variant2_oracle"] = *r.c_variant2_oracle;
    }
}

void suite_span(Suite& s, const RunConfig& c, const JetContext& ctx, const DefiningEquations& eqs) {
    for (Variant v : {Variant::Delta, Variant::Wronskian}) {
        const auto verdict = spanning_check(ctx, eqs, c.chart, c.trials, c.seed, v, c.exec);
        const std::string tag = to_string(v);
        for (const auto& t : verdict.trials) {
            const std::string id = "[" + tag + ",seed=" + std::to_string(t.seed) + "]";
            s.check("tangent" + id, true, t.tangent, t.tangent);
            s.check("rank" + id, t.expected_rank, t.rank, t.passed());
        }
        s.summary[tag] = {{"frame_size", verdict.frame_size},
                          {"expected_rank", ctx.ambient_variables().size() - (c.n + 1)},
                          {"rejected", [&] {
                               unsigned r = 0;
                               for (const auto& t : verdict.trials) r += t.rejected;
                               return r;
                           }()}};
    }
}

void suite_invariance(Suite& s, const RunConfig& c, const JetContext& ctx) {
    std::vector<FrameField> fields = enumerate_frame(ctx, c.chart, Variant::Delta, c.exec);
    for (const auto& f : enumerate_frame(ctx, 1, Variant::Wronskian, c.exec))
        if (f.family == Family::TAlpha) fields.push_back(f);
    std::mt19937_64 rng(c.seed);
    for (unsigned t = 0; t < c.trials; ++t) {
        const auto phi = random_reparam(rng, c.n);
        std::vector<char> ok(fields.size());
        for_each_index(c.exec, fields.size(), [&](std::size_t i) { ok[i] = invariance_check(fields[i], phi, ctx); });
        std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            auto& e = tally[to_string(fields[i].family)];
            e.first += ok[i];
            ++e.second;
        }
        for (const auto& [family, e] : tally)
            s.equal("invariant[" + family + ",trial=" + std::to_string(t) + "]", e.second, e.first);
    }
    const auto c3 = reparam_coefficients(ReparamJet::from_derivatives({Rational(1), Rational(1)}));
    s.equal("order3_coefficient_phi2_z2", 3, c3[3][2].get_num().get_si());
    s.summary = {{"fields", fields.size()}, {"phi_trials", c.trials}};
}

void suite_appendix(Suite& s, const RunConfig& c) {
    for (unsigned m = 1; m <= c.n; ++m) s.equal("appendix_identity[n=" + std::to_string(m) + "]", true, appendix_identity_check(m));
}

}  // namespace

json run(const RunConfig& config) {
    config.validate();
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const JetContext ctx(config.n, config.d);
    const auto eqs = defining_equations_iterated(ctx, config.exec);

    json suites = json::array();
    json first = nullptr;
    for (const auto& name : suite_names()) {
        if (std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) continue;
        Suite s{name};
        const auto t0 = clock::now();
        if (name == "equations") suite_equations(s, config, ctx, eqs);
        else if (name == "wronskian") suite_wronskian(s, config, ctx);
        else if (name == "frames") suite_frames(s, config, ctx, eqs);
        else if (name == "pole-orders") suite_pole_orders(s, config, ctx);
        else if (name == "span") suite_span(s, config, ctx, eqs);
        else if (name == "invariance") suite_invariance(s, config, ctx);
        else if (name == "appendix") suite_appendix(s, config);
        json done = s.finish(std::chrono::duration<double, std::milli>(clock::now() - t0).count());
        if (first.is_null() && !done["first_failure"].is_null()) first = name + ": " + done["first_failure"].get<std::string>();
        suites.push_back(std::move(done));
    }
    return {{"schema_version", kSchemaVersion},
            {"artifact_version", kArtifactVersion},
            {"parameters",
             {{"n", config.n}, {"d", config.d}, {"chart", config.chart}, {"seed", config.seed}, {"trials", config.trials}, {"suites", config.suites}}},
            {"status", first.is_null() ? "pass" : "fail"},
            {"first_failure", first},
            {"suites", suites},
            {"timing_ms", std::chrono::duration<double, std::milli>(clock::now() - start).count()}};
}

bool report_passed(const json& report) { return report.at("status") == "pass"; }

json strip_timing(json report) {
    std::function<void(json&)> strip = [&](json& j) {
        if (j.is_object()) {
            j.erase("timing_ms");
            for (auto& [k, v] : j.items()) strip(v);
        } else if (j.is_array()) {
            for (auto& v : j) strip(v);
        }
    };
    strip(report);
    return report;
}

json report_schema() {
    const json value = {{"type", json::array({"integer", "string", "boolean"})}};
    const json item = {{"type", "object"},
                       {"required", {"id", "claimed", "computed", "pass"}},
                       {"properties", {{"id", {{"type", "string"}}}, {"claimed", value}, {"computed", value}, {"pass", {{"type", "boolean"}}}}}};
    const json suite = {
        {"type", "object"},
        {"required", {"name", "status", "items", "summary", "first_failure", "timing_ms"}},
        {"additionalProperties", false},
        {"properties",
         {{"name", {{"enum", suite_names()}}},
          {"status", {{"enum", {"pass", "fail"}}}},
          {"items", {{"type", "array"}, {"items", item}}},
          {"summary", {{"type", "object"}}},
          {"first_failure", {{"type", json::array({"string", "null"})}}},
          {"timing_ms", {{"type", "number"}, {"minimum", 0}}}}}};
    return {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
            {"$id", std::string("jetframe-report-") + kSchemaVersion},
            {"title", "jetframe verification report"},
            {"type", "object"},
            {"required", {"schema_version", "artifact_version", "parameters", "status", "first_failure", "suites", "timing_ms"}},
            {"additionalProperties", false},
            {"properties",
             {{"schema_version", {{"const", kSchemaVersion}}},
              {"artifact_version", {{"type", "string"}}},
              {"parameters",
               {{"type", "object"},
                {"required", {"n", "d", "chart", "seed", "trials", "suites"}},
                {"properties",
                 {{"n", {{"type", "integer"}, {"minimum", 1}}},
                  {"d", {{"type", "integer"}, {"minimum", 2}}},
                  {"chart", {{"type", "integer"}, {"minimum", 1}}},
                  {"seed", {{"type", "integer"}, {"minimum", 0}}},
                  {"trials", {{"type", "integer"}, {"minimum", 0}}},
                  {"suites", {{"type", "array"}, {"items", {{"enum", suite_names()}}}}}}}}},
              {"status", {{"enum", {"pass", "fail"}}}},
              {"first_failure", {{"type", json::array({"string", "null"})}}},
              {"suites", {{"type", "array"}, {"items", suite}}},
              {"timing_ms", {{"type", "number"}, {"minimum", 0}}}}}};
}

std::string render_text(const json& report) {
    std::ostringstream os;
    const auto& p = report.at("parameters");
    os << "jetframe " << report.at("artifact_version").get<std::string>() << "  n=" << p.at("n") << " d=" << p.at("d")
       << " chart=" << p.at("chart") << " seed=" << p.at("seed") << " trials=" << p.at("trials") << "\n";
    for (const auto& s : report.at("suites")) {
        std::size_t passed = 0;
        for (const auto& it : s.at("items")) passed += it.at("pass").get<bool>();
        os << "  " << s.at("name").get<std::string>() << ": " << s.at("status").get<std::string>() << " (" << passed << "/"
           << s.at("items").size() << ")\n";
        for (const auto& it : s.at("items"))
            if (!it.at("pass").get<bool>())
                os << "    FAIL " << it.at("id").get<std::string>() << "  claimed " << it.at("claimed").dump() << "  computed "
                   << it.at("computed").dump() << "\n";
        if (!s.at("summary").empty()) os << "    summary " << s.at("summary").dump() << "\n";
    }
    os << "status: " << report.at("status").get<std::string>() << "\n";
    return os.str();
}

}  // namespace jetframe
