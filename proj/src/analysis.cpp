#include "jetframe/analysis.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace jetframe {

// ------------------------------------------------------------------ pole orders

long pole_weight(Variable v) {
    switch (v.tag()) {
        case VarTag::Coord: return 1;
        case VarTag::Jet: return static_cast<long>(v.order()) + 1;
        default: throw std::invalid_argument("pole order is defined on Coord/Jet polynomials only, got " + v.name());
    }
}

PoleOrder pole_order(const Polynomial& p) {
    PoleOrder out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        long w = 0;
        for (const auto& vp : m.powers()) w += pole_weight(vp.var) * vp.exp;
        if (first) {
            out.order = w;
            first = false;
        } else if (w != out.order) {
            out.uniform = false;
            out.order = std::max(out.order, w);
        }
    }
    return out;
}

namespace {

// Divides out the largest power of z_upsilon common to all terms.
void reduce(ChartChange& q, Variable zu) {
    if (q.numerator.is_zero()) {
        q.pole_exponent = 0;
        return;
    }
    unsigned common = ~0u;
    for (const auto& [m, c] : q.numerator.terms()) common = std::min(common, m.exponent(zu));
    if (common == 0) return;
    Polynomial r;
    for (const auto& [m, c] : q.numerator.terms()) r.add_term(m.with_exponent(zu, m.exponent(zu) - common), c);
    q.numerator = std::move(r);
    q.pole_exponent -= common;
}

}  // namespace

ChartChange chart_change_oracle(const Polynomial& p, unsigned upsilon, const JetContext& ctx) {
    const unsigned n = ctx.n();
    if (upsilon < 1 || upsilon > n + 1) throw std::invalid_argument("chart index out of range");
    const Variable zu = Variable::coord(upsilon);
    const Polynomial zu_p(zu), zu1(Variable::jet(upsilon, 1));

    // Images of every Coord/Jet variable as numerator / z_upsilon^e.
    std::unordered_map<Variable, ChartChange> image;
    for (unsigned j = 1; j <= n + 1; ++j) {
        ChartChange q{j == upsilon ? Polynomial(1) : Polynomial(Variable::coord(j)), 1};
        image[Variable::coord(j)] = q;
        for (unsigned lambda = 1; lambda <= n; ++lambda) {
            ChartChange next{total_derivative(q.numerator, ctx) * zu_p - Rational(q.pole_exponent) * q.numerator * zu1, q.pole_exponent + 1};
            reduce(next, zu);
            image[Variable::jet(j, lambda)] = next;
            q = next;
        }
    }

    std::vector<ChartChange> parts;
    long top = 0;
    for (const auto& [m, c] : p.terms()) {
        ChartChange t{Polynomial(c), 0};
        for (const auto& vp : m.powers()) {
            auto it = image.find(vp.var);
            if (it == image.end()) throw std::invalid_argument("chart change is defined on Coord/Jet polynomials only");
            t.numerator *= it->second.numerator.pow(vp.exp);
            t.pole_exponent += it->second.pole_exponent * vp.exp;
        }
        top = std::max(top, t.pole_exponent);
        parts.push_back(std::move(t));
    }
    ChartChange out{Polynomial(), top};
    for (const auto& t : parts) out.numerator += t.numerator * zu_p.pow(top - t.pole_exponent);
    reduce(out, zu);
    return out;
}

long oracle_pole_order(const Polynomial& p, const JetContext& ctx, Exec exec) {
    const unsigned n = ctx.n();
    std::vector<long> e(n + 1);
    for_each_index(exec, n + 1, [&](std::size_t u) { e[u] = chart_change_oracle(p, static_cast<unsigned>(u + 1), ctx).pole_exponent; });
    return *std::max_element(e.begin(), e.end());
}

std::string PoleItem::label() const {
    std::ostringstream os;
    os << object;
    if (!variant.empty()) os << "[" << variant;
    if (object == "Delta" || (object == "B" && variant == "delta")) os << (variant.empty() ? "[" : ",") << "chart=" << chart;
    if (object == "B") os << ",alpha=" << alpha.to_string() << ",k=" << k;
    if (!variant.empty() || object == "Delta") os << "]";
    return os.str();
}

bool PoleOrderReport::all_match() const {
    return mismatches().empty() && c_variant1_claimed == c_variant1_computed && c_variant2_claimed == c_variant2_computed;
}

bool PoleOrderReport::oracle_agrees() const {
    return oracle_mismatches().empty() && c_variant1_oracle == c_variant1_computed && c_variant2_oracle == c_variant2_computed;
}

std::vector<const PoleItem*> PoleOrderReport::oracle_mismatches() const {
    std::vector<const PoleItem*> out;
    for (const auto& it : items)
        if (!it.oracle_agrees()) out.push_back(&it);
    return out;
}

std::vector<const PoleItem*> PoleOrderReport::mismatches() const {
    std::vector<const PoleItem*> out;
    for (const auto& it : items)
        if (!it.matches()) out.push_back(&it);
    return out;
}

long claimed_delta_order(unsigned n) { return static_cast<long>(n * n + n); }
long claimed_W_order(unsigned n) { return static_cast<long>((n + 1) * (n + 2) / 2); }

long claimed_B_order(Variant v, unsigned n, unsigned alpha_length, unsigned k) {
    const long a = alpha_length;
    if (v == Variant::Delta) return a + static_cast<long>(n * n + n) - (k == 0 ? 0 : static_cast<long>(k));
    return a + (k == 0 ? static_cast<long>(n * n + 3 * n) / 2 : static_cast<long>(n * n + 3 * n - 2) / 2);
}

long claimed_c(Variant v, unsigned n) {
    return v == Variant::Delta ? static_cast<long>(n * n + 2 * n) : static_cast<long>(n * n + 5 * n) / 2;
}

Rational jet_value(const MultiIndex& beta, unsigned kappa, const JetPoint& p, unsigned n) {
    std::vector<Rational> prod(n + 1);
    prod[0] = 1;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        std::vector<Rational> zj(n + 1);
        for (unsigned lambda = 0; lambda <= n; ++lambda)
            zj[lambda] = p[Variable::jet_or_coord(static_cast<unsigned>(j + 1), lambda)] / factorial(lambda);
        for (unsigned e = 0; e < beta[j]; ++e) {
            std::vector<Rational> next(n + 1);
            for (unsigned a = 0; a <= n; ++a)
                for (unsigned b = 0; a + b <= n; ++b) next[a + b] += prod[a] * zj[b];
            prod = std::move(next);
        }
    }
    return prod[kappa] * factorial(kappa);
}

namespace {

JetPoint random_jet_point(const JetContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 5);
    JetPoint p;
    for (Variable v : ctx.ambient_variables()) {
        if (!v.is_jet_like()) continue;
        Rational r(num(rng), den(rng));
        r.canonicalize();
        p.assignment[v] = r;
    }
    return p;
}

// Graded route: everything is decided by weights of the columns and one exact evaluation.
struct GradedSystem {
    std::vector<MultiIndex> column_betas;  // graph monomials z^beta defining the columns
    std::vector<std::vector<Rational>> columns;
    long base_weight = 0;  // sum of row weights (1 + ... + n)
};

Rational det_with(const GradedSystem& g, std::size_t replace, const std::vector<Rational>* col) {
    const std::size_t n = g.columns.size();
    Matrix<Rational> m(n, std::vector<Rational>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m[r][c] = (col && c == replace) ? (*col)[r] : g.columns[c][r];
    return determinant(m);
}

std::vector<Rational> column_at(const MultiIndex& beta, const JetPoint& p, unsigned n) {
    std::vector<Rational> col;
    for (unsigned kappa = 1; kappa <= n; ++kappa) col.push_back(jet_value(beta, kappa, p, n));
    return col;
}

Rational monomial_at(const MultiIndex& beta, const JetPoint& p) {
    Rational r(1);
    for (std::size_t j = 0; j < beta.size(); ++j)
        for (unsigned e = 0; e < beta[j]; ++e) r *= p[Variable::coord(static_cast<unsigned>(j + 1))];
    return r;
}

// Graded pole orders of B_0..B_n for one alpha; -1 marks an object that vanished at every probe.
std::vector<long> graded_B_orders(Variant variant, unsigned chart, const MultiIndex& alpha, const JetContext& ctx, const std::vector<JetPoint>& probes) {
    const unsigned n = ctx.n();
    const auto graph = graph_indices(variant, chart, ctx);
    long den_weight = 0;
    for (unsigned k = 1; k <= n; ++k) den_weight += static_cast<long>(k) + graph[k].length();
    std::vector<long> weight(n + 1);
    weight[0] = den_weight + alpha.length();
    for (unsigned k = 1; k <= n; ++k) weight[k] = den_weight - graph[k].length() + alpha.length();

    std::vector<bool> seen(n + 1, false);
    for (const auto& p : probes) {
        GradedSystem g;
        for (unsigned k = 1; k <= n; ++k) g.columns.push_back(column_at(graph[k], p, n));
        const auto rhs = column_at(alpha, p, n);
        const Rational den = det_with(g, 0, nullptr);
        Rational b0 = den * monomial_at(alpha, p);
        for (unsigned k = 1; k <= n; ++k) {
            const Rational bk = det_with(g, k - 1, &rhs);
            if (bk != 0) seen[k] = true;
            b0 -= bk * monomial_at(graph[k], p);
        }
        if (b0 != 0) seen[0] = true;
        if (std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) break;
    }
    for (unsigned k = 0; k <= n; ++k)
        if (!seen[k]) weight[k] = -1;
    return weight;
}

long graded_det_order(Variant variant, unsigned chart, const JetContext& ctx, const std::vector<JetPoint>& probes) {
    const unsigned n = ctx.n();
    const auto graph = graph_indices(variant, chart, ctx);
    long w = 0;
    for (unsigned k = 1; k <= n; ++k) w += static_cast<long>(k) + graph[k].length();
    for (const auto& p : probes) {
        GradedSystem g;
        for (unsigned k = 1; k <= n; ++k) g.columns.push_back(column_at(graph[k], p, n));
        if (det_with(g, 0, nullptr) != 0) return w;
    }
    return -1;
}

}  // namespace

PoleOrderReport verify_pole_table(const JetContext& ctx, const PoleTableOptions& options) {
    const unsigned n = ctx.n();
    const unsigned chart = options.chart;
    if (chart < 1 || chart > n + 1) throw std::invalid_argument("chart index out of range");
    const bool symbolic = n <= options.symbolic_up_to;
    const bool oracle = symbolic && options.run_oracle && n <= options.oracle_up_to;

    PoleOrderReport report;
    report.n = n;

    std::mt19937_64 rng(options.seed);
    std::vector<JetPoint> probes;
    for (int i = 0; i < 4; ++i) probes.push_back(random_jet_point(ctx, rng));

    auto fill = [&](PoleItem& item, const Polynomial* poly, long graded) {
        if (poly) {
            const PoleOrder po = pole_order(*poly);
            item.computed = poly->is_zero() ? -1 : po.order;
            item.uniform = po.uniform;
            item.method = "symbolic";
            if (oracle) item.oracle = poly->is_zero() ? -1 : oracle_pole_order(*poly, ctx);
        } else {
            item.computed = graded;
            item.uniform = graded >= 0;
            item.method = "graded";
        }
    };

    {
        PoleItem d{"Delta", "", chart, {}, -1, claimed_delta_order(n), 0, std::nullopt, true, ""};
        PoleItem w{"W", "", 0, {}, -1, claimed_W_order(n), 0, std::nullopt, true, ""};
        if (symbolic) {
            const Polynomial dp = delta(chart, ctx), wp = classical_W(ctx);
            fill(d, &dp, 0);
            fill(w, &wp, 0);
        } else {
            fill(d, nullptr, graded_det_order(Variant::Delta, chart, ctx, probes));
            fill(w, nullptr, graded_det_order(Variant::Wronskian, 1, ctx, probes));
        }
        report.items.push_back(d);
        report.items.push_back(w);
    }

    for (Variant variant : {Variant::Delta, Variant::Wronskian}) {
        const unsigned vchart = variant == Variant::Delta ? chart : 1;
        const auto alphas = cramer_alphas(variant, vchart, ctx);
        std::vector<std::vector<PoleItem>> rows(alphas.size());
        for_each_index(options.exec, alphas.size(), [&](std::size_t ai) {
            const MultiIndex& alpha = alphas[ai];
            std::optional<CramerCoefficients> c;
            std::vector<long> graded;
            if (symbolic)
                c = cramer_B(variant, alpha, vchart, ctx);
            else
                graded = graded_B_orders(variant, vchart, alpha, ctx, probes);
            for (unsigned k = 0; k <= n; ++k) {
                PoleItem item{"B", to_string(variant), variant == Variant::Delta ? chart : 0, alpha, static_cast<int>(k),
                              claimed_B_order(variant, n, alpha.length(), k), 0, std::nullopt, true, ""};
                fill(item, c ? &c->B[k] : nullptr, c ? 0 : graded[k]);
                rows[ai].push_back(std::move(item));
            }
        });
        long cmax = 0, omax = 0;
        for (auto& row : rows)
            for (auto& item : row) {
                cmax = std::max(cmax, item.computed);
                if (item.oracle) omax = std::max(omax, *item.oracle);
                report.items.push_back(std::move(item));
            }
        if (variant == Variant::Delta) {
            report.c_variant1_claimed = claimed_c(variant, n);
            report.c_variant1_computed = cmax;
            if (oracle) report.c_variant1_oracle = omax;
        } else {
            report.c_variant2_claimed = claimed_c(variant, n);
            report.c_variant2_computed = cmax;
            if (oracle) report.c_variant2_oracle = omax;
        }
    }
    return report;
}

// ------------------------------------------------------------------ reparametrization

ReparamJet ReparamJet::identity(unsigned n) {
    ReparamJet r;
    r.phi.assign(n + 1, Rational(0));
    r.phi[1] = 1;
    return r;
}

ReparamJet ReparamJet::from_derivatives(const std::vector<Rational>& higher) {
    ReparamJet r = identity(static_cast<unsigned>(higher.size()) + 1);
    for (std::size_t k = 0; k < higher.size(); ++k) r.phi[k + 2] = higher[k];
    return r;
}

Matrix<Rational> reparam_coefficients(const ReparamJet& phi) {
    const unsigned n = phi.order();
    // Partial Bell polynomials B_{l,m}(phi', phi'', ...) with phi' = 1.
    Matrix<Rational> b(n + 1, std::vector<Rational>(n + 1));
    b[0][0] = 1;
    for (unsigned l = 1; l <= n; ++l)
        for (unsigned m = 1; m <= l; ++m)
            for (unsigned i = 1; i <= l - m + 1; ++i) b[l][m] += binomial(l - 1, i - 1) * phi.phi[i] * b[l - i][m - 1];
    return b;
}

namespace {

// Composition f(g) of truncated series with g(0) = 0.
std::vector<Rational> compose(const std::vector<Rational>& f, const std::vector<Rational>& g) {
    const std::size_t len = f.size();
    std::vector<Rational> out(len), power(len);
    power[0] = 1;
    for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t i = 0; i < len; ++i) out[i] += f[k] * power[i];
        std::vector<Rational> next(len);
        for (std::size_t a = 0; a < len; ++a)
            for (std::size_t b = 0; a + b < len; ++b) next[a + b] += power[a] * g[b];
        power = std::move(next);
    }
    return out;
}

}  // namespace

ReparamJet inverse(const ReparamJet& phi) {
    const unsigned n = phi.order();
    std::vector<Rational> f(n + 1);
    for (unsigned k = 1; k <= n; ++k) f[k] = phi.phi[k] / factorial(k);
    std::vector<Rational> psi(n + 1);
    if (n >= 1) psi[1] = 1;
    // psi <- psi - (f(psi) - zeta) gains one correct order per step.
    for (unsigned it = 0; it < n; ++it) {
        const auto fp = compose(f, psi);
        for (unsigned k = 2; k <= n; ++k) psi[k] -= fp[k];
    }
    ReparamJet out = ReparamJet::identity(n);
    for (unsigned k = 2; k <= n; ++k) out.phi[k] = psi[k] * factorial(k);
    return out;
}

std::unordered_map<Variable, Polynomial> reparam_substitution(const ReparamJet& phi, const JetContext& ctx) {
    const unsigned n = ctx.n();
    if (phi.order() != n) throw std::invalid_argument("reparametrization jet order must equal n");
    const auto c = reparam_coefficients(phi);
    std::unordered_map<Variable, Polynomial> sub;
    for (unsigned k = 1; k <= n + 1; ++k)
        for (unsigned lambda = 1; lambda <= n; ++lambda) {
            Polynomial w;
            for (unsigned mu = 1; mu <= lambda; ++mu)
                if (c[lambda][mu] != 0) w += c[lambda][mu] * Polynomial(Variable::jet(k, mu));
            sub[Variable::jet(k, lambda)] = w;
        }
    return sub;
}

Polynomial reparam_action(const Polynomial& p, const ReparamJet& phi, const JetContext& ctx) {
    return substitute(p, reparam_substitution(phi, ctx));
}

JetPoint reparam_action(const JetPoint& p, const ReparamJet& phi, const JetContext& ctx) {
    JetPoint out = p;
    for (const auto& [v, w] : reparam_substitution(phi, ctx)) out.assignment[v] = evaluate(w, p.assignment);
    return out;
}

VectorField pushforward(const VectorField& f, const ReparamJet& phi, const JetContext& ctx) {
    const auto forward = reparam_substitution(phi, ctx);
    const auto backward = reparam_substitution(inverse(phi), ctx);
    VectorField out;
    for (Variable u : ctx.ambient_variables()) {
        auto it = forward.find(u);
        const Polynomial image = it == forward.end() ? Polynomial(u) : it->second;
        out.set(u, substitute(f.apply(image), backward));
    }
    return out;
}

bool invariance_check(const FrameField& f, const ReparamJet& phi, const JetContext& ctx) {
    return pushforward(f.field, phi, ctx) == f.field;
}

// ------------------------------------------------------------------ spanning

bool SpanVerdict::passed() const {
    return !trials.empty() && std::all_of(trials.begin(), trials.end(), [](const SpanTrial& t) { return t.passed(); });
}

std::vector<Rational> evaluate_field(const VectorField& f, const JetPoint& p, const JetContext& ctx) {
    std::vector<Rational> v(ctx.ambient_dimension());
    for (const auto& [var, c] : f.coefficients()) v[ctx.ambient_position(var)] = evaluate(c, p.assignment);
    return v;
}

SpanVerdict spanning_check(const JetContext& ctx, const DefiningEquations& eqs, unsigned chart, unsigned trials,
                           std::uint64_t seed, Variant variant, Exec exec) {
    return spanning_check(ctx, eqs, enumerate_frame(ctx, chart, variant, exec), chart, trials, seed, variant, exec);
}

SpanVerdict spanning_check(const JetContext& ctx, const DefiningEquations& eqs, const std::vector<FrameField>& frame,
                           unsigned chart, unsigned trials, std::uint64_t seed, Variant variant, Exec exec) {
    SpanVerdict verdict;
    verdict.variant = variant;
    verdict.chart = chart;
    verdict.frame_size = frame.size();
    const Polynomial w = classical_W(ctx);
    std::uint64_t next_seed = seed;
    for (unsigned t = 0; t < trials; ++t) {
        SpanTrial trial;
        JetPoint p;
        while (true) {
            trial.seed = next_seed++;
            p = sample_vertical_jet(ctx, eqs, chart, trial.seed);
            const bool bad = variant == Variant::Delta ? in_sigma_tilde(p, ctx) : (in_sigma(p, ctx) || evaluate(w, p.assignment) == 0);
            if (!bad) break;
            ++trial.rejected;
        }
        const auto jac = jacobian_at(p, eqs, ctx);
        Matrix<Rational> vectors(frame.size());
        std::vector<int> bad_row(frame.size(), -1);
        for_each_index(exec, frame.size(), [&](std::size_t i) {
            vectors[i] = evaluate_field(frame[i].field, p, ctx);
            for (std::size_t r = 0; r < jac.size(); ++r) {
                Rational dot;
                for (std::size_t c = 0; c < vectors[i].size(); ++c)
                    if (vectors[i][c] != 0) dot += jac[r][c] * vectors[i][c];
                if (dot != 0) {
                    bad_row[i] = static_cast<int>(r);
                    break;
                }
            }
        });
        trial.tangent = true;
        for (std::size_t i = 0; i < frame.size(); ++i)
            if (bad_row[i] >= 0) {
                trial.tangent = false;
                trial.failure = frame[i].label() + " is not tangent (row E_" + std::to_string(bad_row[i]) + ")";
                break;
            }
        trial.rank = rank(vectors);
        trial.expected_rank = ctx.ambient_dimension() - ctx.slots();
        if (trial.failure.empty() && trial.rank != trial.expected_rank)
            trial.failure = "rank " + std::to_string(trial.rank) + " < expected " + std::to_string(trial.expected_rank);
        verdict.trials.push_back(std::move(trial));
    }
    return verdict;
}

}  // namespace jetframe
