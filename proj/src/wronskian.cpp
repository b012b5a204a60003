#include "jetframe/wronskian.hpp"

#include <algorithm>
#include <stdexcept>

namespace jetframe {

const char* to_string(Variant v) { return v == Variant::Delta ? "delta" : "wronskian"; }

Matrix<Polynomial> delta_matrix(unsigned chart, const JetContext& ctx) {
    const unsigned n = ctx.n();
    if (chart < 1 || chart > n + 1) throw std::invalid_argument("chart index out of range");
    Matrix<Polynomial> m(n, std::vector<Polynomial>(n));
    for (unsigned k = 1; k <= n; ++k) {
        Polynomial col = monomial_z(ctx.unit(chart - 1, k));
        for (unsigned kappa = 1; kappa <= n; ++kappa) {
            col = total_derivative(col, ctx);
            m[kappa - 1][k - 1] = col;
        }
    }
    return m;
}

Polynomial delta(unsigned chart, const JetContext& ctx) { return determinant(delta_matrix(chart, ctx)); }

Polynomial delta_closed_form(unsigned chart, unsigned n) {
    Rational c(1);
    for (unsigned k = 1; k <= n; ++k) c *= factorial(k);
    return Polynomial(Monomial(Variable::jet(chart, 1), n * (n + 1) / 2), c);
}

Matrix<Polynomial> classical_W_matrix(const JetContext& ctx) {
    const unsigned n = ctx.n();
    Matrix<Polynomial> m(n, std::vector<Polynomial>(n));
    for (unsigned kappa = 1; kappa <= n; ++kappa)
        for (unsigned k = 1; k <= n; ++k) m[kappa - 1][k - 1] = Polynomial(Variable::jet(k, kappa));
    return m;
}

Polynomial classical_W(const JetContext& ctx) { return determinant(classical_W_matrix(ctx)); }

std::vector<MultiIndex> graph_indices(Variant variant, unsigned chart, const JetContext& ctx) {
    std::vector<MultiIndex> out{MultiIndex(ctx.slots())};
    for (unsigned k = 1; k <= ctx.n(); ++k)
        out.push_back(variant == Variant::Delta ? ctx.unit(chart - 1, k) : ctx.unit(k - 1));
    return out;
}

std::vector<MultiIndex> cramer_alphas(Variant variant, unsigned chart, const JetContext& ctx) {
    const auto excluded = graph_indices(variant, chart, ctx);
    std::vector<MultiIndex> out;
    for (const auto& alpha : multi_indices_up_to(ctx.slots(), ctx.n()))
        if (std::find(excluded.begin(), excluded.end(), alpha) == excluded.end()) out.push_back(alpha);
    return out;
}

namespace {

// Columns of the graph system: entry (kappa, k) is D^kappa of the k-th graph monomial.
Matrix<Polynomial> system_matrix(Variant variant, unsigned chart, const JetContext& ctx) {
    return variant == Variant::Delta ? delta_matrix(chart, ctx) : classical_W_matrix(ctx);
}

std::vector<Polynomial> jet_column(const MultiIndex& alpha, const JetContext& ctx) {
    std::vector<Polynomial> col;
    Polynomial p = monomial_z(alpha);
    for (unsigned kappa = 1; kappa <= ctx.n(); ++kappa) {
        p = total_derivative(p, ctx);
        col.push_back(p);
    }
    return col;
}

void check_cramer_alpha(Variant variant, const MultiIndex& alpha, unsigned chart, const JetContext& ctx) {
    if (variant == Variant::Delta && (chart < 1 || chart > ctx.n() + 1)) throw std::invalid_argument("chart index out of range");
    if (alpha.size() != ctx.slots() || alpha.length() > ctx.n())
        throw std::invalid_argument("cramer_B needs |alpha| <= n, got " + alpha.to_string());
    const auto excluded = graph_indices(variant, chart, ctx);
    if (std::find(excluded.begin(), excluded.end(), alpha) != excluded.end())
        throw std::invalid_argument("alpha " + alpha.to_string() + " is a graph slot of the " + to_string(variant) + " system");
}

}  // namespace

CramerCoefficients cramer_B(Variant variant, const MultiIndex& alpha, unsigned chart, const JetContext& ctx) {
    check_cramer_alpha(variant, alpha, chart, ctx);
    const unsigned n = ctx.n();
    if (variant == Variant::Wronskian) chart = 1;
    const Matrix<Polynomial> m = system_matrix(variant, chart, ctx);
    const auto rhs = jet_column(alpha, ctx);
    const auto graph = graph_indices(variant, chart, ctx);

    CramerCoefficients out;
    out.variant = variant;
    out.chart = variant == Variant::Delta ? chart : 0;
    out.alpha = alpha;
    out.denominator = determinant(m);
    out.B.assign(n + 1, Polynomial());
    for (unsigned k = 1; k <= n; ++k) {
        Matrix<Polynomial> mk = m;
        for (unsigned kappa = 0; kappa < n; ++kappa) mk[kappa][k - 1] = rhs[kappa];
        out.B[k] = determinant(mk);
    }
    Polynomial b0 = out.denominator * monomial_z(alpha);
    for (unsigned k = 1; k <= n; ++k) b0 -= out.B[k] * monomial_z(graph[k]);
    out.B[0] = b0;
    return out;
}

std::vector<CramerCoefficients> cramer_table(Variant variant, unsigned chart, const JetContext& ctx, Exec exec) {
    const auto alphas = cramer_alphas(variant, chart, ctx);
    std::vector<CramerCoefficients> out(alphas.size());
    for_each_index(exec, alphas.size(), [&](std::size_t i) { out[i] = cramer_B(variant, alphas[i], chart, ctx); });
    return out;
}

std::vector<Polynomial> cramer_residuals(const CramerCoefficients& c, const JetContext& ctx) {
    const auto graph = graph_indices(c.variant, c.variant == Variant::Delta ? c.chart : 1, ctx);
    std::vector<Polynomial> rows;
    Polynomial row0 = -c.B[0] + c.denominator * monomial_z(c.alpha);
    for (unsigned k = 1; k <= ctx.n(); ++k) row0 -= c.B[k] * monomial_z(graph[k]);
    rows.push_back(row0);
    for (unsigned kappa = 1; kappa <= ctx.n(); ++kappa) {
        Polynomial r = c.denominator * total_derivative(monomial_z(c.alpha), kappa, ctx);
        for (unsigned k = 1; k <= ctx.n(); ++k) r -= c.B[k] * total_derivative(monomial_z(graph[k]), kappa, ctx);
        rows.push_back(r);
    }
    return rows;
}

bool appendix_identity_check(unsigned n) {
    const JetContext ctx(n, n + 1);
    for (unsigned chart = 1; chart <= n + 1; ++chart)
        if (delta(chart, ctx) != delta_closed_form(chart, n)) return false;
    return true;
}

}  // namespace jetframe
