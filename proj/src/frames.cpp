#include "jetframe/frames.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jetframe {

const char* to_string(Family f) {
    switch (f) {
        case Family::TAlpha: return "T_alpha";
        case Family::TAlphaEll: return "T_alpha_ell";
        case Family::TCoord: return "T_coord";
        case Family::TLambda: return "T_Lambda";
    }
    return "?";
}

std::string FrameField::label() const {
    std::ostringstream os;
    os << to_string(family) << "[";
    switch (family) {
        case Family::TAlpha:
            os << to_string(variant);
            if (variant == Variant::Delta) os << ",chart=" << chart;
            os << ",alpha=" << alpha.to_string();
            break;
        case Family::TAlphaEll: os << "alpha=" << alpha.to_string() << ",ell=" << ell.to_string(); break;
        case Family::TCoord: os << "i=" << coord; break;
        case Family::TLambda:
            for (std::size_t r = 0; r < lambda.size(); ++r) {
                os << (r ? ";" : "");
                for (std::size_t c = 0; c < lambda[r].size(); ++c) os << (c ? "," : "") << jetframe::to_string(lambda[r][c]);
            }
            break;
    }
    os << "]";
    return os.str();
}

FrameField build_T_alpha(Variant variant, const MultiIndex& alpha, unsigned chart, const JetContext& ctx) {
    const CramerCoefficients c = cramer_B(variant, alpha, chart, ctx);
    const auto graph = graph_indices(variant, variant == Variant::Delta ? chart : 1, ctx);
    FrameField f;
    f.family = Family::TAlpha;
    f.variant = variant;
    f.chart = variant == Variant::Delta ? chart : 0;
    f.alpha = alpha;
    f.field.set(Variable::coeff(alpha), c.denominator);
    for (std::size_t k = 0; k < graph.size(); ++k) f.field.add(Variable::coeff(graph[k]), -c.B[k]);
    return f;
}

FrameField build_T_alpha_ell(const MultiIndex& alpha, const MultiIndex& ell, const JetContext& ctx) {
    if (alpha.size() != ctx.slots() || ell.size() != ctx.slots()) throw std::invalid_argument("multi-index length mismatch");
    if (ell.length() != ctx.n() + 1) throw std::invalid_argument("|ell| must equal n+1");
    if (!ell.dominated_by(alpha)) throw std::invalid_argument("ell must be <= alpha");
    if (!ctx.is_admissible(alpha)) throw std::invalid_argument("alpha " + alpha.to_string() + " is not a coefficient index");
    FrameField f;
    f.family = Family::TAlphaEll;
    f.alpha = alpha;
    f.ell = ell;
    for (const auto& sub : sub_indices(ell)) {
        Rational c(multinomial_split(ell, sub));
        if (sub.length() % 2) c = -c;
        f.field.add(Variable::coeff(alpha - sub), c * monomial_z(sub));
    }
    return f;
}

FrameField build_T_coord(unsigned i, const JetContext& ctx) {
    if (i < 1 || i > ctx.n() + 1) throw std::invalid_argument("coordinate index out of range");
    FrameField f;
    f.family = Family::TCoord;
    f.coord = i;
    f.field.set(Variable::coord(i), Polynomial(1));
    for (const auto& alpha : ctx.coefficient_indices()) {
        if (alpha.length() >= ctx.d()) continue;
        const MultiIndex up = alpha + ctx.unit(i - 1);
        f.field.add(Variable::coeff(alpha), ctx.coefficient(up) * Rational(-static_cast<long>(alpha[i - 1] + 1)));
    }
    return f;
}

MultiIndex canonical_ell(const MultiIndex& alpha, unsigned n) {
    if (alpha.length() < n + 1) throw std::invalid_argument("canonical ell needs |alpha| >= n+1");
    MultiIndex ell(alpha.size());
    unsigned remaining = n + 1;
    for (std::size_t j = 0; j < alpha.size() && remaining > 0; ++j) {
        ell[j] = std::min(alpha[j], remaining);
        remaining -= ell[j];
    }
    return ell;
}

namespace {

Polynomial z_partials(const MultiIndex& exponent, const std::vector<unsigned>& indices, std::size_t from, std::size_t to) {
    Polynomial p = monomial_z(exponent);
    for (std::size_t s = from; s < to && !p.is_zero(); ++s) p = partial_derivative(p, Variable::coord(indices[s]));
    return p;
}

}  // namespace

Polynomial annihilation_array(const MultiIndex& alpha, const MultiIndex& ell, const std::vector<unsigned>& indices, std::size_t e1) {
    if (!ell.dominated_by(alpha)) throw std::invalid_argument("ell must be <= alpha");
    if (e1 > indices.size()) throw std::invalid_argument("split point beyond the index list");
    Polynomial sum;
    for (const auto& sub : sub_indices(ell)) {
        Rational c(multinomial_split(ell, sub));
        if (sub.length() % 2) c = -c;
        const Polynomial left = z_partials(alpha - sub, indices, 0, e1);
        if (left.is_zero()) continue;
        sum += c * left * z_partials(sub, indices, e1, indices.size());
    }
    return sum;
}

VectorField total_derivative_field(const JetContext& ctx) {
    VectorField d;
    for (unsigned lambda = 0; lambda < ctx.n(); ++lambda)
        for (unsigned k = 1; k <= ctx.n() + 1; ++k)
            d.set(Variable::jet_or_coord(k, lambda), Polynomial(Variable::jet(k, lambda + 1)));
    return d;
}

// ------------------------------------------------------------------ T_Lambda

const Polynomial& LCoefficients::at(const MultiIndex& alpha, const MultiIndex& beta) const {
    static const Polynomial zero;
    auto it = table.find({alpha, beta});
    return it == table.end() ? zero : it->second;
}

LCoefficients LCoefficients::instantiate(const Matrix<Rational>& lambda) const {
    std::unordered_map<Variable, Rational> values;
    for (std::size_t k = 0; k < lambda.size(); ++k)
        for (std::size_t l = 0; l < lambda[k].size(); ++l)
            values[Variable::mat(static_cast<unsigned>(k + 1), static_cast<unsigned>(l + 1))] = lambda[k][l];
    LCoefficients out;
    out.systems = systems;
    out.theta = evaluate_partial(theta, values);
    for (const auto& [key, value] : table) {
        Polynomial v = evaluate_partial(value, values);
        if (!v.is_zero()) out.table.emplace(key, std::move(v));
    }
    return out;
}

Matrix<Polynomial> symbolic_lambda(unsigned size) {
    Matrix<Polynomial> m(size, std::vector<Polynomial>(size));
    for (unsigned k = 1; k <= size; ++k)
        for (unsigned l = 1; l <= size; ++l) m[k - 1][l - 1] = Polynomial(Variable::mat(k, l));
    return m;
}

Matrix<Polynomial> constant_lambda(const Matrix<Rational>& lambda) {
    Matrix<Polynomial> m;
    for (const auto& row : lambda) m.emplace_back(row.begin(), row.end());
    return m;
}

namespace {

MultiIndex z_exponent(const Monomial& m, std::size_t slots) {
    MultiIndex mu(slots);
    for (const auto& vp : m.powers()) mu[vp.var.index() - 1] = vp.exp;
    return mu;
}

Polynomial partial_z(const Polynomial& p, const MultiIndex& delta) {
    Polynomial r = p;
    for (std::size_t j = 0; j < delta.size(); ++j)
        for (unsigned e = 0; e < delta[j] && !r.is_zero(); ++e) r = partial_derivative(r, Variable::coord(static_cast<unsigned>(j + 1)));
    return r;
}

}  // namespace

LCoefficients solve_L_coefficients(const Matrix<Polynomial>& lambda, const JetContext& ctx, Exec exec) {
    const std::size_t slots = ctx.slots();
    const unsigned n = ctx.n();
    if (lambda.size() != slots) throw std::invalid_argument("Lambda must be (n+1)x(n+1)");
    for (const auto& row : lambda)
        if (row.size() != slots) throw std::invalid_argument("Lambda must be (n+1)x(n+1)");

    Polynomial f = monomial_z(ctx.top_index());
    for (const auto& alpha : ctx.coefficient_indices()) f += Polynomial(Variable::coeff(alpha)) * monomial_z(alpha);

    // R_gamma = sum_j gamma_j sum_k Lambda_k^j d^{gamma - eps_j + eps_k} F, split by z-monomial into rho = mu + gamma.
    std::vector<MultiIndex> gammas;
    for (const auto& g : multi_indices_up_to(slots, n))
        if (!g.is_zero()) gammas.push_back(g);
    std::vector<std::map<MultiIndex, Polynomial>> remainders(gammas.size());
    for_each_index(exec, gammas.size(), [&](std::size_t gi) {
        const MultiIndex& gamma = gammas[gi];
        Polynomial r;
        for (std::size_t j = 0; j < slots; ++j) {
            if (gamma[j] == 0) continue;
            const MultiIndex lowered = gamma - MultiIndex::unit(slots, j);
            for (std::size_t k = 0; k < slots; ++k) {
                if (lambda[k][j].is_zero()) continue;
                r += Rational(gamma[j]) * lambda[k][j] * partial_z(f, lowered + MultiIndex::unit(slots, k));
            }
        }
        for (auto& [m, c] : collect_by(r, [](Variable v) { return v.tag() == VarTag::Coord; }))
            remainders[gi].emplace(z_exponent(m, slots) + gamma, std::move(c));
    });

    const auto rhos = multi_indices_up_to(slots, ctx.d());
    std::vector<std::vector<std::pair<MultiIndex, Polynomial>>> solved(rhos.size());
    std::vector<LCoefficients::RhoSystem> systems(rhos.size());
    for_each_index(exec, rhos.size(), [&](std::size_t ri) {
        const MultiIndex& rho = rhos[ri];
        std::vector<MultiIndex> unknowns;  // beta
        for (const auto& beta : sub_indices(rho))
            if (beta.length() <= n) unknowns.push_back(beta);
        const std::vector<MultiIndex>& rows = unknowns;  // gamma ranges over the same set
        const std::size_t size = unknowns.size();
        Matrix<Rational> k(size, std::vector<Rational>(size));
        std::vector<Polynomial> rhs(size);
        for (std::size_t r = 0; r < size; ++r) {
            const MultiIndex& gamma = rows[r];
            for (std::size_t c = 0; c < size; ++c) k[r][c] = Rational(static_cast<long>(falling_factorial(rho - unknowns[c], gamma)));
            if (gamma.is_zero()) continue;
            const std::size_t gi = static_cast<std::size_t>(std::find(gammas.begin(), gammas.end(), gamma) - gammas.begin());
            auto it = remainders[gi].find(rho);
            if (it != remainders[gi].end()) rhs[r] = -it->second;
        }
        systems[ri] = {rho, size, determinant(k)};
        if (systems[ri].det == 0) throw std::logic_error("singular L system at rho = " + rho.to_string());
        const auto x = solve_linear_exact(k, rhs);
        for (std::size_t c = 0; c < size; ++c) solved[ri].emplace_back(unknowns[c], x[c]);
    });

    LCoefficients out;
    out.systems = std::move(systems);
    for (std::size_t ri = 0; ri < rhos.size(); ++ri)
        for (auto& [beta, value] : solved[ri]) {
            const MultiIndex alpha = rhos[ri] - beta;
            if (alpha == ctx.top_index()) {
                out.theta = std::move(value);
            } else if (!value.is_zero()) {
                out.table.emplace(std::make_pair(alpha, beta), std::move(value));
            }
        }
    return out;
}

LCoefficients solve_L_coefficients(const Matrix<Rational>& lambda, const JetContext& ctx, Exec exec) {
    return solve_L_coefficients(constant_lambda(lambda), ctx, exec);
}

FrameField build_T_Lambda(const Matrix<Rational>& lambda, const LCoefficients& l, const JetContext& ctx) {
    const unsigned n = ctx.n();
    FrameField f;
    f.family = Family::TLambda;
    f.lambda = lambda;
    for (unsigned order = 1; order <= n; ++order)
        for (unsigned k = 1; k <= n + 1; ++k) {
            Polynomial c;
            for (unsigned j = 1; j <= n + 1; ++j)
                if (lambda[k - 1][j - 1] != 0) c += lambda[k - 1][j - 1] * Polynomial(Variable::jet(j, order));
            f.field.add(Variable::jet(k, order), c);
        }
    std::map<MultiIndex, Polynomial> a;
    for (const auto& [key, value] : l.table) a[key.first] += value * monomial_z(key.second);
    for (const auto& alpha : ctx.coefficient_indices()) {
        Polynomial c = a[alpha] - l.theta * Polynomial(Variable::coeff(alpha));
        for (Variable v : c.support())
            if (v.tag() == VarTag::Mat) throw std::invalid_argument("T_Lambda needs numeric L coefficients");
        f.field.add(Variable::coeff(alpha), c);
    }
    return f;
}

FrameField build_T_Lambda(const Matrix<Rational>& lambda, const JetContext& ctx) {
    return build_T_Lambda(lambda, solve_L_coefficients(lambda, ctx), ctx);
}

Matrix<Rational> elementary_matrix(unsigned size, unsigned k, unsigned l) {
    Matrix<Rational> m(size, std::vector<Rational>(size));
    m[k - 1][l - 1] = 1;
    return m;
}

std::vector<FrameField> enumerate_frame(const JetContext& ctx, unsigned chart, Variant variant, Exec exec) {
    const unsigned n = ctx.n();
    const unsigned size = n + 1;

    struct Job {
        Family family;
        MultiIndex alpha;
        unsigned k = 0, l = 0;
    };
    std::vector<Job> jobs;
    for (const auto& alpha : cramer_alphas(variant, chart, ctx)) jobs.push_back({Family::TAlpha, alpha});
    for (const auto& alpha : ctx.coefficient_indices())
        if (alpha.length() >= n + 1) jobs.push_back({Family::TAlphaEll, alpha});
    for (unsigned i = 1; i <= size; ++i) jobs.push_back({Family::TCoord, {}, i});
    for (unsigned k = 1; k <= size; ++k)
        for (unsigned l = 1; l <= size; ++l) jobs.push_back({Family::TLambda, {}, k, l});

    const LCoefficients symbolic = solve_L_coefficients(symbolic_lambda(size), ctx, exec);
    std::vector<FrameField> out(jobs.size());
    for_each_index(exec, jobs.size(), [&](std::size_t idx) {
        const Job& job = jobs[idx];
        switch (job.family) {
            case Family::TAlpha: out[idx] = build_T_alpha(variant, job.alpha, chart, ctx); break;
            case Family::TAlphaEll: out[idx] = build_T_alpha_ell(job.alpha, canonical_ell(job.alpha, n), ctx); break;
            case Family::TCoord: out[idx] = build_T_coord(job.k, ctx); break;
            case Family::TLambda: {
                const auto e = elementary_matrix(size, job.k, job.l);
                out[idx] = build_T_Lambda(e, symbolic.instantiate(e), ctx);
                break;
            }
        }
    });
    return out;
}

std::optional<unsigned> exact_tangency_failure(const FrameField& f, const DefiningEquations& eqs) {
    for (unsigned kappa = 0; kappa < eqs.size(); ++kappa)
        if (!f.field.apply(eqs[kappa]).is_zero()) return kappa;
    return std::nullopt;
}

std::vector<bool> check_exact_tangency(const std::vector<FrameField>& fields, const DefiningEquations& eqs, Exec exec) {
    std::vector<char> ok(fields.size(), 0);
    for_each_index(exec, fields.size(), [&](std::size_t i) { ok[i] = !exact_tangency_failure(fields[i], eqs).has_value(); });
    return {ok.begin(), ok.end()};
}

std::vector<Rational> tangency_values_at(const FrameField& f, const DefiningEquations& eqs, const JetPoint& p) {
    std::vector<Rational> out;
    for (const auto& e : eqs.equations) out.push_back(evaluate(f.field.apply(e), p.assignment));
    return out;
}

}  // namespace jetframe
