#include "jetframe/jetspace.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace jetframe {

namespace {

Rational power(const Rational& base, unsigned e) {
    Rational r(1);
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

JetContext::JetContext(unsigned n, unsigned d) : n_(n), d_(d) {
    if (n < 1) throw std::invalid_argument("jet order n must be at least 1");
    if (d <= n) throw std::invalid_argument("degree d must exceed n (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
    if (n + 1 > 8 || d > 127) throw std::invalid_argument("parameters exceed the packed index range");

    for (const auto& alpha : multi_indices_up_to(slots(), d))
        if (alpha != top_index()) coeff_indices_.push_back(alpha);

    for (unsigned i = 1; i <= n + 1; ++i) ambient_.push_back(Variable::coord(i));
    for (unsigned lambda = 1; lambda <= n; ++lambda)
        for (unsigned i = 1; i <= n + 1; ++i) ambient_.push_back(Variable::jet(i, lambda));
    for (const auto& alpha : coeff_indices_) ambient_.push_back(Variable::coeff(alpha));
    for (std::size_t k = 0; k < ambient_.size(); ++k) position_.emplace(ambient_[k], k);
}

bool JetContext::is_admissible(const MultiIndex& alpha) const {
    return alpha.size() == slots() && alpha.length() <= d_ && alpha != top_index();
}

Polynomial JetContext::coefficient(const MultiIndex& alpha) const {
    if (alpha == top_index()) return Polynomial(1);
    if (!is_admissible(alpha)) throw std::invalid_argument("no coefficient a" + alpha.to_string() + " in this context");
    return Polynomial(Variable::coeff(alpha));
}

std::size_t JetContext::ambient_position(Variable v) const {
    auto it = position_.find(v);
    if (it == position_.end()) throw std::out_of_range("variable " + v.name() + " is not ambient");
    return it->second;
}

Polynomial monomial_z(const MultiIndex& alpha) {
    std::vector<VarPower> powers;
    for (std::size_t j = 0; j < alpha.size(); ++j)
        if (alpha[j] > 0) powers.push_back({Variable::coord(static_cast<unsigned>(j + 1)), alpha[j]});
    return Polynomial(Monomial::from_powers(std::move(powers)), Rational(1));
}

int jet_order(const Polynomial& p) {
    int order = -1;
    for (Variable v : p.support())
        if (v.is_jet_like()) order = std::max(order, static_cast<int>(v.order()));
    return order;
}

Polynomial total_derivative(const Polynomial& p, const JetContext& ctx) {
    Polynomial result;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& vp : m.powers()) {
            if (!vp.var.is_jet_like()) continue;
            const unsigned order = vp.var.order();
            if (order >= ctx.n())
                throw std::invalid_argument("total derivative of " + vp.var.name() + " leaves the order-" + std::to_string(ctx.n()) + " jet space");
            const Monomial lowered = m.with_exponent(vp.var, vp.exp - 1);
            const Variable next = Variable::jet(vp.var.index(), order + 1);
            result.add_term(lowered * Monomial(next), c * vp.exp);
        }
    }
    return result;
}

Polynomial total_derivative(const Polynomial& p, unsigned k, const JetContext& ctx) {
    Polynomial r = p;
    for (unsigned i = 0; i < k; ++i) r = total_derivative(r, ctx);
    return r;
}

DefiningEquations defining_equations_iterated(const JetContext& ctx, Exec exec) {
    Polynomial e0 = monomial_z(ctx.top_index());
    for (const auto& alpha : ctx.coefficient_indices()) e0 += Polynomial(Variable::coeff(alpha)) * monomial_z(alpha);

    // D is linear in the coefficients, so each z^alpha is differentiated independently.
    std::vector<MultiIndex> all = ctx.coefficient_indices();
    all.push_back(ctx.top_index());
    std::vector<std::vector<Polynomial>> derivs(all.size());
    for_each_index(exec, all.size(), [&](std::size_t idx) {
        auto& chain = derivs[idx];
        chain.push_back(monomial_z(all[idx]));
        for (unsigned kappa = 1; kappa <= ctx.n(); ++kappa) chain.push_back(total_derivative(chain.back(), ctx));
    });

    DefiningEquations eqs;
    eqs.equations.assign(ctx.n() + 1, Polynomial());
    for (unsigned kappa = 0; kappa <= ctx.n(); ++kappa) {
        Polynomial& ek = eqs.equations[kappa];
        for (std::size_t idx = 0; idx < all.size(); ++idx) {
            if (all[idx] == ctx.top_index())
                ek += derivs[idx][kappa];
            else
                ek.add_scaled(derivs[idx][kappa], Rational(1), Monomial(Variable::coeff(all[idx])));
        }
    }
    if (eqs.equations[0] != e0) throw std::logic_error("E_0 assembly mismatch");
    return eqs;
}

namespace {

struct PartitionBlock {
    unsigned lambda;
    unsigned mu;
};

// Partitions of kappa as lambda_1 < ... < lambda_e with multiplicities mu_i >= 1.
void partitions(unsigned remaining, unsigned min_part, std::vector<PartitionBlock>& cur, std::vector<std::vector<PartitionBlock>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned lambda = min_part; lambda <= remaining; ++lambda)
        for (unsigned mu = 1; mu * lambda <= remaining; ++mu) {
            cur.push_back({lambda, mu});
            partitions(remaining - mu * lambda, lambda + 1, cur, out);
            cur.pop_back();
        }
}

// D^kappa(z^beta) by the closed partition sum.
Polynomial faa_di_bruno_term(const MultiIndex& beta, unsigned kappa) {
    if (kappa == 0) return monomial_z(beta);
    const std::size_t slots = beta.size();
    std::vector<std::vector<PartitionBlock>> parts;
    std::vector<PartitionBlock> cur;
    partitions(kappa, 1, cur, parts);

    Polynomial result;
    for (const auto& part : parts) {
        Rational factor = factorial(kappa);
        std::vector<unsigned> orders;  // derivative order carried by each slot of the index tuple
        for (const auto& b : part) {
            factor /= power(factorial(b.lambda), b.mu) * factorial(b.mu);
            for (unsigned r = 0; r < b.mu; ++r) orders.push_back(b.lambda);
        }
        const std::size_t m = orders.size();
        if (m > beta.length()) continue;
        std::vector<unsigned> tuple(m, 0);
        while (true) {
            MultiIndex count(slots);
            for (unsigned j : tuple) ++count[j];
            if (count.dominated_by(beta)) {
                const long ff = falling_factorial(beta, count);
                std::vector<VarPower> powers;
                const MultiIndex rest = beta - count;
                for (std::size_t j = 0; j < slots; ++j)
                    if (rest[j] > 0) powers.push_back({Variable::coord(static_cast<unsigned>(j + 1)), rest[j]});
                for (std::size_t s = 0; s < m; ++s) powers.push_back({Variable::jet(tuple[s] + 1, orders[s]), 1});
                result.add_term(Monomial::from_powers(std::move(powers)), factor * Rational(ff));
            }
            std::size_t pos = 0;
            while (pos < m && ++tuple[pos] == slots) tuple[pos++] = 0;
            if (pos == m) break;
        }
    }
    return result;
}

}  // namespace

DefiningEquations defining_equations_faa_di_bruno(const JetContext& ctx, Exec exec) {
    std::vector<MultiIndex> all = ctx.coefficient_indices();
    all.push_back(ctx.top_index());
    const unsigned rows = ctx.n() + 1;
    std::vector<Polynomial> cells(all.size() * rows);
    for_each_index(exec, cells.size(), [&](std::size_t idx) {
        cells[idx] = faa_di_bruno_term(all[idx / rows], static_cast<unsigned>(idx % rows));
    });

    DefiningEquations eqs;
    eqs.equations.assign(rows, Polynomial());
    for (std::size_t a = 0; a < all.size(); ++a)
        for (unsigned kappa = 0; kappa < rows; ++kappa) {
            const Polynomial& cell = cells[a * rows + kappa];
            if (all[a] == ctx.top_index())
                eqs.equations[kappa] += cell;
            else
                eqs.equations[kappa].add_scaled(cell, Rational(1), Monomial(Variable::coeff(all[a])));
        }
    return eqs;
}

namespace {

class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}
    Rational draw() {
        std::uniform_int_distribution<int> num(-20, 20);
        std::uniform_int_distribution<int> den(1, 5);
        const int p = num(rng_);
        const int q = den(rng_);
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    Rational draw_nonzero() {
        Rational r;
        do r = draw();
        while (r == 0);
        return r;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace

JetPoint sample_vertical_jet(const JetContext& ctx, const DefiningEquations& eqs, unsigned chart, std::uint64_t seed) {
    const unsigned n = ctx.n();
    if (chart < 1 || chart > n + 1) throw std::invalid_argument("chart index out of range");
    RationalSampler sampler(seed);
    JetPoint p;
    p.chart = chart;
    for (unsigned i = 1; i <= n + 1; ++i) p.assignment[Variable::coord(i)] = sampler.draw();
    for (unsigned lambda = 1; lambda <= n; ++lambda)
        for (unsigned i = 1; i <= n + 1; ++i) {
            const bool forced = lambda == 1 && i == chart;
            p.assignment[Variable::jet(i, lambda)] = forced ? sampler.draw_nonzero() : sampler.draw();
        }

    std::vector<Variable> solved;  // a_0, a_{eps_i}, ..., a_{n eps_i}
    for (unsigned k = 0; k <= n; ++k) solved.push_back(Variable::coeff(ctx.unit(chart - 1, k)));
    for (const auto& alpha : ctx.coefficient_indices()) {
        Variable v = Variable::coeff(alpha);
        if (std::find(solved.begin(), solved.end(), v) == solved.end()) p.assignment[v] = sampler.draw();
    }
    for (Variable v : solved) p.assignment[v] = 0;

    // Rows kappa = 1..n do not involve a_0: solve them for a_{k eps_i}, then E_0 for a_0.
    Matrix<Rational> a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (unsigned kappa = 1; kappa <= n; ++kappa) {
        for (unsigned k = 1; k <= n; ++k) a[kappa - 1][k - 1] = evaluate(partial_derivative(eqs[kappa], solved[k]), p.assignment);
        b[kappa - 1] = -evaluate(eqs[kappa], p.assignment);
    }
    const std::vector<Rational> x = solve_linear_exact(a, b);
    for (unsigned k = 1; k <= n; ++k) p.assignment[solved[k]] = x[k - 1];
    p.assignment[solved[0]] = -evaluate(eqs[0], p.assignment);

    for (const Rational& r : evaluate_equations(eqs, p))
        if (r != 0) throw std::logic_error("sampled jet does not satisfy the defining equations");
    return p;
}

std::vector<Rational> evaluate_equations(const DefiningEquations& eqs, const JetPoint& p) {
    std::vector<Rational> out;
    for (const auto& e : eqs.equations) out.push_back(evaluate(e, p.assignment));
    return out;
}

Matrix<Rational> jacobian_at(const JetPoint& p, const DefiningEquations& eqs, const JetContext& ctx) {
    Matrix<Rational> jac(eqs.size(), std::vector<Rational>(ctx.ambient_dimension()));
    for (std::size_t row = 0; row < eqs.size(); ++row) {
        for (const auto& [m, c] : eqs[row].terms()) {
            const auto& powers = m.powers();
            std::vector<Rational> values;
            values.reserve(powers.size());
            for (const auto& vp : powers) values.push_back(p[vp.var]);
            for (std::size_t s = 0; s < powers.size(); ++s) {
                Rational term = c * powers[s].exp;
                for (std::size_t t = 0; t < powers.size(); ++t)
                    term *= power(values[t], t == s ? powers[t].exp - 1 : powers[t].exp);
                jac[row][ctx.ambient_position(powers[s].var)] += term;
            }
        }
    }
    return jac;
}

std::size_t jacobian_rank_at(const JetPoint& p, const DefiningEquations& eqs, const JetContext& ctx) {
    return rank(jacobian_at(p, eqs, ctx));
}

Matrix<Rational> jet_matrix(const JetPoint& p, const JetContext& ctx) {
    Matrix<Rational> m(ctx.n() + 1, std::vector<Rational>(ctx.n()));
    for (unsigned i = 1; i <= ctx.n() + 1; ++i)
        for (unsigned lambda = 1; lambda <= ctx.n(); ++lambda) m[i - 1][lambda - 1] = p[Variable::jet(i, lambda)];
    return m;
}

bool in_sigma_tilde(const JetPoint& p, const JetContext& ctx) {
    for (unsigned i = 1; i <= ctx.n() + 1; ++i)
        if (p[Variable::jet(i, 1)] != 0) return false;
    return true;
}

bool in_sigma(const JetPoint& p, const JetContext& ctx) { return rank(jet_matrix(p, ctx)) < ctx.n(); }

nlohmann::json to_json(const JetPoint& p) {
    nlohmann::json assignment = nlohmann::json::object();
    for (const auto& [v, r] : p.assignment) assignment[v.name()] = to_string(r);
    return {{"chart", p.chart}, {"assignment", assignment}};
}

JetPoint jet_point_from_json(const nlohmann::json& j) {
    JetPoint p;
    p.chart = j.value("chart", 0u);
    for (const auto& [name, value] : j.at("assignment").items())
        p.assignment[Variable::parse(name)] = parse_rational(value.get<std::string>());
    return p;
}

}  // namespace jetframe
