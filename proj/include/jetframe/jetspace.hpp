#pragma once

#include "jetframe/linalg.hpp"
#include "jetframe/multi_index.hpp"
#include "jetframe/parallel.hpp"
#include "jetframe/polynomial.hpp"

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace jetframe {

/// Variable universe of the vertical n-jets of the universal degree-d hypersurface,
/// affine chart, normalized so that a_{d0...0} = 1.
class JetContext {
public:
    /// Requires n >= 1 and d > n; throws std::invalid_argument otherwise.
    JetContext(unsigned n, unsigned d);

    unsigned n() const { return n_; }
    unsigned d() const { return d_; }
    std::size_t slots() const { return n_ + 1; }

    /// Every alpha with |alpha| <= d except (d,0,...,0), graded lex order.
    const std::vector<MultiIndex>& coefficient_indices() const { return coeff_indices_; }
    bool is_admissible(const MultiIndex& alpha) const;
    /// (d,0,...,0), the normalized slot.
    MultiIndex top_index() const { return MultiIndex::unit(slots(), 0, d_); }
    /// a_alpha, or the constant 1 for the normalized slot.
    Polynomial coefficient(const MultiIndex& alpha) const;

    std::size_t coefficient_count() const { return coeff_indices_.size(); }
    /// Coord, then Jet, then Coeff variables.
    const std::vector<Variable>& ambient_variables() const { return ambient_; }
    std::size_t ambient_dimension() const { return ambient_.size(); }
    /// Position of a variable in ambient_variables().
    std::size_t ambient_position(Variable v) const;
    /// ambient_dimension() - (n+1): the affine dimension of the jet space off the bad set.
    std::size_t expected_dimension() const { return ambient_dimension() - slots(); }

    MultiIndex unit(std::size_t slot, unsigned multiple = 1) const { return MultiIndex::unit(slots(), slot, multiple); }

private:
    unsigned n_;
    unsigned d_;
    std::vector<MultiIndex> coeff_indices_;
    std::vector<Variable> ambient_;
    std::unordered_map<Variable, std::size_t> position_;
};

/// z^alpha over the coordinates z_1..z_{n+1}.
Polynomial monomial_z(const MultiIndex& alpha);

/// Highest jet order among Coord/Jet variables of p (Coord counts as order 0, -1 if none).
int jet_order(const Polynomial& p);

/// D = sum_lambda sum_k z_k^(lambda+1) d/dz_k^(lambda). Rejects input touching order-n jets.
Polynomial total_derivative(const Polynomial& p, const JetContext& ctx);
/// D^k applied k times.
Polynomial total_derivative(const Polynomial& p, unsigned k, const JetContext& ctx);

struct DefiningEquations {
    std::vector<Polynomial> equations;  // E_0, ..., E_n
    const Polynomial& operator[](std::size_t kappa) const { return equations[kappa]; }
    std::size_t size() const { return equations.size(); }
    bool operator==(const DefiningEquations&) const = default;
};

/// E_0 = z_1^d + sum a_alpha z^alpha and E_kappa = D(E_{kappa-1}).
DefiningEquations defining_equations_iterated(const JetContext& ctx, Exec exec = Exec::Serial);

/// The same equations from the closed multivariate Faa di Bruno sum over
/// lambda_1 < ... < lambda_e, mu_i >= 1, sum mu_i lambda_i = kappa.
DefiningEquations defining_equations_faa_di_bruno(const JetContext& ctx, Exec exec = Exec::Serial);

/// Exact point of the jet space.
struct JetPoint {
    std::unordered_map<Variable, Rational> assignment;
    unsigned chart = 0;  // coordinate i with z_i' != 0 used for the graph solve; 0 if none

    const Rational& operator[](Variable v) const { return assignment.at(v); }
};

/// Draws z, jets (z_chart' != 0) and the free coefficients at random, then solves the last
/// n equations for a_{eps_i}, ..., a_{n eps_i} by Cramer and E_0 for a_0.
/// Rationals have numerators in [-20, 20] and denominators in {1..5}.
JetPoint sample_vertical_jet(const JetContext& ctx, const DefiningEquations& eqs, unsigned chart, std::uint64_t seed);

/// Exact values of E_0..E_n at the point.
std::vector<Rational> evaluate_equations(const DefiningEquations& eqs, const JetPoint& p);

/// (n+1) x ambient Jacobian of the defining equations at p.
Matrix<Rational> jacobian_at(const JetPoint& p, const DefiningEquations& eqs, const JetContext& ctx);
std::size_t jacobian_rank_at(const JetPoint& p, const DefiningEquations& eqs, const JetContext& ctx);

/// All first-order jets vanish.
bool in_sigma_tilde(const JetPoint& p, const JetContext& ctx);
/// The (n+1) x n jet matrix (z_i^(lambda)) has rank < n.
bool in_sigma(const JetPoint& p, const JetContext& ctx);
Matrix<Rational> jet_matrix(const JetPoint& p, const JetContext& ctx);

/// {"chart": i, "assignment": {"z1": "3/2", ...}}
nlohmann::json to_json(const JetPoint& p);
JetPoint jet_point_from_json(const nlohmann::json& j);

}  // namespace jetframe
