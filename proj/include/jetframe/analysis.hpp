#pragma once

#include "jetframe/frames.hpp"
#include "jetframe/jetspace.hpp"
#include "jetframe/wronskian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jetframe {

// ------------------------------------------------------------------ pole orders

/// Weight of a Coord/Jet variable: z_i -> 1, z_i^(lambda) -> lambda + 1.
/// Throws std::invalid_argument for any other tag.
long pole_weight(Variable v);

struct PoleOrder {
    long order = 0;       // max monomial weight (0 for the zero polynomial)
    bool uniform = true;  // every monomial has that weight
};

PoleOrder pole_order(const Polynomial& p);

struct ChartChange {
    Polynomial numerator;  // not divisible by z_upsilon
    long pole_exponent = 0;
};

/// Transfers p to the chart z_j -> z_j / z_upsilon (j != upsilon), z_upsilon -> 1 / z_upsilon,
/// differentiating the quotients formally for the jets, and returns the reduced pole in z_upsilon.
ChartChange chart_change_oracle(const Polynomial& p, unsigned upsilon, const JetContext& ctx);

/// Largest oracle pole exponent over the charts upsilon = 1..n+1.
long oracle_pole_order(const Polynomial& p, const JetContext& ctx, Exec exec = Exec::Serial);

struct PoleItem {
    std::string object;   // "Delta", "W", "B"
    std::string variant;  // "delta", "wronskian", "" for Delta / W
    unsigned chart = 0;
    MultiIndex alpha;
    int k = -1;  // B index, -1 when not a B
    long claimed = 0;
    long computed = 0;
    std::optional<long> oracle;
    bool uniform = true;
    std::string method;  // "symbolic" or "graded"

    bool matches() const { return computed == claimed && uniform; }
    bool oracle_agrees() const { return !oracle || *oracle == computed; }
    std::string label() const;
};

struct PoleOrderReport {
    unsigned n = 0;
    std::vector<PoleItem> items;
    long c_variant1_claimed = 0, c_variant1_computed = 0;
    long c_variant2_claimed = 0, c_variant2_computed = 0;
    std::optional<long> c_variant1_oracle, c_variant2_oracle;

    bool all_match() const;
    bool oracle_run() const { return c_variant1_oracle.has_value(); }
    bool oracle_agrees() const;
    /// Items whose computed order differs from the claim or is not uniform.
    std::vector<const PoleItem*> mismatches() const;
    /// Items whose oracle exponent differs from the weight count.
    std::vector<const PoleItem*> oracle_mismatches() const;
};

struct PoleTableOptions {
    unsigned chart = 1;
    unsigned symbolic_up_to = 3;  // larger n use the graded evaluation route
    bool run_oracle = true;
    unsigned oracle_up_to = 3;
    std::uint64_t seed = 0;
    Exec exec = Exec::Serial;
};

/// Claimed closed formulas.
long claimed_delta_order(unsigned n);
long claimed_W_order(unsigned n);
long claimed_B_order(Variant v, unsigned n, unsigned alpha_length, unsigned k);
long claimed_c(Variant v, unsigned n);

/// Pole orders of Delta, W and every B of both variants against the closed formulas.
///
/// The symbolic route builds the polynomials. The graded route uses that every entry
/// D^kappa(z^beta) is weight-homogeneous of weight |beta| + kappa, so each determinant is
/// homogeneous of the summed weight or zero; nonvanishing is certified by exact evaluation.
PoleOrderReport verify_pole_table(const JetContext& ctx, const PoleTableOptions& options = {});

/// D^kappa(z^beta) at a point, from the Taylor expansion of the curve through it.
Rational jet_value(const MultiIndex& beta, unsigned kappa, const JetPoint& p, unsigned n);

// ------------------------------------------------------------------ reparametrization

/// n-jet at 0 of phi(zeta) = zeta + phi''(0) zeta^2/2! + ... ; phi[k] holds phi^(k)(0) for 2 <= k <= n.
struct ReparamJet {
    std::vector<Rational> phi;  // size n+1; phi[0] = 0, phi[1] = 1

    static ReparamJet identity(unsigned n);
    static ReparamJet from_derivatives(const std::vector<Rational>& higher);  // phi'', ..., phi^(n)
    unsigned order() const { return static_cast<unsigned>(phi.size()) - 1; }
};

/// c[lambda][mu] with (z o phi)^(lambda) = sum_mu c[lambda][mu] z^(mu), from the partial Bell recurrence.
Matrix<Rational> reparam_coefficients(const ReparamJet& phi);

/// Formal series inverse up to order n.
ReparamJet inverse(const ReparamJet& phi);

/// Jet substitution z_k^(lambda) -> (z_k o phi)^(lambda); Coord and Coeff variables untouched.
std::unordered_map<Variable, Polynomial> reparam_substitution(const ReparamJet& phi, const JetContext& ctx);
Polynomial reparam_action(const Polynomial& p, const ReparamJet& phi, const JetContext& ctx);
JetPoint reparam_action(const JetPoint& p, const ReparamJet& phi, const JetContext& ctx);

/// Pushforward of a field under the jet action: F'_u = F(Phi_u) composed with the inverse action.
VectorField pushforward(const VectorField& f, const ReparamJet& phi, const JetContext& ctx);

/// Exact structural equality of a frame field and its pushforward.
bool invariance_check(const FrameField& f, const ReparamJet& phi, const JetContext& ctx);

// ------------------------------------------------------------------ spanning

struct SpanTrial {
    std::uint64_t seed = 0;
    unsigned rejected = 0;  // points discarded on the bad set before this one
    bool tangent = false;
    std::size_t rank = 0;
    std::size_t expected_rank = 0;
    std::string failure;  // empty when the trial passed

    bool passed() const { return failure.empty(); }
};

struct SpanVerdict {
    Variant variant = Variant::Delta;
    unsigned chart = 1;
    std::size_t frame_size = 0;
    std::vector<SpanTrial> trials;

    bool passed() const;
};

/// Evaluates a field at a point as a vector over ctx.ambient_variables().
std::vector<Rational> evaluate_field(const VectorField& f, const JetPoint& p, const JetContext& ctx);

/// Samples points off the bad set (off Sigma-tilde for Delta, off Sigma with W != 0 for Wronskian),
/// evaluates the enumerated frame, and checks tangency and rank = ambient - (n+1).
SpanVerdict spanning_check(const JetContext& ctx, const DefiningEquations& eqs, unsigned chart, unsigned trials,
                           std::uint64_t seed, Variant variant = Variant::Delta, Exec exec = Exec::Serial);

/// Same, with a prebuilt frame.
SpanVerdict spanning_check(const JetContext& ctx, const DefiningEquations& eqs, const std::vector<FrameField>& frame,
                           unsigned chart, unsigned trials, std::uint64_t seed, Variant variant, Exec exec = Exec::Serial);

}  // namespace jetframe
