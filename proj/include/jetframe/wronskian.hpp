#pragma once

#include "jetframe/jetspace.hpp"
#include "jetframe/linalg.hpp"

#include <vector>

namespace jetframe {

/// Delta: graph over {z_i' != 0} with slots a_0, a_{eps_i}, ..., a_{n eps_i} and denominator Delta(z_i').
/// Wronskian: graph over {W != 0} with slots a_0, a_{eps_1}, ..., a_{eps_n} and denominator W.
enum class Variant { Delta, Wronskian };

const char* to_string(Variant v);

/// (kappa, k) -> D^kappa(z_i^k), 1 <= kappa, k <= n.
Matrix<Polynomial> delta_matrix(unsigned chart, const JetContext& ctx);
Polynomial delta(unsigned chart, const JetContext& ctx);
/// 1! 2! ... n! (z_i')^{n(n+1)/2}.
Polynomial delta_closed_form(unsigned chart, unsigned n);

/// (kappa, k) -> z_k^(kappa), 1 <= kappa, k <= n.
Matrix<Polynomial> classical_W_matrix(const JetContext& ctx);
Polynomial classical_W(const JetContext& ctx);

/// The n+1 coefficient slots solved by the graph representation, a_0 first.
std::vector<MultiIndex> graph_indices(Variant variant, unsigned chart, const JetContext& ctx);
/// All alpha with |alpha| <= n outside graph_indices, graded lex order.
std::vector<MultiIndex> cramer_alphas(Variant variant, unsigned chart, const JetContext& ctx);

struct CramerCoefficients {
    Variant variant = Variant::Delta;
    unsigned chart = 1;  // meaningful for Delta only
    MultiIndex alpha;
    std::vector<Polynomial> B;  // B_0, ..., B_n
    Polynomial denominator;     // Delta(z_i') or W
};

/// Cramer solution of the graph system for the direction a_alpha.
/// Throws std::invalid_argument if alpha is not admissible for the variant.
CramerCoefficients cramer_B(Variant variant, const MultiIndex& alpha, unsigned chart, const JetContext& ctx);

/// All admissible alphas of a variant, computed independently per alpha.
std::vector<CramerCoefficients> cramer_table(Variant variant, unsigned chart, const JetContext& ctx, Exec exec = Exec::Serial);

/// Rows kappa = 0..n of the graph system with the B substituted; every row is zero for a valid solution.
std::vector<Polynomial> cramer_residuals(const CramerCoefficients& c, const JetContext& ctx);

/// Raw determinant of the Wronskian-type matrix equals the closed form, for every chart.
bool appendix_identity_check(unsigned n);

}  // namespace jetframe
