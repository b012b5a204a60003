#pragma once

#include "jetframe/jetspace.hpp"
#include "jetframe/vector_field.hpp"
#include "jetframe/wronskian.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jetframe {

enum class Family { TAlpha, TAlphaEll, TCoord, TLambda };

const char* to_string(Family f);

struct FrameField {
    Family family = Family::TAlpha;
    Variant variant = Variant::Delta;  // TAlpha only
    unsigned chart = 0;                   // TAlpha (Delta) only
    MultiIndex alpha;                     // TAlpha, TAlphaEll
    MultiIndex ell;                       // TAlphaEll
    unsigned coord = 0;                   // TCoord
    Matrix<Rational> lambda;              // TLambda
    VectorField field;

    std::string label() const;
};

/// Delta(z_i') d/da_alpha - B_0 d/da_0 - ... - B_n d/da_{graph slot n} (W in place of Delta for Wronskian).
FrameField build_T_alpha(Variant variant, const MultiIndex& alpha, unsigned chart, const JetContext& ctx);

/// sum over ell'' <= ell of (-1)^{|ell''|} ell!/(ell'! ell''!) z^{ell''} d/da_{alpha - ell''}.
/// Requires |ell| = n+1, ell <= alpha, |alpha| <= d, alpha != (d,0,...,0).
FrameField build_T_alpha_ell(const MultiIndex& alpha, const MultiIndex& ell, const JetContext& ctx);

/// d/dz_i - sum_{|alpha| <= d-1} (alpha_i + 1) a_{alpha+eps_i} d/da_alpha, with a_{d0...0} = 1.
FrameField build_T_coord(unsigned i, const JetContext& ctx);

/// Greedy choice: fill ell from the first slot, ell_j = min(alpha_j, remaining), until |ell| = n+1.
MultiIndex canonical_ell(const MultiIndex& alpha, unsigned n);

/// The array (j_1..j_{e1} | j_{e1+1}..j_e): sum over ell'' of signed multinomial times
/// d^{e1}(z^{alpha-ell''}) * d^{e-e1}(z^{ell''}). The boxed identity is e1 = 0.
Polynomial annihilation_array(const MultiIndex& alpha, const MultiIndex& ell, const std::vector<unsigned>& indices, std::size_t e1);

/// The total derivative as a derivation on jets of order <= n-1.
VectorField total_derivative_field(const JetContext& ctx);

/// L coefficients of the Coeff part of T_Lambda.
///
/// The system is solved in the homogeneous coefficient space, where a_{d0...0} has its own
/// slot; theta is that slot's solution. The affine field is then
///   A_alpha = sum_beta L_alpha^beta z^beta - theta a_alpha,
/// which removes the normalized direction with the Euler field and gives T_Lambda(E_k) = -theta E_k.
struct LCoefficients {
    struct RhoSystem {
        MultiIndex rho;
        std::size_t size = 0;
        Rational det;
    };

    std::map<std::pair<MultiIndex, MultiIndex>, Polynomial> table;  // (alpha, beta) -> L_alpha^beta, nonzero only
    Polynomial theta;
    std::vector<RhoSystem> systems;

    const Polynomial& at(const MultiIndex& alpha, const MultiIndex& beta) const;
    /// Substitutes numeric values for the Mat variables.
    LCoefficients instantiate(const Matrix<Rational>& lambda) const;
};

/// (n+1)x(n+1) matrix of the Mat variables Lambda_k^l.
Matrix<Polynomial> symbolic_lambda(unsigned size);
Matrix<Polynomial> constant_lambda(const Matrix<Rational>& lambda);

/// Solves every rho-system exactly; throws InconsistentSystem / UnderdeterminedSystem on failure
/// and std::logic_error if any system matrix is singular.
LCoefficients solve_L_coefficients(const Matrix<Polynomial>& lambda, const JetContext& ctx, Exec exec = Exec::Serial);
LCoefficients solve_L_coefficients(const Matrix<Rational>& lambda, const JetContext& ctx, Exec exec = Exec::Serial);

/// Jet directions sum_k (Lambda z^(lambda))_k d/dz_k^(lambda), Coeff directions from L.
FrameField build_T_Lambda(const Matrix<Rational>& lambda, const LCoefficients& l, const JetContext& ctx);
FrameField build_T_Lambda(const Matrix<Rational>& lambda, const JetContext& ctx);

/// Elementary matrix with a single 1 at (k, l), 1-based.
Matrix<Rational> elementary_matrix(unsigned size, unsigned k, unsigned l);

/// All T_alpha of the variant, one canonical T_alpha^ell per alpha with n+1 <= |alpha| <= d,
/// all T_i, and T_Lambda over the elementary matrices. Deterministic order.
std::vector<FrameField> enumerate_frame(const JetContext& ctx, unsigned chart, Variant variant = Variant::Delta, Exec exec = Exec::Serial);

/// First kappa with F(E_kappa) != 0, or nullopt when F annihilates every equation.
std::optional<unsigned> exact_tangency_failure(const FrameField& f, const DefiningEquations& eqs);

/// Per field: true iff it annihilates every E_kappa as a polynomial.
std::vector<bool> check_exact_tangency(const std::vector<FrameField>& fields, const DefiningEquations& eqs, Exec exec = Exec::Serial);

/// Values of F(E_0), ..., F(E_n) at a point.
std::vector<Rational> tangency_values_at(const FrameField& f, const DefiningEquations& eqs, const JetPoint& p);

}  // namespace jetframe
