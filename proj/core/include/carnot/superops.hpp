#pragma once

#include <optional>

#include "carnot/gibbs.hpp"
#include "carnot/hermitian.hpp"

namespace carnot {

/// Classical Markovian generator on populations: ṗ_i = Σ_j Γ_ij p_j with
/// Γ_ij = rate j -> i, nonnegative off-diagonals, columns summing to zero.
class RateMatrix {
public:
    RateMatrix(RealMatrix entries, Vector stationary);

    int size() const { return static_cast<int>(entries_.rows()); }
    const RealMatrix& entries() const { return entries_; }
    const Vector& stationary() const { return stationary_; }

    /// Unique traceless x with Γ x = y for traceless y (Drazin inverse on
    /// the zero-sum subspace), via the bordered system
    /// [Γ, stationary; 1ᵀ, 0]·(x, c) = (y, 0).
    Vector drazin_solve(const Vector& y) const;

private:
    RealMatrix entries_;
    Vector stationary_;
};

/// Detailed-balance bosonic rate matrix for levels E (sorted nondecreasing,
/// E_0 = 0) with spectral density ∝ ν^alpha:
///   rate(j → i) = Γ₀ (N(w)+1) w^alpha for a decay across gap w = E_j - E_i > 0,
///   rate(i → j) = Γ₀ N(w) w^alpha for the matching excitation,
/// N(w) = 1/(e^w - 1). Zero gaps take the w → 0 limit of N(w)w^alpha
/// (finite only for alpha >= 1, otherwise a singular-rate error).
/// The stationary vector is the Gibbs distribution of diag(E).
RateMatrix rate_matrix_bosonic(const Vector& energies, double alpha, double gamma0);

/// Generator L acting on vectorized operators (column stacking), with the
/// thermal state as fixed point: L[ω] = 0 and vec(1)ᵀ L = 0.
class Superoperator {
public:
    Superoperator(Matrix matrix, std::optional<GibbsPoint> fixed_point);

    int dim() const { return dim_; }
    const Matrix& matrix() const { return matrix_; }
    const std::optional<GibbsPoint>& fixed_point() const { return fixed_point_; }

    HermitianOperator apply(const HermitianOperator& X) const;

    /// L[ρ] = (ω Tr ρ - ρ)/τ_eq: exponential relaxation to equilibrium with
    /// a single timescale. Its Drazin inverse is Y ↦ -τ_eq Y on traceless Y.
    static Superoperator exponential_relaxation(const GibbsPoint& point, double tau_eq);

    /// Embeds a classical rate matrix as a Lindbladian in the eigenbasis of
    /// diag(energies): populations follow Γ, a coherence ρ_ij decays at half
    /// the summed outflow rates of levels i and j.
    static Superoperator from_rate_matrix(const RateMatrix& rate, const Vector& energies);

    static Matrix vec(const Matrix& X);
    static Matrix unvec(const Eigen::VectorXcd& x, int n);

private:
    int dim_;
    Matrix matrix_;
    std::optional<GibbsPoint> fixed_point_;
};

/// J_ω[A] = -∫₀¹ ω^{1-x} (A - <A>) ω^x dx, the derivative map of the
/// thermal state: ∂ω/∂λ_j = J_ω[X_j]. Traceless Hermitian;
/// Tr(B · J_ω[A]) = -cov_ω(B, A).
HermitianOperator j_omega(const GibbsPoint& point, const HermitianOperator& A);

/// Unique traceless X with L[X] = Y for traceless Y, via the bordered
/// system [L, vec(ω); vec(1)ᵀ, 0]·(x, c) = (vec Y, 0). Fails when the zero
/// eigenvalue of L is not simple.
HermitianOperator drazin_apply(const Superoperator& L, const HermitianOperator& Y);

}  // namespace carnot
