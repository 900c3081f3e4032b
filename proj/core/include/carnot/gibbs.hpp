#pragma once

#include <Eigen/Dense>

#include "carnot/hermitian.hpp"

namespace carnot {

/// Eigendecomposition and thermal populations of ω = e^{-G}/Tr e^{-G}
/// at a control point. Entropy and heat capacity are cached on construction.
///
/// Eigenvalues are ascending, so populations are nonincreasing; all
/// exponentials use a max-shift, safe for spectra spanning hundreds.
class GibbsPoint {
public:
    explicit GibbsPoint(const HermitianOperator& generator);

    int dim() const { return static_cast<int>(eigvals_.size()); }
    const HermitianOperator& generator() const { return generator_; }
    const Vector& eigvals() const { return eigvals_; }
    const Matrix& eigvecs() const { return eigvecs_; }
    const Vector& populations() const { return populations_; }
    double log_partition() const { return logZ_; }

    /// Thermal state ω as a dense matrix.
    Matrix state() const;

    /// Tr(ω A).
    double expectation(const HermitianOperator& A) const;

    double entropy() const { return entropy_; }
    double heat_capacity() const { return heat_capacity_; }

    /// Operator transformed into the eigenbasis of G, V† A V.
    Matrix to_eigenbasis(const HermitianOperator& A) const;

private:
    HermitianOperator generator_;
    Vector eigvals_;
    Matrix eigvecs_;
    Vector populations_;
    double logZ_;
    double entropy_;
    double heat_capacity_;
};

/// Thermal state data for G; errors on non-Hermitian input.
GibbsPoint gibbs_point(const HermitianOperator& G);

/// Kubo-Mori-Bogoliubov covariance
///   cov_ω(A,B) = ∫₀¹ Tr(A ω^{1-s} (B - <B>) ω^s) ds,
/// evaluated in the eigenbasis of G with weights f(p,q) = (p-q)/(ln p - ln q).
/// Symmetric, bilinear, positive semidefinite; cov(A, 1) = 0.
double kmb_covariance(const GibbsPoint& point, const HermitianOperator& A,
                      const HermitianOperator& B);

/// C = cov_ω(G, G) = Tr(ω G²) - Tr(ω G)², the variance of the
/// adimensional generator in its own thermal state.
double heat_capacity(const GibbsPoint& point);

/// Von Neumann entropy S = -Σ p_i ln p_i (= logZ + Tr(ω G)).
double entropy(const GibbsPoint& point);

namespace detail {
/// KMB weight with the degenerate limit f(p,p) = p; the series value
/// (p+q)/2 is used when |ln p - ln q| < 1e-9.
double kmb_weight(double p, double q);
}  // namespace detail

}  // namespace carnot
