#pragma once

#include <string>
#include <vector>

#include "carnot/gibbs.hpp"
#include "carnot/hermitian.hpp"
#include "carnot/superops.hpp"

namespace carnot {

/// The conjugated control operators X_j of G = Σ_j λ_j X_j.
class ControlBasis {
public:
    ControlBasis(std::vector<HermitianOperator> operators, std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(operators_.size()); }
    int dim() const { return operators_.front().dim(); }
    const HermitianOperator& operator[](int j) const { return operators_[static_cast<size_t>(j)]; }
    const std::vector<HermitianOperator>& operators() const { return operators_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// G = Σ_j λ_j X_j.
    HermitianOperator assemble(const Vector& lambda) const;

private:
    std::vector<HermitianOperator> operators_;
    std::vector<std::string> labels_;
};

enum class MetricSource { kmb_single_timescale, multi_timescale, lindbladian };

/// Thermodynamic metric m_ij at a control point (units of time);
/// symmetric positive-semidefinite.
struct ThermoMetric {
    ThermoMetric(RealMatrix m, MetricSource source, Vector point);

    RealMatrix m;
    MetricSource source;
    Vector point;

    double min_eigenvalue() const;
};

/// Single-timescale metric m_ij = τ_eq ∂²lnZ/∂λ_i∂λ_j = τ_eq cov_ω(X_i, X_j).
ThermoMetric kmb_metric(const ControlBasis& basis, const Vector& lambda, double tau_eq);

/// Per-observable timescales: m_ij = (τ_i + τ_j)/2 · ∂²lnZ/∂λ_i∂λ_j.
/// Reduces to kmb_metric when all τ_i are equal.
ThermoMetric multiscale_metric(const ControlBasis& basis, const Vector& lambda,
                               const Vector& taus);

/// General Lindbladian metric m_ij = ½ Tr(X_i L⁻¹[J_ω[X_j]] + X_j L⁻¹[J_ω[X_i]])
/// with L⁻¹ the Drazin inverse; the sign convention is fixed by Σ >= 0,
/// i.e. by the reduction to kmb_metric for exponential relaxation.
ThermoMetric lindblad_metric(const ControlBasis& basis, const Vector& lambda,
                             const Superoperator& L);

/// Entropy gradient s_i = Tr(G J_ω[X_i]) = -cov_ω(G, X_i), so that
/// dS = Σ_i s_i dλ_i along the protocol.
Vector entropy_gradient(const ControlBasis& basis, const Vector& lambda);

/// The equivalent classical form s_i = Tr[(Tr[Gω]ω - Gω) X_i]; agrees with
/// entropy_gradient identically since [G, ω] = 0.
Vector entropy_gradient_classical(const ControlBasis& basis, const Vector& lambda);

}  // namespace carnot
