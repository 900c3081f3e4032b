#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "carnot/metrics.hpp"

namespace carnot {

/// How the thermodynamic metric is built at each point of a protocol.
struct MetricRecipe {
    enum class Kind { kmb, multiscale, lindblad_bosonic };

    Kind kind = Kind::kmb;
    double tau_eq = 1.0;   // kmb
    Vector taus;           // multiscale
    double alpha = 0.0;    // lindblad_bosonic: bath ohmicity
    double gamma0 = 1.0;   // lindblad_bosonic: base rate

    static MetricRecipe kmb(double tau_eq);
    static MetricRecipe multiscale(Vector taus);
    /// Detailed-balance bosonic rate matrix built on the instantaneous
    /// spectrum; requires commuting diagonal controls.
    static MetricRecipe lindblad_bosonic(double alpha, double gamma0);
};

/// Evaluate the recipe at a control point.
ThermoMetric evaluate_metric(const MetricRecipe& recipe, const ControlBasis& basis,
                             const Vector& lambda);

/// Sampled control protocol λ_j(s_m) on the uniform grid s_m = m/(M-1).
class ControlProtocol {
public:
    ControlProtocol(ControlBasis basis, RealMatrix samples, MetricRecipe metric);

    const ControlBasis& basis() const { return basis_; }
    const RealMatrix& samples() const { return samples_; }
    const MetricRecipe& metric() const { return metric_; }
    int grid_size() const { return static_cast<int>(samples_.rows()); }

    ControlProtocol reversed() const;

    std::string to_json() const;
    static ControlProtocol from_json(const std::string& text);
    static ControlProtocol from_json_stream(std::istream& in);

private:
    ControlBasis basis_;
    RealMatrix samples_;
    MetricRecipe metric_;
};

/// ΔS and Σ of one stroke.
struct DissipationSummary {
    double delta_S = 0;        // trapezoid of Σ_i s_i λ̇_i
    double delta_S_exact = 0;  // S(end) - S(start), exact state-function value
    double Sigma = 0;          // trapezoid of λ̇ᵀ m λ̇ (units of time)
    double delta_S_error = 0;  // Richardson estimates of the quadrature errors
    double Sigma_error = 0;
    std::vector<double> per_segment_delta_S;
    std::vector<double> per_segment_Sigma;
};

struct IntegrationOptions {
    /// Relative tolerance for the Richardson quadrature-error check;
    /// exceeding it raises resolution_error with a suggested grid size.
    double rel_tol = 1e-4;
};

/// Integrate ΔS = ∫ s·λ̇ ds and Σ = ∫ λ̇ᵀ m λ̇ ds along the protocol.
/// λ̇ by centered differences (one-sided second order at the endpoints),
/// composite trapezoid with pairwise summation.
DissipationSummary integrate_dissipation(const ControlProtocol& p,
                                         const IntegrationOptions& opts = {});

enum class CycleShape { raised_cosine, linear, smoothstep };

/// Single-control protocol G(s) = λ(s) G0 with λ(0) = 1, λ(1) = 1 + ε and a
/// smooth monotone shape (default raised cosine, whose λ̇ vanishes at the
/// endpoints). ε = 0 gives the constant protocol.
ControlProtocol proportional_cycle(const HermitianOperator& G0, double epsilon, int M,
                                   CycleShape shape = CycleShape::raised_cosine,
                                   double tau_eq = 1.0);

}  // namespace carnot
