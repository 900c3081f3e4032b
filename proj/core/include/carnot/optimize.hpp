#pragma once

#include <cstdint>
#include <functional>

#include "carnot/hermitian.hpp"

namespace carnot {

using ScalarObjective = std::function<double(const Vector&)>;

struct OptimizerConfig {
    double tol = 1e-8;       // golden-section interval / Nelder-Mead simplex tolerance
    int max_iter = 2000;
    int starts = 8;          // multi-start budget for k >= 2
    std::uint64_t seed = 0;  // jitters the start lattice; 0 = plain lattice
    double lower = 1e-2;     // per-coordinate bracket for the start lattice
    double upper = 50.0;
};

struct OptimumResult {
    Vector argmax;
    double value;
    int evaluations = 0;
};

/// Golden-section maximization on [lo, hi] for unimodal f.
OptimumResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol = 1e-8, int max_iter = 200);

/// Derivative-free Nelder-Mead maximization from one start.
OptimumResult nelder_mead_maximize(const ScalarObjective& f, const Vector& x0, double step,
                                   double tol = 1e-8, int max_iter = 2000);

/// Multi-start maximization: golden section for k = 1, otherwise Nelder-Mead
/// from a log-spaced lattice of starts (seeded jitter optional). Objectives
/// may return -inf or throw to mark a point infeasible. Ties resolve to the
/// lexicographically smallest argmax.
OptimumResult multi_start_maximize(const ScalarObjective& f, int k, const OptimizerConfig& cfg);

}  // namespace carnot
