#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace carnot {

/// Pairwise (cascade) summation: deterministic result independent of
/// evaluation order of the producers, O(log n) error growth.
double pairwise_sum(std::span<const double> xs);

/// Composite trapezoid on a uniform grid over [0,1] (values.size() >= 2).
double trapezoid_uniform(std::span<const double> values);

/// Composite Simpson over [a,b] with n subintervals (n even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Number of worker threads honoring the CARNOT_LD_THREADS cap.
int thread_budget();

/// Run fn(i) for i in [0,n). Tasks must write only to their own slots;
/// results are deterministic regardless of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace carnot
