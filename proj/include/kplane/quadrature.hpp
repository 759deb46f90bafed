#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kplane {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, computed once per n and cached (thread safe).
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int order = 16,
                    int panels = 1);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15): bisects the interval with the
/// largest error estimate until the summed estimate is below
/// max(abs_tol, rel_tol * |value|) or `max_intervals` is reached.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol = 1e-12, double abs_tol = 0.0,
                                  int max_intervals = 4000);

/// int_0^inf f(t) dt through t = scale * tan(theta) on (0, pi/2), adaptive.
AdaptiveResult integrate_half_line(const std::function<double(double)>& f, double scale = 1.0,
                                   double rel_tol = 1e-12);

/// Pairwise (tree) summation: deterministic, error O(eps log n).
double pairwise_sum(std::span<const double> values);

}  // namespace kplane
