#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "kplane/field.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/params.hpp"
#include "kplane/profile.hpp"

namespace kplane {

/// Smallest tail exponent for which a profile is admissible for (k, d):
/// gamma p > d, equivalently (gamma - k) q > d - k.
double min_admissible_tail(const TransformParams& params);

/// Random nonincreasing step function: 1-6 levels at log-uniform breakpoints
/// in [1e-2, 1e2], then a power tail with gamma in [tail_min + 0.05, tail_min + 3].
RadialProfile random_step_profile(CounterRng& rng, int d, std::vector<double> radii,
                                  double tail_min);

/// Random nonnegative profile from one of several families (sums of bumps,
/// shells, steps, power laws), generally not monotone.
RadialProfile random_profile(CounterRng& rng, int d, std::vector<double> radii, double tail_min);

/// Random nonnegative axisymmetric field: a sum of 1-3 Gaussian bumps on the
/// axis with tail exponent gamma.
AxiSymField random_field(CounterRng& rng, int d, std::shared_ptr<const AxiGrid> grid,
                         double gamma);

/// k+1 random points of R^d (standard normal, |x_d| >= 0.05).
PointTuple random_tuple(CounterRng& rng, int k, int d);

}  // namespace kplane
