#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "kplane/field.hpp"
#include "kplane/operators.hpp"
#include "kplane/params.hpp"
#include "kplane/parallel.hpp"
#include "kplane/profile.hpp"

namespace kplane {

struct FlowOptions {
  std::size_t n_rho = 1024;
  std::size_t n_s = 1024;
  double extent = 1e5;
  double scale = 1.0;
  std::vector<double> radii = default_radial_grid();
  Exec exec = Exec::parallel;
  /// Allowed violation of the monotonicity invariants.
  double slack = 1e-6;
  /// Gauss points per cell axis when sampling S g (see s_symmetry_radial).
  int cell_points = 2;
  int subcells = 1;  ///< rearrangement sub-cells per grid cell and axis; pair with cell_points = 1
  /// Rescale every iterate to ||f0||_p. S and V preserve the norm exactly; the
  /// discrete round trip profile -> field -> profile does not (see norm_defects).
  bool renormalize = true;
  /// Record the functional ratio every this many iterations (the last one always).
  std::size_t ratio_every = 1;

  AxiGrid grid() const { return AxiGrid::sinh_spaced(n_rho, n_s, extent, scale); }
};

struct ConvergenceReport {
  std::vector<std::size_t> iterates_kept;
  /// ||g_n - C h||_p / ||f0||_p
  std::vector<double> distances;
  /// functional_ratio(g_n); NaN where not recorded
  std::vector<double> ratios;
  /// ||g_n||_p
  std::vector<double> norms;
  /// ||g_{n+1} - g_n||_p / ||g_n||_p, one entry per step taken
  std::vector<double> steps;
  /// ||V S g_n||_p / ||g_n||_p - 1 before any rescaling, one entry per step
  std::vector<double> norm_defects;
  double amplitude = 0.0;  ///< C = ||f0||_p / ||h||_p
  bool converged = false;
  std::size_t converged_at = 0;
  bool distance_monotone = true;
  bool ratio_monotone = true;
  std::optional<RadialProfile> final_profile;

  double final_distance() const { return distances.empty() ? 0.0 : distances.back(); }
};

/// Named initial profiles: "h" (the extremizer), "indicator" (of [0, 1]) and
/// "gaussian" (exp(-r^2)), each scaled to unit L^p norm in r^{d-1} dr.
RadialProfile preset_profile(std::string_view name, const TransformParams& params,
                             std::vector<double> radii = default_radial_grid());
bool is_preset(std::string_view name);

/// One step g -> V S g with g radial.
RadialProfile vs_step(const RadialProfile& g, const TransformParams& params,
                      std::shared_ptr<const AxiGrid> grid, const FlowOptions& options);

/// g_{n+1} = V S g_n until ||g_{n+1} - g_n||_p < tol ||g_n||_p or max_iters steps.
/// When the test succeeds at n the limit is g_n; the trial step shows up only
/// in `steps`.
/// Norms are Lebesgue L^p norms on R^d.
ConvergenceReport competing_iterate(const RadialProfile& f0, const TransformParams& params,
                                    std::size_t max_iters, double tol,
                                    const FlowOptions& options = {});

struct DilationFit {
  double mu = 1.0;
  /// ||(VS)^2 f - mu^{d/p} f(mu .)||_p / ||(VS)^2 f||_p
  double residual = 0.0;
};

/// Radius holding half of the L^p mass of f (Lebesgue measure on R^d).
double median_mass_radius(const RadialProfile& f, double p);

DilationFit vs_squared_dilation_fit(const RadialProfile& f, const TransformParams& params,
                                    const FlowOptions& options = {});

struct EllipsoidReport {
  double c = 0.0;
  double s0 = 0.0;
  /// RMS of c rho^2 + (s + s0)^2 / c over R_l^2, minus one, over all contour points.
  double rms_error = 0.0;
  /// (max - min) / mean of the per-level c.
  double c_spread = 0.0;
  std::vector<double> level_c;
  std::vector<double> level_s0;
  std::size_t points = 0;
  std::size_t skipped_levels = 0;
};

/// Traces contours of g at 0.1, ..., 0.9 of its maximum by edge crossings and
/// fits c rho^2 + c^{-1} (s + s0)^2 = R_l^2.
EllipsoidReport ellipsoid_levelset_check(const AxiSymField& g);

}  // namespace kplane
