#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace kplane {

/// Interpolation rule between profile nodes, both in the variable log r.
enum class Interp {
  log_linear,  ///< piecewise linear in (log r, value)
  log_pchip,   ///< monotone piecewise cubic Hermite (Fritsch-Carlson) in log r
};

std::string_view to_string(Interp interp);
Interp interp_from_string(std::string_view name);

/// n log-spaced radii from r_min to r_max inclusive.
std::vector<double> log_grid(double r_min, double r_max, std::size_t n);

/// Default radial grid: 2048 log-spaced nodes on [1e-4, 1e4].
std::vector<double> default_radial_grid();

/// A nonnegative function of the radius sampled on a strictly increasing grid.
///
/// Point evaluation uses the interpolation rule between nodes, the value of
/// the first node on [0, r_min), and the power-law tail
///   f(r) = f(r_max) (r_max / r)^tail_exponent,   r > r_max.
///
/// Integrals (norms, distribution functions, rearrangement) use the step
/// interpretation: node i carries its value on the cell [a_i, b_i] bounded by
/// geometric midpoints of neighbouring nodes, with a_0 = 0 and
/// b_{n-1} = r_max, followed by the analytic tail.
class RadialProfile {
 public:
  RadialProfile(int d, std::vector<double> radii, std::vector<double> values,
                double tail_exponent, Interp interp = Interp::log_pchip);

  /// Samples fn at the radii.
  static RadialProfile sample(int d, std::vector<double> radii,
                              const std::function<double(double)>& fn, double tail_exponent,
                              Interp interp = Interp::log_pchip);

  int dim() const { return d_; }
  std::size_t size() const { return radii_.size(); }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> values() const { return values_; }
  double radius(std::size_t i) const { return radii_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double tail_exponent() const { return tail_exponent_; }
  Interp interp() const { return interp_; }
  double r_min() const { return radii_.front(); }
  double r_max() const { return radii_.back(); }

  /// Interpolated value at r >= 0.
  double operator()(double r) const;

  /// Value on the panel [r_i, r_{i+1}] at log-radius x (no bounds search).
  double panel_value(std::size_t i, double log_r) const;

  double log_radius(std::size_t i) const { return log_radii_[i]; }

  /// Step-interpretation cell of node i.
  double cell_lower(std::size_t i) const;
  double cell_upper(std::size_t i) const;

  bool nonincreasing() const;
  bool is_zero() const;

  /// a * f on the same grid.
  RadialProfile scaled(double a) const;

  /// Same grid and metadata, new values.
  RadialProfile with_values(std::vector<double> values) const;

  /// x -> f(lambda x), represented exactly on the grid radii / lambda.
  RadialProfile dilated(double lambda) const;

  /// Re-evaluates the profile on another grid, keeping tail and rule.
  RadialProfile resampled(std::vector<double> radii) const;

  /// Same radii (within 1e-12 relative) so that node-wise arithmetic is valid.
  bool same_grid(const RadialProfile& other) const;

 private:
  void build_slopes();

  int d_;
  std::vector<double> radii_;
  std::vector<double> log_radii_;
  std::vector<double> values_;
  std::vector<double> slopes_;  // d value / d log r at nodes (pchip only)
  double tail_exponent_;
  Interp interp_;
};

}  // namespace kplane
