#pragma once

#include <vector>

#include "kplane/field.hpp"
#include "kplane/profile.hpp"

namespace kplane {

/// The measure prefactor * r^{m-1} dr on (0, inf).
struct WeightedMeasure {
  int m = 1;
  double prefactor = 1.0;

  /// r^{d-1} dr, the measure of the radial variable alone.
  static WeightedMeasure radial(int d) { return {d, 1.0}; }
  /// |S^{d-1}| r^{d-1} dr, Lebesgue measure of R^d seen through the radius.
  static WeightedMeasure lebesgue(int d);

  /// mu([0, R]) = prefactor R^m / m.
  double ball(double radius) const;
  /// mu([a, b]).
  double shell(double a, double b) const;
};

/// t -> mu({f >= t}) for a step-interpreted profile (or a field).
///
/// thresholds are the distinct sample values in decreasing order and
/// measures[j] the measure of the cells with value >= thresholds[j].
/// A profile contributes in addition the power-law tail beyond r_max:
///   tail(t) = tail_scale * ((tail_value / t)^tail_power - 1)   for t < tail_value.
struct DistributionFunction {
  std::vector<double> thresholds;
  std::vector<double> measures;
  double tail_value = 0.0;
  double tail_scale = 0.0;
  double tail_power = 0.0;

  double operator()(double t) const;
  bool empty() const { return thresholds.empty() || thresholds.front() <= 0.0; }
};

double lp_norm(const RadialProfile& f, double p, const WeightedMeasure& mu);
/// Lebesgue L^p norm on R^d over the grid box (step interpretation).
double lp_norm(const AxiSymField& f, double p);

/// ||f - g||_p. g is resampled on f's grid if the grids differ.
double lp_distance(const RadialProfile& f, const RadialProfile& g, double p,
                   const WeightedMeasure& mu);
/// Fields on the same grid.
double lp_distance(const AxiSymField& f, const AxiSymField& g, double p);

DistributionFunction distribution_function(const RadialProfile& f, const WeightedMeasure& mu);
DistributionFunction distribution_function(const AxiSymField& f);

/// ||f||_{p,r} = (p int_0^inf (t d_f(t)^{1/p})^r dt/t)^{1/r}, and
/// sup_t t d_f(t)^{1/p} for r = inf (pass std::numeric_limits<double>::infinity()).
/// With this normalization ||f||_{p,p} = ||f||_p.
double lorentz_quasinorm(const DistributionFunction& df, double p, double r);
double lorentz_quasinorm(const RadialProfile& f, double p, double r, const WeightedMeasure& mu);

struct InterpolationReport {
  double lhs = 0.0;  ///< ||f||_{p,r}^r
  double rhs = 0.0;  ///< ||f||_{p,inf}^{r-p} ||f||_p^p
  bool satisfied = false;
};

/// ||f||_{p,r}^r <= ||f||_{p,inf}^{r-p} ||f||_p^p for r > p.
InterpolationReport interpolation_check(const RadialProfile& f, double p, double r,
                                        const WeightedMeasure& mu);

}  // namespace kplane
