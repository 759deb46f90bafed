#include "kplane/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kplane/errors.hpp"

namespace kplane {

std::string_view to_string(Interp interp) {
  switch (interp) {
    case Interp::log_linear:
      return "log_linear";
    case Interp::log_pchip:
      return "log_pchip";
  }
  return "unknown";
}

Interp interp_from_string(std::string_view name) {
  if (name == "log_linear") return Interp::log_linear;
  if (name == "log_pchip") return Interp::log_pchip;
  throw DomainError("unknown interpolation rule '" + std::string(name) + "'");
}

std::vector<double> log_grid(double r_min, double r_max, std::size_t n) {
  if (!(r_min > 0.0) || !(r_max > r_min) || n < 2) {
    throw DomainError("log_grid: need 0 < r_min < r_max and n >= 2");
  }
  std::vector<double> r(n);
  const double lo = std::log(r_min);
  const double step = (std::log(r_max) - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::exp(lo + step * static_cast<double>(i));
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

std::vector<double> default_radial_grid() { return log_grid(1e-4, 1e4, 2048); }

RadialProfile::RadialProfile(int d, std::vector<double> radii, std::vector<double> values,
                             double tail_exponent, Interp interp)
    : d_(d),
      radii_(std::move(radii)),
      values_(std::move(values)),
      tail_exponent_(tail_exponent),
      interp_(interp) {
  if (d_ < 1) throw DomainError("RadialProfile: dimension must be positive");
  if (radii_.size() < 2 || radii_.size() != values_.size()) {
    throw DomainError("RadialProfile: need >= 2 nodes and one value per node");
  }
  if (!(tail_exponent_ > 0.0) || !std::isfinite(tail_exponent_)) {
    throw DomainError("RadialProfile: tail exponent must be positive and finite");
  }
  log_radii_.resize(radii_.size());
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i]) || (i > 0 && !(radii_[i] > radii_[i - 1]))) {
      throw DomainError("RadialProfile: radii must be positive, finite and strictly increasing");
    }
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("RadialProfile: values must be finite and nonnegative (node " +
                        std::to_string(i) + ")");
    }
    log_radii_[i] = std::log(radii_[i]);
  }
  if (interp_ == Interp::log_pchip) build_slopes();
}

RadialProfile RadialProfile::sample(int d, std::vector<double> radii,
                                    const std::function<double(double)>& fn,
                                    double tail_exponent, Interp interp) {
  std::vector<double> values(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) values[i] = fn(radii[i]);
  return RadialProfile(d, std::move(radii), std::move(values), tail_exponent, interp);
}

void RadialProfile::build_slopes() {
  // Fritsch-Carlson / Fritsch-Butland slopes as in the usual PCHIP.
  const std::size_t n = values_.size();
  slopes_.assign(n, 0.0);
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = log_radii_[i + 1] - log_radii_[i];
    delta[i] = (values_[i + 1] - values_[i]) / h[i];
  }
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      slopes_[i] = 0.0;
      continue;
    }
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) {
      m = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(m) > std::abs(3.0 * d0)) {
      m = 3.0 * d0;
    }
    return m;
  };
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double RadialProfile::panel_value(std::size_t i, double log_r) const {
  const double x0 = log_radii_[i];
  const double h = log_radii_[i + 1] - x0;
  const double t = (log_r - x0) / h;
  const double v0 = values_[i];
  const double v1 = values_[i + 1];
  if (interp_ == Interp::log_linear) {
    return v0 + t * (v1 - v0);
  }
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double value = (2.0 * t3 - 3.0 * t2 + 1.0) * v0 + (t3 - 2.0 * t2 + t) * h * slopes_[i] +
                       (-2.0 * t3 + 3.0 * t2) * v1 + (t3 - t2) * h * slopes_[i + 1];
  return value < 0.0 ? 0.0 : value;
}

double RadialProfile::operator()(double r) const {
  if (r <= radii_.front()) return values_.front();
  if (r >= radii_.back()) {
    return values_.back() * std::pow(radii_.back() / r, tail_exponent_);
  }
  const double x = std::log(r);
  auto it = std::upper_bound(log_radii_.begin(), log_radii_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - log_radii_.begin()) - 1;
  return panel_value(std::min(i, size() - 2), x);
}

double RadialProfile::cell_lower(std::size_t i) const {
  return i == 0 ? 0.0 : std::sqrt(radii_[i - 1] * radii_[i]);
}

double RadialProfile::cell_upper(std::size_t i) const {
  return i + 1 == size() ? radii_.back() : std::sqrt(radii_[i] * radii_[i + 1]);
}

bool RadialProfile::nonincreasing() const {
  return std::is_sorted(values_.rbegin(), values_.rend());
}

bool RadialProfile::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

RadialProfile RadialProfile::scaled(double a) const {
  if (!(a >= 0.0)) throw DomainError("RadialProfile::scaled: factor must be nonnegative");
  std::vector<double> v(values_);
  for (double& x : v) x *= a;
  return with_values(std::move(v));
}

RadialProfile RadialProfile::with_values(std::vector<double> values) const {
  return RadialProfile(d_, radii_, std::move(values), tail_exponent_, interp_);
}

RadialProfile RadialProfile::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("RadialProfile::dilated: lambda must be positive");
  std::vector<double> r(radii_);
  for (double& x : r) x /= lambda;
  return RadialProfile(d_, std::move(r), values_, tail_exponent_, interp_);
}

RadialProfile RadialProfile::resampled(std::vector<double> radii) const {
  std::vector<double> v(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) v[i] = (*this)(radii[i]);
  return RadialProfile(d_, std::move(radii), std::move(v), tail_exponent_, interp_);
}

bool RadialProfile::same_grid(const RadialProfile& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(other.radii_[i] - radii_[i]) > 1e-12 * radii_[i]) return false;
  }
  return true;
}

}  // namespace kplane
