#include "kplane/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "kplane/errors.hpp"

namespace kplane {

TransformParams::TransformParams(int k, int d) : k_(k), d_(d), p_(d + 1, k + 1), q_(d + 1, 1) {
  if (d < 2 || k < 1 || k > d - 1) {
    throw DomainError("invalid (k, d) = (" + std::to_string(k) + ", " + std::to_string(d) +
                      "): need d >= 2 and 1 <= k <= d - 1");
  }
}

bool TransformParams::valid() const {
  return d_ >= 2 && k_ >= 1 && k_ <= d_ - 1 && p_ == Rational(d_ + 1, k_ + 1) &&
         q_ == Rational(d_ + 1, 1) && p_ < q_;
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_fn(double x) {
  using std::numbers::pi;
  if (!(x > 0.0) && x == std::floor(x)) {
    throw DomainError("gamma_fn: pole at non-positive integer " + std::to_string(x));
  }
  if (x < 0.5) {
    return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    acc += kLanczosCoef[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("beta_fn: arguments must be positive");
  }
  return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y);
}

double sphere_area(int m) {
  if (m <= 0) {
    throw DomainError("sphere_area: need m >= 1, got " + std::to_string(m));
  }
  const double half = 0.5 * m;
  return 2.0 * std::pow(std::numbers::pi, half) / gamma_fn(half);
}

double ball_volume(int m) { return sphere_area(m) / m; }

double i_integral(int m, int n) {
  if (m < 0) {
    throw DomainError("i_integral: need m >= 0, got " + std::to_string(m));
  }
  if (n - m - 1 <= 0) {
    throw DivergenceError("i_integral: I(" + std::to_string(m) + ", " + std::to_string(n) +
                          ") diverges, need n > m + 1");
  }
  return 0.5 * beta_fn(0.5 * (m + 1), 0.5 * (n - m - 1));
}

double best_constant(const TransformParams& params) {
  const int k = params.k();
  const int d = params.d();
  // log form keeps |S^k|^d / |S^d|^k well scaled for large d
  const double log_val = (k - d) * std::log(2.0) + d * std::log(sphere_area(k + 1)) -
                         k * std::log(sphere_area(d + 1));
  return std::exp(log_val / (d + 1));
}

double best_constant_gamma_form(const TransformParams& params) {
  const double k = params.k();
  const double d = params.d();
  return std::pow(std::numbers::pi, (d - k) / (2.0 * (d + 1))) *
         std::pow(gamma_fn(0.5 * (d + 1)), k / (d + 1)) *
         std::pow(gamma_fn(0.5 * (k + 1)), -d / (d + 1));
}

double radial_conversion_factor(const TransformParams& params) {
  const int k = params.k();
  const int d = params.d();
  return sphere_area(k) * std::pow(sphere_area(d - k), 1.0 / params.q()) /
         std::pow(sphere_area(d), 1.0 / params.p());
}

double drury_measure_constant(const TransformParams& params) {
  const int k = params.k();
  const int d = params.d();
  double num = 1.0;
  for (int j = d - k + 1; j <= d; ++j) num *= sphere_area(j);
  double den = 1.0;
  for (int j = 1; j <= k; ++j) den *= sphere_area(j);
  return num / den;
}

}  // namespace kplane
