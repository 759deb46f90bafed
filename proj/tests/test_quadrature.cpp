#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "kplane/quadrature.hpp"

using namespace kplane;
using doctest::Approx;

TEST_CASE("Gauss-Legendre weights sum to 2 and integrate polynomials exactly") {
  for (int n : {1, 2, 5, 8, 16, 32}) {
    const GaussRule& rule = gauss_legendre(n);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == Approx(2.0).epsilon(1e-14));
    // degree 2n - 1 is exact
    const int deg = 2 * n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], deg - 1);
    const double expect = (deg - 1) % 2 == 0 ? 2.0 / deg : 0.0;
    CHECK(acc == Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("composite GL on a smooth integrand") {
  const double v = integrate_gl([](double x) { return std::exp(-x) * std::cos(3 * x); }, 0.0, 4.0, 16, 4);
  const double expect = (1.0 - std::exp(-4.0) * (std::cos(12.0) - 3.0 * std::sin(12.0))) / 10.0;
  CHECK(v == Approx(expect).epsilon(1e-13));
}

TEST_CASE("adaptive Gauss-Kronrod against tanh-sinh") {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f1 = [](double x) { return std::sqrt(x) * std::log(x + 1e-300); };
  auto f2 = [](double x) { return 1.0 / (1e-3 + (x - 0.3) * (x - 0.3)); };
  auto f3 = [](double x) { return std::pow(x, -0.4) * std::exp(-x); };
  CHECK(integrate_adaptive(f1, 0.0, 1.0, 1e-12).value == Approx(ts.integrate(f1, 0.0, 1.0)).epsilon(1e-10));
  CHECK(integrate_adaptive(f2, 0.0, 1.0, 1e-12).value == Approx(ts.integrate(f2, 0.0, 1.0)).epsilon(1e-10));
  CHECK(integrate_adaptive(f3, 0.0, 2.0, 1e-12).value == Approx(ts.integrate(f3, 0.0, 2.0)).epsilon(1e-9));
}

TEST_CASE("half-line integrals") {
  const double pi = std::numbers::pi;
  CHECK(integrate_half_line([](double t) { return 1.0 / (1.0 + t * t); }).value ==
        Approx(pi / 2).epsilon(1e-12));
  CHECK(integrate_half_line([](double t) { return std::pow(1.0 + t * t, -2.5) * t * t; }, 1.0).value ==
        Approx(1.0 / 3.0).epsilon(1e-12));
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [](double t) { return std::exp(-t) / std::sqrt(t + 0.01); };
  CHECK(integrate_half_line(g, 1.0).value ==
        Approx(ts.integrate(g, 0.0, std::numeric_limits<double>::infinity())).epsilon(1e-9));
}

TEST_CASE("pairwise sum is accurate and order independent of chunking") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(1 << 20);
  long double exact = 0.0L;
  for (double& x : v) {
    x = u(rng);
    exact += x;
  }
  CHECK(pairwise_sum(v) == Approx(static_cast<double>(exact)).epsilon(1e-15));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
