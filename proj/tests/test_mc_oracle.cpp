#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "kplane/errors.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/random.hpp"

using namespace kplane;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

PointFunction gaussian() {
  return [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::exp(-s);
  };
}

PointFunction h_fn() {
  return [](std::span<const double> x) {
    double s = 1.0;
    for (double v : x) s += v * v;
    return 1.0 / s;
  };
}
}  // namespace

TEST_CASE("phi is an involution") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    CounterRng rng(61, i);
    const PointTuple t = random_tuple(rng, 1, 3);
    const Point& x = t.points[0];
    const Point y = phi_map(phi_map(x));
    for (std::size_t j = 0; j < x.size(); ++j) CHECK(y[j] == Approx(x[j]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(phi_map(Point{1.0, 0.0}), DomainError);
}

TEST_CASE("phi Jacobian against central differences") {
  const Point x{1.0, 2.0, 2.0};
  const double h = 1e-6;
  Eigen::Matrix3d jac;
  for (int c = 0; c < 3; ++c) {
    Point a = x, b = x;
    a[c] += h;
    b[c] -= h;
    const Point pa = phi_map(a), pb = phi_map(b);
    for (int r = 0; r < 3; ++r) jac(r, c) = (pa[r] - pb[r]) / (2 * h);
  }
  CHECK(std::abs(jac.determinant()) == Approx(1.0 / 16.0).epsilon(1e-8));
  CHECK(phi_jacobian(x) == Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("simplex volumes") {
  CHECK(simplex_volume(PointTuple{{{0, 0}, {1, 0}}}) == Approx(1.0));
  CHECK(simplex_volume(PointTuple{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}}) == Approx(0.5));
  CHECK(parallelotope_volume(PointTuple{{{0, 0, 0}, {1, 0, 0}, {0, 2, 0}}}) == Approx(2.0));
  CHECK(simplex_volume(PointTuple{{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}}) == Approx(0.0));
}

TEST_CASE("volume ratio identity (property)") {
  const int kd[][2] = {{1, 2}, {1, 3}, {2, 3}, {2, 4}};
  for (const auto& x : kd) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      CounterRng rng(62, i);
      const VolumeRatio vr = volume_ratio(random_tuple(rng, x[0], x[1]));
      CHECK(vr.lhs == Approx(vr.rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("plane integrals of a Gaussian") {
  const PointFunction g = gaussian();
  // line x_2 = t in R^2: sqrt(pi) exp(-t^2)
  for (double t : {0.0, 0.7, 2.0}) {
    CHECK(plane_integral(g, PointTuple{{{-3.0, t}, {5.0, t}}}) ==
          Approx(std::sqrt(pi) * std::exp(-t * t)).epsilon(1e-9));
  }
  // plane x_3 = t in R^3: pi exp(-t^2)
  CHECK(plane_integral(g, PointTuple{{{0.0, 0.0, 1.5}, {1.0, 2.0, 1.5}, {-1.0, 0.5, 1.5}}}) ==
        Approx(pi * std::exp(-2.25)).epsilon(1e-9));
  const PointTuple t{{{0.0, 0.3}, {2.0, 0.3}}};
  CHECK(tilde_r(g, t) == Approx(plane_integral(g, t) / 2.0).epsilon(1e-12));
}

TEST_CASE("inversion identity for tilde_r with a non-radial function (property)") {
  const PointFunction f = [](std::span<const double> x) {
    const double a = x[0] - 0.3, b = x[x.size() - 1] + 0.8;
    double s = a * a + 3.0 * b * b;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) s += x[i] * x[i];
    return std::exp(-s);
  };
  for (const PointFunction& fn : {h_fn(), f}) {
    const PointFunction sf = s_symmetry_function(fn, 1);
    for (int d : {2, 3}) {
      for (std::uint64_t i = 0; i < 20; ++i) {
        CounterRng rng(63, i);
        const PointTuple t = random_tuple(rng, 1, d);
        PointTuple image;
        double prod = 1.0;
        for (const Point& x : t.points) {
          image.points.push_back(phi_map(x));
          prod *= std::abs(x.back());
        }
        CHECK(tilde_r(sf, t) == Approx(tilde_r(fn, image) / prod).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("symmetry function values") {
  const PointFunction f = h_fn();
  const PointFunction sf = s_symmetry_function(f, 1);
  const Point x{0.5, -2.0};
  const Point y = phi_map(x);
  CHECK(sf(x) == Approx(f(y) / 4.0).epsilon(1e-14));
  CHECK(f(x) == Approx(sf(x)).epsilon(1e-14));
}

TEST_CASE("direct d = 2 Radon norm of a Gaussian") {
  // R f(theta, t) = sqrt(pi) exp(-t^2)
  const double q = 3.0;
  const double expect = std::pow(pi, 0.5 * q) * std::sqrt(pi / q);
  CHECK(radon2d_direct(gaussian(), q, 4, 1e-10, Exec::serial) == Approx(expect).epsilon(1e-8));
}

TEST_CASE("Monte Carlo: determinism and agreement at small n") {
  const PointFunction h = h_fn();
  const MCEstimate a = drury_norm_mc(h, TransformParams(1, 2), 20000, 9, Exec::serial);
  const MCEstimate b = drury_norm_mc(h, TransformParams(1, 2), 20000, 9, Exec::serial);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.n_samples == 20000);
  CHECK(std::abs(a.value - 2.0 * std::pow(pi, 3)) < 4.0 * a.std_error);
  const MCEstimate c = drury_norm_mc(h, TransformParams(1, 3), 20000, 10, Exec::serial);
  CHECK(std::abs(c.value - std::pow(pi, 5)) < 4.0 * c.std_error);
  CHECK_THROWS_AS(drury_norm_mc(h, TransformParams(2, 3), 100, 1), DomainError);
}

TEST_CASE("counter RNG streams") {
  CounterRng a(1, 2), b(1, 2), c(1, 3);
  const double x = a.uniform();
  CHECK(x == b.uniform());
  CHECK(x != c.uniform());
  CHECK(x > 0.0);
  CHECK(x < 1.0);
}
