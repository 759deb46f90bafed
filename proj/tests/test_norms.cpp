#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "kplane/errors.hpp"
#include "kplane/norms.hpp"
#include "kplane/operators.hpp"
#include "kplane/random.hpp"
#include "kplane/special.hpp"

using namespace kplane;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const int kd_pairs[][2] = {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};

RadialProfile indicator(int d, double radius) {
  return RadialProfile::sample(d, default_radial_grid(),
                               [radius](double r) { return r <= radius ? 1.0 : 0.0; }, 2.0,
                               Interp::log_linear);
}
}  // namespace

TEST_CASE("||h||_p^p in the radial measure is B(d/2, 1/2) / 2") {
  for (const auto& kd : kd_pairs) {
    const TransformParams params(kd[0], kd[1]);
    const RadialProfile h = extremizer_profile(ExtremizerSpec(params));
    const double expect = 0.5 * boost::math::beta(0.5 * kd[1], 0.5);
    const double got = std::pow(lp_norm(h, params.p(), WeightedMeasure::radial(kd[1])), params.p());
    CAPTURE(kd[0]);
    CAPTURE(kd[1]);
    CHECK(got == Approx(expect).epsilon(1e-4));
  }
}

TEST_CASE("Gaussian L^2 norm in R^3") {
  const RadialProfile g = RadialProfile::sample(3, default_radial_grid(),
                                                [](double r) { return std::exp(-r * r); }, 2.0);
  const double expect = std::pow(pi / 2.0, 0.75);
  CHECK(lp_norm(g, 2.0, WeightedMeasure::lebesgue(3)) == Approx(expect).epsilon(1e-5));
}

TEST_CASE("slow tails diverge") {
  const RadialProfile f = RadialProfile::sample(3, default_radial_grid(),
                                                [](double r) { return 1.0 / (1.0 + r); }, 1.0);
  CHECK_THROWS_AS(lp_norm(f, 2.0, WeightedMeasure::lebesgue(3)), DivergenceError);
}

TEST_CASE("distances: identity, symmetry, triangle inequality (property)") {
  const TransformParams params(1, 3);
  const auto mu = WeightedMeasure::lebesgue(3);
  const auto radii = log_grid(1e-4, 1e4, 512);
  for (std::uint64_t i = 0; i < 30; ++i) {
    CounterRng rng(5, i);
    const RadialProfile f = random_profile(rng, 3, radii, min_admissible_tail(params));
    const RadialProfile g = random_profile(rng, 3, radii, min_admissible_tail(params));
    const RadialProfile h = random_profile(rng, 3, radii, min_admissible_tail(params));
    CHECK(lp_distance(f, f, 2.0, mu) == Approx(0.0));
    CHECK(lp_distance(f, g, 2.0, mu) == Approx(lp_distance(g, f, 2.0, mu)).epsilon(1e-12));
    CHECK(lp_distance(f, h, 2.0, mu) <= (lp_distance(f, g, 2.0, mu) + lp_distance(g, h, 2.0, mu)) * (1 + 1e-12));
  }
}

TEST_CASE("distribution function of an indicator") {
  const RadialProfile f = indicator(3, 1.0);
  const auto df = distribution_function(f, WeightedMeasure::lebesgue(3));
  const double v = lp_norm(f, 1.0, WeightedMeasure::lebesgue(3));
  CHECK(v == Approx(4.0 * pi / 3.0).epsilon(1e-2));
  CHECK(df(0.5) == Approx(v).epsilon(1e-12));
  CHECK(df(1.5) == 0.0);
}

TEST_CASE("Lorentz: indicator") {
  const double p = 2.0;
  const auto mu = WeightedMeasure::lebesgue(3);
  const RadialProfile f = indicator(3, 1.0);
  const double v = lp_norm(f, 1.0, mu);
  CHECK(lorentz_quasinorm(f, p, p, mu) == Approx(std::pow(v, 1.0 / p)).epsilon(1e-10));
  CHECK(lorentz_quasinorm(f, p, std::numeric_limits<double>::infinity(), mu) ==
        Approx(std::pow(v, 1.0 / p)).epsilon(1e-10));
  CHECK(lorentz_quasinorm(f, p, 3.0, mu) ==
        Approx(std::pow(v, 1.0 / p) * std::cbrt(p / 3.0)).epsilon(1e-10));
}

TEST_CASE("Lorentz: layer-cake identity L^{p,p} = L^p (property)") {
  const TransformParams params(1, 3);
  const auto mu = WeightedMeasure::lebesgue(3);
  const auto radii = log_grid(1e-4, 1e4, 512);
  for (std::uint64_t i = 0; i < 40; ++i) {
    CounterRng rng(21, i);
    const RadialProfile f = random_step_profile(rng, 3, radii, min_admissible_tail(params));
    CHECK(lorentz_quasinorm(f, 2.0, 2.0, mu) == Approx(lp_norm(f, 2.0, mu)).epsilon(1e-8));
  }
}

TEST_CASE("Lorentz: smooth profile layer cake") {
  const auto mu = WeightedMeasure::lebesgue(3);
  const RadialProfile h = extremizer_profile(ExtremizerSpec(TransformParams(1, 3)));
  CHECK(lorentz_quasinorm(h, 2.0, 2.0, mu) == Approx(lp_norm(h, 2.0, mu)).epsilon(1e-8));
}

TEST_CASE("interpolation inequality ||f||_{p,r}^r <= ||f||_{p,inf}^{r-p} ||f||_p^p (property)") {
  const auto mu = WeightedMeasure::lebesgue(3);
  const auto radii = log_grid(1e-4, 1e4, 512);
  const TransformParams params(1, 3);
  const double p = params.p(), q = params.q();
  for (std::uint64_t i = 0; i < 50; ++i) {
    CounterRng rng(22, i);
    const RadialProfile f = random_profile(rng, 3, radii, min_admissible_tail(params));
    for (double r : {p + 0.25 * (q - p), q, 7.0}) {
      const InterpolationReport rep = interpolation_check(f, p, r, mu);
      CHECK(rep.satisfied);
      CHECK(rep.lhs <= rep.rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("Lorentz argument checks") {
  const RadialProfile f = indicator(3, 1.0);
  CHECK_THROWS_AS(lorentz_quasinorm(f, 0.0, 2.0, WeightedMeasure::lebesgue(3)), DomainError);
  CHECK_THROWS_AS(lorentz_quasinorm(f, 2.0, -1.0, WeightedMeasure::lebesgue(3)), DomainError);
}
