#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <memory>

#include "kplane/errors.hpp"
#include "kplane/flow.hpp"
#include "kplane/norms.hpp"

using namespace kplane;
using doctest::Approx;

namespace {
FlowOptions small_options(std::size_t n = 256) {
  FlowOptions o;
  o.n_rho = n;
  o.n_s = n;
  o.cell_points = 1;
  o.subcells = 2;
  return o;
}
}  // namespace

TEST_CASE("presets are unit norm") {
  const TransformParams params(1, 3);
  const auto mu = WeightedMeasure::radial(3);
  for (const char* name : {"h", "indicator", "gaussian"}) {
    CHECK(is_preset(name));
    const RadialProfile f = preset_profile(name, params);
    CHECK(f.dim() == 3);
    CHECK(f.tail_exponent() == 2.0);
    CHECK(lp_norm(f, params.p(), mu) == Approx(1.0).epsilon(1e-6));
  }
  CHECK_FALSE(is_preset("box"));
  CHECK_THROWS_AS(preset_profile("box", params), DomainError);
}

TEST_CASE("median mass radius of a Gaussian") {
  const RadialProfile g = RadialProfile::sample(3, default_radial_grid(),
                                                [](double r) { return std::exp(-r * r); }, 2.0);
  // |g|^2 r^2 = exp(-2 r^2) r^2, so 2 r^2 is Gamma(3/2) distributed
  const double expect = std::sqrt(0.5 * boost::math::gamma_p_inv(1.5, 0.5));
  CHECK(median_mass_radius(g, 2.0) == Approx(expect).epsilon(1e-4));
}

TEST_CASE("h is a fixed point of V S") {
  const TransformParams params(1, 3);
  const RadialProfile h = preset_profile("h", params);
  const ConvergenceReport rep = competing_iterate(h, params, 10, 5e-3, small_options());
  CHECK(rep.converged);
  CHECK(rep.converged_at == 0);
  CHECK(rep.final_distance() < 1e-12);
  REQUIRE(rep.final_profile.has_value());
  CHECK(rep.steps.size() == 1);
}

TEST_CASE("indicator flow moves towards h") {
  const TransformParams params(1, 3);
  const RadialProfile f = preset_profile("indicator", params);
  const ConvergenceReport rep = competing_iterate(f, params, 12, 0.0, small_options(512));
  CHECK_FALSE(rep.converged);
  CHECK(rep.steps.size() == 12);
  CHECK(rep.distance_monotone);
  CHECK(rep.ratio_monotone);
  CHECK(rep.final_distance() < 0.5 * rep.distances.front());
  CHECK(rep.ratios.back() > rep.ratios.front());
  for (double n : rep.norms) CHECK(n == Approx(rep.norms.front()).epsilon(1e-10));
}

TEST_CASE("two steps act as a dilation on h") {
  const TransformParams params(1, 3);
  const DilationFit fit = vs_squared_dilation_fit(preset_profile("h", params), params, small_options());
  CHECK(fit.mu == Approx(1.0).epsilon(1e-2));
  CHECK(fit.residual < 5e-3);
}

TEST_CASE("ellipsoid fit recovers exact ellipsoidal level sets") {
  const auto g = std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(256, 256, 1e3, 1.0));
  const double c = 2.0, s0 = 0.3;
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < g->n_rho(); ++i) {
    for (std::size_t j = 0; j < g->n_s(); ++j) {
      const double q = c * g->rho(i) * g->rho(i) + (g->s(j) + s0) * (g->s(j) + s0) / c;
      v[g->index(i, j)] = 1.0 / (1.0 + q);
    }
  }
  const EllipsoidReport rep = ellipsoid_levelset_check(AxiSymField(3, g, std::move(v), 2.0));
  CHECK(rep.c == Approx(c).epsilon(1e-2));
  CHECK(rep.s0 == Approx(s0).epsilon(1e-2));
  CHECK(rep.c_spread < 1e-2);
  CHECK(rep.points > 0);
}

TEST_CASE("flow arguments") {
  const TransformParams params(1, 3);
  const RadialProfile wrong = preset_profile("h", TransformParams(1, 2));
  CHECK_THROWS_AS(competing_iterate(wrong, params, 1, 0.0, small_options()), DomainError);
  const RadialProfile zero = preset_profile("h", params).scaled(0.0);
  CHECK_THROWS_AS(competing_iterate(zero, params, 1, 0.0, small_options()), UndefinedError);
}
