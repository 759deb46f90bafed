#include <doctest.h>

#include <cmath>
#include <memory>

#include "kplane/errors.hpp"
#include "kplane/norms.hpp"
#include "kplane/operators.hpp"
#include "kplane/random.hpp"

using namespace kplane;
using doctest::Approx;

namespace {
std::shared_ptr<const AxiGrid> grid(std::size_t n) {
  return std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(n, n, 1e5, 1.0));
}

template <class F>
AxiSymField sample(int d, std::shared_ptr<const AxiGrid> g, F fn, double gamma) {
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < g->n_rho(); ++i) {
    for (std::size_t j = 0; j < g->n_s(); ++j) v[g->index(i, j)] = fn(g->rho(i), g->s(j));
  }
  return AxiSymField(d, g, std::move(v), gamma);
}
}  // namespace

TEST_CASE("rearrangement properties on random fields (property)") {
  const auto g = grid(256);
  const auto mu = WeightedMeasure::lebesgue(3);
  for (std::uint64_t i = 0; i < 10; ++i) {
    CounterRng rng(71, i);
    const AxiSymField f = random_field(rng, 3, g, 2.0);
    const AxiSymField h = random_field(rng, 3, g, 2.0);
    const RadialProfile vf = rearrange(f);
    CHECK(vf.nonincreasing());
    CHECK(lp_norm(vf, 2.0, mu) == Approx(lp_norm(f, 2.0)).epsilon(1e-4));

    const RadialProfile v3 = rearrange(f.with_values([&] {
      std::vector<double> w(f.values().begin(), f.values().end());
      for (double& x : w) x *= 3.0;
      return w;
    }()));
    for (std::size_t j = 0; j < vf.size(); j += 17) CHECK(v3.value(j) == Approx(3.0 * vf.value(j)).epsilon(1e-12));

    std::vector<double> sum(f.values().begin(), f.values().end());
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += h.values()[j];
    const RadialProfile vs = rearrange(f.with_values(sum));
    for (std::size_t j = 0; j < vf.size(); ++j) CHECK(vf.value(j) <= vs.value(j) * (1.0 + 1e-12));

    const RadialProfile vh = rearrange(h);
    CHECK(lp_distance(vf, vh, 2.0, mu) <= lp_distance(f, h, 2.0) * (1.0 + 1e-6));
  }
}

TEST_CASE("rearranging a shifted Gaussian recovers the centred one") {
  const auto g = grid(512);
  const auto mu = WeightedMeasure::lebesgue(3);
  auto gauss = [](double r) { return std::exp(-r * r / 0.3); };
  const AxiSymField f = sample(3, g, [&](double r, double s) { return gauss(std::hypot(r, s - 0.7)); }, 2.0);
  const RadialProfile exact = RadialProfile::sample(3, default_radial_grid(), gauss, 2.0);
  for (int sub : {1, 2, 4}) {
    const RadialProfile vf = rearrange(f, default_radial_grid(), 0.0, Interp::log_pchip, Exec::serial, sub);
    CAPTURE(sub);
    CHECK(lp_distance(vf, exact, 2.0, mu) / lp_norm(exact, 2.0, mu) < 2e-2 / sub);
  }
}

TEST_CASE("rearrangement is idempotent on radial decreasing profiles") {
  const auto g = grid(512);
  const auto mu = WeightedMeasure::lebesgue(3);
  const RadialProfile h = extremizer_profile(ExtremizerSpec(TransformParams(1, 3)));
  const RadialProfile vh = rearrange(embed_radial(h, g), default_radial_grid(), 0.0, Interp::log_pchip,
                                     Exec::serial, 4);
  CHECK(lp_distance(vh, h, 2.0, mu) / lp_norm(h, 2.0, mu) < 1e-3);
}

TEST_CASE("rearrange arguments") {
  const auto g = grid(32);
  CounterRng rng(72, 0);
  const AxiSymField f = random_field(rng, 3, g, 2.0);
  CHECK_THROWS_AS(rearrange(f, default_radial_grid(), 0.0, Interp::log_pchip, Exec::serial, 0), DomainError);
  CHECK(rearrange(f, default_radial_grid(), 3.5).tail_exponent() == 3.5);
}
