#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "kplane/errors.hpp"
#include "kplane/field.hpp"
#include "kplane/special.hpp"

using namespace kplane;
using doctest::Approx;

namespace {
std::shared_ptr<const AxiGrid> small_grid() {
  return std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(64, 64, 100.0, 1.0));
}

template <class F>
AxiSymField sample(int d, std::shared_ptr<const AxiGrid> g, F fn, FieldInterp rule) {
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < g->n_rho(); ++i) {
    for (std::size_t j = 0; j < g->n_s(); ++j) v[g->index(i, j)] = fn(g->rho(i), g->s(j));
  }
  return AxiSymField(d, g, std::move(v), 2.0, rule);
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(AxiGrid({0.1, 1.0, 2.0}, {-1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(AxiGrid({0.0, 1.0, 1.0}, {-1.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(AxiGrid({0.0, 1.0, 2.0}, {-1.0, 0.5, 1.0}), DomainError);
  CHECK_NOTHROW(AxiGrid({0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}));
}

TEST_CASE("sinh grid: s = 0 is an edge, nodes avoid it, symmetric") {
  const auto g = small_grid();
  CHECK(g->n_rho() == 64);
  CHECK(g->n_s() == 64);
  for (std::size_t j = 0; j < g->n_s(); ++j) {
    CHECK(g->s(j) != 0.0);
    CHECK(g->s(j) == Approx(-g->s(g->n_s() - 1 - j)));
  }
  CHECK(g->rho_edges().back() == Approx(100.0));
}

TEST_CASE("cell measures tile the cylinder") {
  const auto g = small_grid();
  for (int d : {2, 3, 4}) {
    double total = 0.0;
    for (double m : g->cell_measures(d)) total += m;
    const double expect = ball_volume(d - 1) * std::pow(100.0, d - 1) * 200.0;
    CHECK(total == Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("cubic interpolation reproduces even cubics") {
  const auto g = small_grid();
  auto fn = [](double r, double s) { return 1e6 + r * r - 0.5 * s + 0.01 * s * s * s + 0.3 * r * r * s; };
  const AxiSymField f = sample(3, g, fn, FieldInterp::cubic);
  for (double r : {0.0, 0.003, 0.4, 1.7, 5.0}) {
    for (double s : {-3.3, -0.01, 0.0, 0.2, 2.9}) {
      CHECK(std::abs(f(r, s) - fn(r, s)) < 1e-6);
    }
  }
  CHECK(interpolation_error_estimate(f) < 1e-6);
}

TEST_CASE("bilinear interpolation reproduces bilinear data") {
  const auto g = small_grid();
  auto fn = [](double r, double s) { return 5e3 + r + 2.0 * s + 0.1 * r * s; };
  const AxiSymField f = sample(3, g, fn, FieldInterp::bilinear);
  for (double r : {0.5, 1.7, 5.0}) {
    for (double s : {-3.3, 0.2, 2.9}) CHECK(f(r, s) == Approx(fn(r, s)).epsilon(1e-12));
  }
}

TEST_CASE("outside the box the field decays radially") {
  const auto g = small_grid();
  const AxiSymField f = sample(3, g, [](double, double) { return 1.0; }, FieldInterp::cubic);
  const double top = g->s(g->n_s() - 1);
  CHECK(f(0.0, 4.0 * top) == Approx(std::pow(4.0, -2.0)).epsilon(1e-12));
}

TEST_CASE("field validation") {
  const auto g = small_grid();
  CHECK_THROWS_AS(AxiSymField(3, g, std::vector<double>(3, 1.0), 2.0), DomainError);
  std::vector<double> bad(g->size(), 1.0);
  bad[5] = -1.0;
  CHECK_THROWS_AS(AxiSymField(3, g, bad, 2.0), DomainError);
  CHECK_THROWS_AS(AxiSymField(3, g, std::vector<double>(g->size(), 1.0), 0.0), DomainError);
}

TEST_CASE("interpolation error estimate tracks the true error") {
  const auto g = std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(256, 256, 1e3, 1.0));
  auto fn = [](double r, double s) { return std::exp(-(r * r + (s - 0.7) * (s - 0.7)) / 0.3); };
  const AxiSymField f = sample(3, g, fn, FieldInterp::cubic);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < g->n_rho(); ++i) {
    for (std::size_t j = 0; j + 1 < g->n_s(); ++j) {
      const double r = 0.5 * (g->rho(i) + g->rho(i + 1));
      const double s = 0.5 * (g->s(j) + g->s(j + 1));
      worst = std::max(worst, std::abs(f(r, s) - fn(r, s)));
    }
  }
  const double est = interpolation_error_estimate(f);
  CHECK(est > 0.2 * worst);
  CHECK(est < 5.0 * worst);
}
