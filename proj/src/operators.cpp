#include "kplane/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kplane/errors.hpp"
#include "kplane/norms.hpp"
#include "kplane/quadrature.hpp"
#include "kplane/special.hpp"

namespace kplane {

namespace {

constexpr int kPanelOrder = 6;
constexpr int kTailOrder = 16;

double int_pow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// T f at the node j of f's grid.
double t_at_node(const RadialProfile& f, int k, std::size_t j) {
  const std::size_t n = f.size();
  const double rj = f.radius(j);
  const double rj2 = rj * rj;
  const GaussRule& rule = gauss_legendre(kPanelOrder);
  auto offset = [&](std::size_t i) {
    const double ri = f.radius(i);
    return std::sqrt(std::max(0.0, (ri - rj) * (ri + rj)));
  };

  double total = 0.0;
  double s_lo = 0.0;
  for (std::size_t i = j; i + 1 < n; ++i) {
    const double s_hi = offset(i + 1);
    const double half = 0.5 * (s_hi - s_lo);
    const double mid = s_lo + half;
    const double x_lo = f.log_radius(i);
    const double x_hi = f.log_radius(i + 1);
    double acc = 0.0;
    for (int q = 0; q < kPanelOrder; ++q) {
      const double s = mid + half * rule.nodes[q];
      const double x = std::clamp(0.5 * std::log(s * s + rj2), x_lo, x_hi);
      acc += rule.weights[q] * f.panel_value(i, x) * int_pow(s, k - 1);
    }
    total += acc * half;
    s_lo = s_hi;
  }

  const double v_tail = f.values().back();
  if (v_tail == 0.0) return total;
  const double gamma = f.tail_exponent();
  const double r_max = f.r_max();
  const double s_n = s_lo;
  const double s0 = std::max(s_n, rj);
  const GaussRule& tail_rule = gauss_legendre(kTailOrder);
  if (s0 > s_n) {
    const double half = 0.5 * (s0 - s_n);
    const double mid = s_n + half;
    double acc = 0.0;
    for (int q = 0; q < kTailOrder; ++q) {
      const double s = mid + half * tail_rule.nodes[q];
      const double r = std::sqrt(s * s + rj2);
      acc += tail_rule.weights[q] * std::pow(r_max / r, gamma) * int_pow(s, k - 1);
    }
    total += v_tail * acc * half;
  }
  // s = s0 / u, w = u^{gamma - k}
  const double e = gamma - k;
  double acc = 0.0;
  for (int q = 0; q < kTailOrder; ++q) {
    const double w = 0.5 * (1.0 + tail_rule.nodes[q]);
    const double u = std::pow(w, 1.0 / e);
    const double z = rj * u / s0;
    acc += 0.5 * tail_rule.weights[q] * std::pow(1.0 + z * z, -0.5 * gamma);
  }
  total += v_tail * std::pow(r_max, gamma) * std::pow(s0, -e) / e * acc;
  return total;
}

}  // namespace

ExtremizerSpec::ExtremizerSpec(const TransformParams& params, double amplitude, double dilation)
    : k(params.k()), d(params.d()), amplitude(amplitude), dilation(dilation) {
  if (!(amplitude >= 0.0) || !(dilation > 0.0)) {
    throw DomainError("ExtremizerSpec: need amplitude >= 0 and dilation > 0");
  }
}

double ExtremizerSpec::operator()(double r) const {
  const double x = dilation * r;
  return amplitude * std::pow(1.0 + x * x, -0.5 * (k + 1));
}

RadialProfile extremizer_profile(const ExtremizerSpec& spec, std::vector<double> radii,
                                 Interp interp) {
  TransformParams(spec.k, spec.d);
  if (!(spec.amplitude >= 0.0) || !(spec.dilation > 0.0)) {
    throw DomainError("extremizer_profile: need amplitude >= 0 and dilation > 0");
  }
  return RadialProfile::sample(spec.d, std::move(radii), spec, spec.k + 1.0, interp);
}

RadialProfile t_transform(const RadialProfile& f, const TransformParams& params, Exec exec) {
  const int k = params.k();
  if (f.dim() != params.d()) throw DomainError("t_transform: profile dimension differs from d");
  if (f.values().back() > 0.0 && !(f.tail_exponent() > k)) {
    throw DivergenceError("t_transform: tail exponent " + std::to_string(f.tail_exponent()) +
                          " must exceed k = " + std::to_string(k));
  }
  std::vector<double> out(f.size());
  for_each_index(exec, static_cast<std::int64_t>(f.size()),
                 [&](std::int64_t j) { out[j] = t_at_node(f, k, static_cast<std::size_t>(j)); });
  const double gamma = f.tail_exponent() > k ? f.tail_exponent() - k : 1.0;
  return RadialProfile(params.d() - k, std::vector<double>(f.radii().begin(), f.radii().end()),
                       std::move(out), gamma, f.interp());
}

double functional_ratio(const RadialProfile& f, const TransformParams& params, Exec exec) {
  if (f.is_zero()) throw UndefinedError("functional_ratio: zero profile");
  const int k = params.k();
  const int d = params.d();
  const RadialProfile tf = t_transform(f, params, exec);
  const double num = lp_norm(tf, params.q(), WeightedMeasure{d - k, 1.0});
  const double den = lp_norm(f, params.p(), WeightedMeasure::radial(d));
  return radial_conversion_factor(params) * num / den;
}

AxiSymField embed_radial(const RadialProfile& f, std::shared_ptr<const AxiGrid> grid,
                         Exec exec) {
  const AxiGrid& g = *grid;
  std::vector<double> values(g.size());
  for_each_index(exec, static_cast<std::int64_t>(g.n_rho()), [&](std::int64_t i) {
    const double rho = g.rho(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < g.n_s(); ++j) {
      values[g.index(static_cast<std::size_t>(i), j)] = f(std::hypot(rho, g.s(j)));
    }
  });
  return AxiSymField(f.dim(), std::move(grid), std::move(values), f.tail_exponent());
}

SymmetryResult s_symmetry(const AxiSymField& g, const TransformParams& params, Exec exec) {
  const int k = params.k();
  const AxiGrid& grid = g.grid();
  std::vector<double> values(grid.size());
  for_each_index(exec, static_cast<std::int64_t>(grid.n_rho()), [&](std::int64_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double rho = grid.rho(i);
    for (std::size_t j = 0; j < grid.n_s(); ++j) {
      const double s = grid.s(j);
      const double a = std::abs(s);
      values[grid.index(i, j)] = std::pow(a, -(k + 1.0)) * g(rho / a, 1.0 / s);
    }
  });
  return {AxiSymField(g.dim(), g.grid_ptr(), std::move(values), k + 1.0),
          g.tail_exponent() < k + 1.0};
}

AxiSymField s_symmetry_radial(const RadialProfile& f, std::shared_ptr<const AxiGrid> grid,
                              const TransformParams& params, Exec exec, int cell_points) {
  const int k = params.k();
  const int d = params.d();
  const double p = params.p();
  const AxiGrid& g = *grid;
  auto value = [&](double rho, double s) {
    const double a = std::abs(s);
    return std::pow(a, -(k + 1.0)) * f(std::sqrt(1.0 + rho * rho) / a);
  };
  std::vector<double> values(g.size());
  if (cell_points <= 1) {
    for_each_index(exec, static_cast<std::int64_t>(g.n_rho()), [&](std::int64_t ii) {
      const auto i = static_cast<std::size_t>(ii);
      for (std::size_t j = 0; j < g.n_s(); ++j) values[g.index(i, j)] = value(g.rho(i), g.s(j));
    });
    return AxiSymField(d, std::move(grid), std::move(values), k + 1.0);
  }

  const GaussRule& rule = gauss_legendre(cell_points);
  const auto n = static_cast<std::size_t>(cell_points);
  const auto rho_e = g.rho_edges();
  const auto s_e = g.s_edges();
  for_each_index(exec, static_cast<std::int64_t>(g.n_rho()), [&](std::int64_t ii) {
    const auto i = static_cast<std::size_t>(ii);
    // rho nodes weighted by the density rho^{d-2} of the cell measure
    std::vector<double> rho_x(n), rho_w(n);
    double wsum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      rho_x[a] = 0.5 * (rho_e[i] + rho_e[i + 1]) + 0.5 * (rho_e[i + 1] - rho_e[i]) * rule.nodes[a];
      rho_w[a] = rule.weights[a] * int_pow(rho_x[a], d - 2);
      wsum += rho_w[a];
    }
    for (double& w : rho_w) w /= wsum;
    for (std::size_t j = 0; j < g.n_s(); ++j) {
      double acc = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const double s = 0.5 * (s_e[j] + s_e[j + 1]) + 0.5 * (s_e[j + 1] - s_e[j]) * rule.nodes[b];
        for (std::size_t a = 0; a < n; ++a) {
          acc += 0.5 * rule.weights[b] * rho_w[a] * std::pow(value(rho_x[a], s), p);
        }
      }
      values[g.index(i, j)] = std::pow(acc, 1.0 / p);
    }
  });
  return AxiSymField(d, std::move(grid), std::move(values), k + 1.0);
}

ConcentrationResult concentration_rescale(const RadialProfile& f, const TransformParams& params) {
  if (f.is_zero()) throw UndefinedError("concentration_rescale: zero profile");
  if (!f.nonincreasing()) throw DomainError("concentration_rescale: profile must be nonincreasing");
  const int d = params.d();
  const double p = params.p();
  const WeightedMeasure mu = WeightedMeasure::lebesgue(d);
  const RadialProfile unit = f.scaled(1.0 / lp_norm(f, p, mu));
  const DistributionFunction df = distribution_function(unit, mu);

  double s0 = 0.0;
  double weak = -1.0;
  for (double t : unit.values()) {
    if (!(t > 0.0)) continue;
    const double w = t * std::pow(df(t), 1.0 / p);
    if (w > weak) {
      weak = w;
      s0 = t;
    }
  }
  const double t0 = 1.0 / s0;
  std::vector<double> values(unit.size());
  for (std::size_t i = 0; i < unit.size(); ++i) values[i] = unit.value(i) / s0;
  RadialProfile g = unit.dilated(std::pow(t0, p / d)).with_values(std::move(values));

  double c = 0.0;
  for (std::size_t i = 0; i < g.size() && g.value(i) >= 1.0; ++i) c = g.cell_upper(i);
  return ConcentrationResult{t0, std::move(g), c, weak};
}

}  // namespace kplane
