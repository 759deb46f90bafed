#include "kplane/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "kplane/errors.hpp"
#include "kplane/norms.hpp"
#include "kplane/special.hpp"

namespace kplane {

namespace {

void check_admissible(const RadialProfile& g, const TransformParams& params, std::size_t n) {
  if (g.values().back() > 0.0 && !(g.tail_exponent() * params.p() > params.d())) {
    throw DivergenceError("iterate " + std::to_string(n) + ": tail exponent " +
                          std::to_string(g.tail_exponent()) + " is not L^p integrable");
  }
}

}  // namespace

bool is_preset(std::string_view name) {
  return name == "h" || name == "indicator" || name == "gaussian";
}

RadialProfile preset_profile(std::string_view name, const TransformParams& params,
                             std::vector<double> radii) {
  const int d = params.d();
  const double gamma = params.k() + 1.0;
  RadialProfile f = [&] {
    if (name == "h") return extremizer_profile(ExtremizerSpec(params), std::move(radii));
    if (name == "indicator") {
      return RadialProfile::sample(d, std::move(radii), [](double r) { return r <= 1.0 ? 1.0 : 0.0; },
                                   gamma);
    }
    if (name == "gaussian") {
      return RadialProfile::sample(d, std::move(radii), [](double r) { return std::exp(-r * r); },
                                   gamma);
    }
    throw DomainError("unknown preset '" + std::string(name) + "' (h, indicator, gaussian)");
  }();
  return f.scaled(1.0 / lp_norm(f, params.p(), WeightedMeasure::radial(d)));
}

RadialProfile vs_step(const RadialProfile& g, const TransformParams& params,
                      std::shared_ptr<const AxiGrid> grid, const FlowOptions& options) {
  const AxiSymField sg = s_symmetry_radial(g, std::move(grid), params, options.exec, options.cell_points);
  return rearrange(sg, options.radii, params.k() + 1.0, g.interp(), options.exec, options.subcells);
}

ConvergenceReport competing_iterate(const RadialProfile& f0, const TransformParams& params,
                                    std::size_t max_iters, double tol,
                                    const FlowOptions& options) {
  const int d = params.d();
  const double p = params.p();
  const WeightedMeasure mu = WeightedMeasure::lebesgue(d);
  if (f0.dim() != d) throw DomainError("competing_iterate: profile dimension differs from d");
  if (f0.is_zero()) throw UndefinedError("competing_iterate: zero initial profile");
  check_admissible(f0, params, 0);

  auto grid = std::make_shared<const AxiGrid>(options.grid());
  const RadialProfile h = extremizer_profile(ExtremizerSpec(params), options.radii);
  const double norm0 = lp_norm(f0, p, mu);

  ConvergenceReport rep;
  rep.amplitude = norm0 / lp_norm(h, p, mu);
  const RadialProfile target = h.scaled(rep.amplitude);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto record = [&](std::size_t n, const RadialProfile& g, bool with_ratio) {
    rep.iterates_kept.push_back(n);
    rep.distances.push_back(lp_distance(g, target, p, mu) / norm0);
    rep.ratios.push_back(with_ratio ? functional_ratio(g, params, options.exec) : nan);
    rep.norms.push_back(lp_norm(g, p, mu));
  };

  const std::size_t every = std::max<std::size_t>(1, options.ratio_every);
  RadialProfile g = f0;
  record(0, g, true);
  for (std::size_t n = 0; n < max_iters; ++n) {
    RadialProfile next = vs_step(g, params, grid, options);
    check_admissible(next, params, n + 1);
    const double before = lp_norm(g, p, mu);
    const double after = lp_norm(next, p, mu);
    rep.norm_defects.push_back(after / before - 1.0);
    if (options.renormalize && after > 0.0) next = next.scaled(norm0 / after);
    const double step = lp_distance(next, g, p, mu) / before;
    rep.steps.push_back(step);
    if (step < tol) {
      rep.converged = true;
      rep.converged_at = n;
      break;
    }
    record(n + 1, next, n + 1 == max_iters || (n + 1) % every == 0);
    g = std::move(next);
  }

  double best_distance = rep.distances.front();
  double best_ratio = rep.ratios.front();
  for (std::size_t i = 1; i < rep.distances.size(); ++i) {
    if (rep.distances[i] > best_distance + options.slack) rep.distance_monotone = false;
    best_distance = std::min(best_distance, rep.distances[i]);
    if (!std::isnan(rep.ratios[i])) {
      if (rep.ratios[i] < best_ratio - options.slack) rep.ratio_monotone = false;
      best_ratio = std::max(best_ratio, rep.ratios[i]);
    }
  }
  rep.final_profile = std::move(g);
  return rep;
}

double median_mass_radius(const RadialProfile& f, double p) {
  const int d = f.dim();
  const WeightedMeasure mu = WeightedMeasure::lebesgue(d);
  const double total = std::pow(lp_norm(f, p, mu), p);
  if (!(total > 0.0)) throw UndefinedError("median_mass_radius: zero profile");
  const double half = 0.5 * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = f.cell_lower(i);
    const double b = f.cell_upper(i);
    const double density = std::pow(f.value(i), p);
    const double piece = density * mu.shell(a, b);
    if (acc + piece >= half && density > 0.0) {
      const double ad = std::pow(a, d) + (half - acc) * d / (mu.prefactor * density);
      return std::pow(ad, 1.0 / d);
    }
    acc += piece;
  }
  // inside the tail v (R/r)^gamma: the mass beyond R is prefactor v^p R^d / (gamma p - d) * (R/r)^(gamma p - d)
  const double v = std::pow(f.values().back(), p);
  const double e = f.tail_exponent() * p - d;
  const double R = f.r_max();
  const double beyond = mu.prefactor * v * std::pow(R, d) / e;
  const double remaining = total - half;
  return R * std::pow(beyond / remaining, 1.0 / e);
}

DilationFit vs_squared_dilation_fit(const RadialProfile& f, const TransformParams& params,
                                    const FlowOptions& options) {
  if (f.is_zero()) throw UndefinedError("vs_squared_dilation_fit: zero profile");
  const int d = params.d();
  const double p = params.p();
  auto grid = std::make_shared<const AxiGrid>(options.grid());
  const RadialProfile g = vs_step(vs_step(f, params, grid, options), params, grid, options);

  DilationFit fit;
  fit.mu = median_mass_radius(f, p) / median_mass_radius(g, p);
  const RadialProfile model = f.dilated(fit.mu).scaled(std::pow(fit.mu, d / p));
  const WeightedMeasure mu = WeightedMeasure::lebesgue(d);
  fit.residual = lp_distance(g, model, p, mu) / lp_norm(g, p, mu);
  return fit;
}

EllipsoidReport ellipsoid_levelset_check(const AxiSymField& g) {
  const AxiGrid& grid = g.grid();
  const double top = g.max_value();
  EllipsoidReport rep;
  if (!(top > 0.0)) {
    rep.skipped_levels = 9;
    return rep;
  }
  struct Point {
    double rho, s;
  };
  std::vector<std::vector<Point>> contours;
  for (int l = 1; l <= 9; ++l) {
    const double level = top * l / 10.0;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < grid.n_rho(); ++i) {
      for (std::size_t j = 0; j < grid.n_s(); ++j) {
        const double v = g.at(i, j) - level;
        if (i + 1 < grid.n_rho()) {
          const double w = g.at(i + 1, j) - level;
          if ((v < 0.0) != (w < 0.0)) {
            const double t = v / (v - w);
            pts.push_back({grid.rho(i) + t * (grid.rho(i + 1) - grid.rho(i)), grid.s(j)});
          }
        }
        if (j + 1 < grid.n_s()) {
          const double w = g.at(i, j + 1) - level;
          if ((v < 0.0) != (w < 0.0)) {
            const double t = v / (v - w);
            pts.push_back({grid.rho(i), grid.s(j) + t * (grid.s(j + 1) - grid.s(j))});
          }
        }
      }
    }
    if (pts.size() < 5) {
      ++rep.skipped_levels;
      continue;
    }
    // A rho^2 + B s + E = -s^2 with A = c^2, B = 2 s0
    Eigen::MatrixXd m(pts.size(), 3);
    Eigen::VectorXd rhs(pts.size());
    for (std::size_t n = 0; n < pts.size(); ++n) {
      m(n, 0) = pts[n].rho * pts[n].rho;
      m(n, 1) = pts[n].s;
      m(n, 2) = 1.0;
      rhs(n) = -pts[n].s * pts[n].s;
    }
    const Eigen::Vector3d x = m.colPivHouseholderQr().solve(rhs);
    if (!(x(0) > 0.0)) {
      ++rep.skipped_levels;
      continue;
    }
    rep.level_c.push_back(std::sqrt(x(0)));
    rep.level_s0.push_back(0.5 * x(1));
    contours.push_back(std::move(pts));
  }
  if (contours.empty()) return rep;

  // joint fit: shared A, B; one E per level
  std::size_t total = 0;
  for (const auto& c : contours) total += c.size();
  const auto levels = static_cast<Eigen::Index>(contours.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), 2 + levels);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(total));
  Eigen::Index row = 0;
  for (Eigen::Index l = 0; l < levels; ++l) {
    for (const Point& pt : contours[l]) {
      m(row, 0) = pt.rho * pt.rho;
      m(row, 1) = pt.s;
      m(row, 2 + l) = 1.0;
      rhs(row) = -pt.s * pt.s;
      ++row;
    }
  }
  const Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
  rep.c = std::sqrt(std::max(0.0, x(0)));
  rep.s0 = 0.5 * x(1);
  rep.points = total;

  double sq = 0.0;
  for (const auto& pts : contours) {
    double mean = 0.0;
    std::vector<double> q(pts.size());
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const double ds = pts[n].s + rep.s0;
      q[n] = rep.c * pts[n].rho * pts[n].rho + ds * ds / rep.c;
      mean += q[n];
    }
    mean /= static_cast<double>(pts.size());
    for (double v : q) sq += (v / mean - 1.0) * (v / mean - 1.0);
  }
  rep.rms_error = std::sqrt(sq / static_cast<double>(total));
  const auto [lo, hi] = std::minmax_element(rep.level_c.begin(), rep.level_c.end());
  double mean_c = 0.0;
  for (double c : rep.level_c) mean_c += c;
  mean_c /= static_cast<double>(rep.level_c.size());
  rep.c_spread = (*hi - *lo) / mean_c;
  return rep;
}

}  // namespace kplane
