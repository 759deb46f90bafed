#include "kplane/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kplane/errors.hpp"
#include "kplane/quadrature.hpp"
#include "kplane/special.hpp"

namespace kplane {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("norm exponent p must be >= 1");
}

// pref * v^p * R^m / (gamma p - m): the L^p mass of the power-law tail.
double tail_mass(const RadialProfile& f, double v, double p, const WeightedMeasure& mu) {
  if (v == 0.0) return 0.0;
  const double excess = f.tail_exponent() * p - mu.m;
  if (!(excess > 0.0)) {
    throw DivergenceError("tail diverges: tail_exponent * p = " +
                          std::to_string(f.tail_exponent() * p) + " <= m = " +
                          std::to_string(mu.m));
  }
  return mu.prefactor * std::pow(v, p) * std::pow(f.r_max(), mu.m) / excess;
}

std::vector<double> profile_cell_measures(const RadialProfile& f, const WeightedMeasure& mu) {
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) m[i] = mu.shell(f.cell_lower(i), f.cell_upper(i));
  return m;
}

// Steps of t -> measure{value >= t} from (value, measure) pairs; zero values dropped.
void build_steps(std::span<const double> values, std::span<const double> measures,
                 double extra_break, DistributionFunction& out) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> cum;
  cum.reserve(order.size());
  double acc = 0.0;
  bool extra_done = !(extra_break > 0.0);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    const double v = values[order[idx]];
    if (!(v > 0.0)) break;
    if (!extra_done && extra_break > v) {
      out.thresholds.push_back(extra_break);
      out.measures.push_back(acc);
      extra_done = true;
    }
    if (!extra_done && extra_break == v) extra_done = true;
    acc += measures[order[idx]];
    if (!out.thresholds.empty() && out.thresholds.back() == v) {
      out.measures.back() = acc;
    } else {
      out.thresholds.push_back(v);
      out.measures.push_back(acc);
    }
  }
  if (!extra_done) {
    out.thresholds.push_back(extra_break);
    out.measures.push_back(acc);
  }
}

}  // namespace

WeightedMeasure WeightedMeasure::lebesgue(int d) { return {d, sphere_area(d)}; }

double WeightedMeasure::ball(double radius) const {
  return prefactor * std::pow(radius, m) / m;
}

double WeightedMeasure::shell(double a, double b) const {
  return prefactor * (std::pow(b, m) - std::pow(a, m)) / m;
}

double DistributionFunction::operator()(double t) const {
  if (!(t > 0.0)) return kInf;
  // last threshold >= t
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), t, std::greater<double>());
  double m = 0.0;
  if (it != thresholds.begin()) {
    const std::size_t j = static_cast<std::size_t>(it - thresholds.begin());
    if (j < thresholds.size() && thresholds[j] == t) {
      m = measures[j];
    } else {
      m = measures[j - 1];
    }
  } else if (!thresholds.empty() && thresholds.front() == t) {
    m = measures.front();
  }
  if (t < tail_value) m += tail_scale * (std::pow(tail_value / t, tail_power) - 1.0);
  return m;
}

double lp_norm(const RadialProfile& f, double p, const WeightedMeasure& mu) {
  check_p(p);
  const auto cells = profile_cell_measures(f, mu);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::pow(f.value(i), p) * cells[i];
  const double total = pairwise_sum(terms) + tail_mass(f, f.values().back(), p, mu);
  return std::pow(total, 1.0 / p);
}

double lp_norm(const AxiSymField& f, double p) {
  check_p(p);
  const auto cells = f.grid().cell_measures(f.dim());
  std::vector<double> terms(cells.size());
  const auto v = f.values();
  for (std::size_t i = 0; i < cells.size(); ++i) terms[i] = std::pow(v[i], p) * cells[i];
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double lp_distance(const RadialProfile& f, const RadialProfile& g_in, double p,
                   const WeightedMeasure& mu) {
  check_p(p);
  const RadialProfile g =
      f.same_grid(g_in) ? g_in : g_in.resampled(std::vector<double>(f.radii().begin(), f.radii().end()));
  const auto cells = profile_cell_measures(f, mu);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    terms[i] = std::pow(std::abs(f.value(i) - g.value(i)), p) * cells[i];
  }
  const double vf = f.values().back();
  const double vg = g.values().back();
  double tail = 0.0;
  if (f.tail_exponent() == g.tail_exponent()) {
    tail = tail_mass(f, std::abs(vf - vg), p, mu);
  } else if (vf != 0.0 || vg != 0.0) {
    const double gf = f.tail_exponent();
    const double gg = g.tail_exponent();
    if ((vf != 0.0 && !(gf * p > mu.m)) || (vg != 0.0 && !(gg * p > mu.m))) {
      throw DivergenceError("lp_distance: tail diverges");
    }
    // r = r_max / u
    auto integrand = [&](double u) {
      return std::pow(std::abs(vf * std::pow(u, gf) - vg * std::pow(u, gg)), p) *
             std::pow(u, -mu.m - 1.0);
    };
    tail = mu.prefactor * std::pow(f.r_max(), mu.m) *
           integrate_adaptive(integrand, 0.0, 1.0, 1e-10).value;
  }
  return std::pow(pairwise_sum(terms) + tail, 1.0 / p);
}

double lp_distance(const AxiSymField& f, const AxiSymField& g, double p) {
  check_p(p);
  if (f.grid_ptr() != g.grid_ptr() && f.grid().size() != g.grid().size()) {
    throw DomainError("lp_distance: fields live on different grids");
  }
  const auto cells = f.grid().cell_measures(f.dim());
  std::vector<double> terms(cells.size());
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    terms[i] = std::pow(std::abs(a[i] - b[i]), p) * cells[i];
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

DistributionFunction distribution_function(const RadialProfile& f, const WeightedMeasure& mu) {
  DistributionFunction df;
  const auto cells = profile_cell_measures(f, mu);
  const double v_tail = f.values().back();
  build_steps(f.values(), cells, v_tail, df);
  if (v_tail > 0.0) {
    df.tail_value = v_tail;
    df.tail_scale = mu.ball(f.r_max());
    df.tail_power = mu.m / f.tail_exponent();
  }
  return df;
}

DistributionFunction distribution_function(const AxiSymField& f) {
  DistributionFunction df;
  const auto cells = f.grid().cell_measures(f.dim());
  build_steps(f.values(), cells, 0.0, df);
  return df;
}

double lorentz_quasinorm(const DistributionFunction& df, double p, double r) {
  check_p(p);
  if (!(r >= 1.0)) throw DomainError("lorentz_quasinorm: need r >= 1");
  if (df.thresholds.empty()) return 0.0;
  const double a = df.tail_power;
  const double c = df.tail_scale;
  const double cv = df.tail_value > 0.0 ? c * std::pow(df.tail_value, a) : 0.0;
  if (cv > 0.0 && !(a < p)) {
    throw DivergenceError("lorentz_quasinorm: distribution tail t^-" + std::to_string(a) +
                          " is not integrable against t^" + std::to_string(p - 1.0));
  }
  const std::size_t n = df.thresholds.size();
  // On (lo, hi] the distribution is B + C t^-a.
  auto coefficients = [&](std::size_t j, double& B, double& C) {
    B = df.measures[j];
    C = 0.0;
    if (cv > 0.0 && df.thresholds[j] <= df.tail_value) {
      B -= c;
      C = cv;
    }
  };

  if (std::isinf(r)) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double B, C;
      coefficients(j, B, C);
      const double hi = df.thresholds[j];
      const double lo = j + 1 < n ? df.thresholds[j + 1] : 0.0;
      auto g = [&](double t) { return B * std::pow(t, p) + C * std::pow(t, p - a); };
      best = std::max(best, g(hi));
      if (lo > 0.0) best = std::max(best, g(lo));
      if (C > 0.0 && B < 0.0) {
        const double ta = -C * (p - a) / (B * p);
        const double t = std::pow(ta, 1.0 / a);
        if (t > lo && t < hi) best = std::max(best, g(t));
      }
    }
    return std::pow(best, 1.0 / p);
  }

  std::vector<double> pieces(n);
  const GaussRule& rule = gauss_legendre(24);
  for (std::size_t j = 0; j < n; ++j) {
    double B, C;
    coefficients(j, B, C);
    const double hi = df.thresholds[j];
    const double lo = j + 1 < n ? df.thresholds[j + 1] : 0.0;
    double piece = 0.0;
    if (r == p) {
      piece = B * (std::pow(hi, p) - std::pow(lo, p));
      if (C > 0.0) piece += C * p / (p - a) * (std::pow(hi, p - a) - std::pow(lo, p - a));
    } else if (C == 0.0) {
      piece = p * std::pow(B, r / p) * (std::pow(hi, r) - std::pow(lo, r)) / r;
    } else if (lo > 0.0) {
      // x = log t, integrand p (d(t) t^p)^{r/p}
      const double xl = std::log(lo);
      const double xh = std::log(hi);
      const int panels = 1 + static_cast<int>((xh - xl) / 0.5);
      const double w = (xh - xl) / panels;
      for (int q = 0; q < panels; ++q) {
        const double mid = xl + (q + 0.5) * w;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double t = std::exp(mid + 0.5 * w * rule.nodes[i]);
          const double dt = std::max(0.0, B * std::pow(t, p) + C * std::pow(t, p - a));
          piece += rule.weights[i] * 0.5 * w * p * std::pow(dt, r / p);
        }
      }
    } else {
      // t = hi u^{1/kappa}: the integrand in u stays bounded at 0
      const double kappa = r * (1.0 - a / p);
      constexpr int kPanels = 60;
      for (int q = 0; q < kPanels; ++q) {
        const double uh = std::ldexp(1.0, -q);
        const double ul = 0.5 * uh;
        const double half = 0.5 * (uh - ul);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double u = ul + half * (1.0 + rule.nodes[i]);
          const double t = hi * std::pow(u, 1.0 / kappa);
          const double dt = std::max(0.0, B * std::pow(t, p) + C * std::pow(t, p - a));
          piece += rule.weights[i] * half * p * std::pow(dt, r / p) / (kappa * u);
        }
      }
      // u in (0, 2^-60]: the integrand tends to p C^{r/p} hi^kappa / kappa
      piece += std::ldexp(1.0, -kPanels) * p * std::pow(C, r / p) * std::pow(hi, kappa) / kappa;
    }
    pieces[j] = piece;
  }
  const double total = pairwise_sum(pieces);
  return std::pow(std::max(total, 0.0), 1.0 / r);
}

double lorentz_quasinorm(const RadialProfile& f, double p, double r, const WeightedMeasure& mu) {
  return lorentz_quasinorm(distribution_function(f, mu), p, r);
}

InterpolationReport interpolation_check(const RadialProfile& f, double p, double r,
                                        const WeightedMeasure& mu) {
  if (!(r > p)) throw DomainError("interpolation_check: need r > p");
  const DistributionFunction df = distribution_function(f, mu);
  InterpolationReport rep;
  rep.lhs = std::pow(lorentz_quasinorm(df, p, r), r);
  const double weak = lorentz_quasinorm(df, p, kInf);
  rep.rhs = std::pow(weak, r - p) * std::pow(lp_norm(f, p, mu), p);
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-8);
  return rep;
}

}  // namespace kplane
