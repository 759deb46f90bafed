#include "kplane/random.hpp"

#include <algorithm>
#include <cmath>

#include "kplane/errors.hpp"

namespace kplane {

namespace {

double uniform_in(CounterRng& rng, double a, double b) { return a + (b - a) * rng.uniform(); }

double log_uniform(CounterRng& rng, double a, double b) {
  return std::exp(uniform_in(rng, std::log(a), std::log(b)));
}

int pick(CounterRng& rng, int n) {
  return std::min(n - 1, static_cast<int>(rng.uniform() * n));
}

}  // namespace

double min_admissible_tail(const TransformParams& params) {
  return static_cast<double>(params.d()) / params.p();
}

RadialProfile random_step_profile(CounterRng& rng, int d, std::vector<double> radii,
                                  double tail_min) {
  const int levels = 1 + pick(rng, 6);
  std::vector<double> breaks(levels), heights(levels);
  for (int i = 0; i < levels; ++i) {
    breaks[i] = log_uniform(rng, 1e-2, 1e2);
    heights[i] = log_uniform(rng, 1e-2, 1e1);
  }
  std::sort(breaks.begin(), breaks.end());
  std::sort(heights.begin(), heights.end(), std::greater<double>());
  const double gamma = uniform_in(rng, tail_min + 0.05, tail_min + 3.0);
  // beyond the last break the profile follows the tail law from that break
  const double last = breaks.back();
  const double tail_height = heights.back() * uniform_in(rng, 0.0, 1.0);
  auto fn = [&](double r) {
    for (int i = 0; i < levels; ++i) {
      if (r <= breaks[i]) return heights[i];
    }
    return tail_height * std::pow(last / r, gamma);
  };
  return RadialProfile::sample(d, std::move(radii), fn, gamma);
}

RadialProfile random_profile(CounterRng& rng, int d, std::vector<double> radii, double tail_min) {
  const double gamma = uniform_in(rng, tail_min + 0.05, tail_min + 3.0);
  switch (pick(rng, 5)) {
    case 0: {
      const int n = 1 + pick(rng, 3);
      std::vector<double> amp(n), centre(n), width(n);
      for (int i = 0; i < n; ++i) {
        amp[i] = log_uniform(rng, 0.1, 10.0);
        centre[i] = uniform_in(rng, std::log(0.05), std::log(20.0));
        width[i] = uniform_in(rng, 0.2, 2.0);
      }
      const double base = uniform_in(rng, 0.0, 1.0);
      const double scale = log_uniform(rng, 0.1, 10.0);
      auto fn = [&](double r) {
        double v = base * std::pow(1.0 + (r / scale) * (r / scale), -0.5 * gamma);
        for (int i = 0; i < n; ++i) {
          const double z = (std::log(r) - centre[i]) / width[i];
          v += amp[i] * std::exp(-z * z);
        }
        return v;
      };
      return RadialProfile::sample(d, std::move(radii), fn, gamma);
    }
    case 1: {
      const double a = log_uniform(rng, 1e-2, 10.0);
      const double b = a * log_uniform(rng, 1.2, 50.0);
      const double height = log_uniform(rng, 0.1, 10.0);
      auto fn = [&](double r) { return r >= a && r <= b ? height : 0.0; };
      return RadialProfile::sample(d, std::move(radii), fn, gamma);
    }
    case 2:
      return random_step_profile(rng, d, std::move(radii), tail_min);
    case 3: {
      const double lambda = log_uniform(rng, 0.1, 10.0);
      const double amp = log_uniform(rng, 0.1, 10.0);
      auto fn = [&](double r) {
        const double x = lambda * r;
        return amp * std::pow(1.0 + x * x, -0.5 * gamma);
      };
      return RadialProfile::sample(d, std::move(radii), fn, gamma);
    }
    default: {
      const double lambda = log_uniform(rng, 0.1, 10.0);
      const double ring = log_uniform(rng, 0.1, 10.0);
      const double amp = log_uniform(rng, 0.1, 10.0);
      auto fn = [&](double r) {
        const double x = lambda * r;
        const double z = std::log(r / ring);
        return std::pow(1.0 + x * x, -0.5 * gamma) * (1.0 + amp * std::exp(-z * z));
      };
      return RadialProfile::sample(d, std::move(radii), fn, gamma);
    }
  }
}

AxiSymField random_field(CounterRng& rng, int d, std::shared_ptr<const AxiGrid> grid,
                         double gamma) {
  const int n = 1 + pick(rng, 3);
  std::vector<double> amp(n), centre(n), wr(n), ws(n);
  for (int i = 0; i < n; ++i) {
    amp[i] = log_uniform(rng, 0.2, 5.0);
    centre[i] = uniform_in(rng, -2.0, 2.0);
    wr[i] = uniform_in(rng, 0.3, 1.5);
    ws[i] = uniform_in(rng, 0.3, 1.5);
  }
  const AxiGrid& g = *grid;
  std::vector<double> values(g.size());
  for (std::size_t i = 0; i < g.n_rho(); ++i) {
    for (std::size_t j = 0; j < g.n_s(); ++j) {
      double v = 0.0;
      for (int m = 0; m < n; ++m) {
        const double a = g.rho(i) / wr[m];
        const double b = (g.s(j) - centre[m]) / ws[m];
        v += amp[m] * std::exp(-(a * a + b * b));
      }
      values[g.index(i, j)] = v;
    }
  }
  return AxiSymField(d, std::move(grid), std::move(values), gamma);
}

PointTuple random_tuple(CounterRng& rng, int k, int d) {
  PointTuple t;
  for (;;) {
    t.points.assign(k + 1, Point(d));
    for (auto& x : t.points) {
      for (double& c : x) c = rng.normal();
    }
    bool ok = true;
    for (int i = 0; i <= k && ok; ++i) {
      if (std::abs(t.points[i].back()) < 0.05) ok = false;
      if (i > 0 && std::abs(t.points[i].back() - t.points[0].back()) < 0.05) ok = false;
    }
    if (ok && parallelotope_volume(t) > 1e-3) return t;
  }
}

}  // namespace kplane
