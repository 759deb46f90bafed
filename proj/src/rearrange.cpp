#include <algorithm>
#include <cmath>
#include <utility>

#include "kplane/errors.hpp"
#include "kplane/operators.hpp"
#include "kplane/special.hpp"

namespace kplane {

RadialProfile rearrange(const AxiSymField& g, std::vector<double> radii, double tail_exponent,
                        Interp interp, Exec exec, int subcells) {
  if (subcells < 1) throw DomainError("rearrange: subcells must be at least 1");
  const AxiGrid& grid = g.grid();
  const int d = g.dim();
  const auto values = g.values();
  const auto measures = grid.cell_measures(d);

  std::vector<std::pair<double, double>> cells(values.size() * subcells * subcells);
  if (subcells == 1) {
    for_each_index(exec, static_cast<std::int64_t>(values.size()),
                   [&](std::int64_t i) { cells[i] = {values[i], measures[i]}; });
  } else {
    const auto re = grid.rho_edges();
    const auto se = grid.s_edges();
    const double ball = ball_volume(d - 1);
    const std::size_t ns = grid.n_s();
    const std::size_t per = static_cast<std::size_t>(subcells) * subcells;
    for_each_index(exec, static_cast<std::int64_t>(grid.n_rho()), [&](std::int64_t ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      for (int a = 0; a < subcells; ++a) {
        const double r0 = re[i] + (re[i + 1] - re[i]) * a / subcells;
        const double r1 = re[i] + (re[i + 1] - re[i]) * (a + 1) / subcells;
        const double ring = ball * (std::pow(r1, d - 1) - std::pow(r0, d - 1));
        const double rm = 0.5 * (r0 + r1);
        for (std::size_t j = 0; j < ns; ++j) {
          for (int b = 0; b < subcells; ++b) {
            const double s0 = se[j] + (se[j + 1] - se[j]) * b / subcells;
            const double s1 = se[j] + (se[j + 1] - se[j]) * (b + 1) / subcells;
            cells[grid.index(i, j) * per + a * subcells + b] = {g(rm, 0.5 * (s0 + s1)),
                                                                ring * (s1 - s0)};
          }
        }
      }
    });
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  // cumulative measure and integral of g* up to the end of each sorted cell
  const std::size_t n = cells.size();
  std::vector<double> cum_m(n), cum_f(n);
  double m = 0.0;
  double fsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m += cells[i].second;
    fsum += cells[i].first * cells[i].second;
    cum_m[i] = m;
    cum_f[i] = fsum;
  }
  if (!std::isfinite(m) || !std::isfinite(fsum)) {
    throw DivergenceError("rearrange: level sets of infinite measure");
  }

  // integral of g* over [0, V], swept with a monotone cursor
  std::size_t cursor = 0;
  auto integral = [&](double v) {
    while (cursor < n && cum_m[cursor] <= v) ++cursor;
    if (cursor == n) return fsum;
    const double m0 = cursor == 0 ? 0.0 : cum_m[cursor - 1];
    const double f0 = cursor == 0 ? 0.0 : cum_f[cursor - 1];
    return f0 + cells[cursor].first * (v - m0);
  };

  const double ball = ball_volume(d);
  RadialProfile shape(d, radii, std::vector<double>(radii.size(), 0.0), 1.0, interp);
  std::vector<double> out(radii.size());
  double v_lo = 0.0;
  double f_lo = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double v_hi = ball * std::pow(shape.cell_upper(j), d);
    const double f_hi = integral(v_hi);
    out[j] = v_hi > v_lo ? std::max(0.0, (f_hi - f_lo) / (v_hi - v_lo)) : 0.0;
    v_lo = v_hi;
    f_lo = f_hi;
  }
  // averages of a nonincreasing function over consecutive intervals
  for (std::size_t j = 1; j < out.size(); ++j) out[j] = std::min(out[j], out[j - 1]);

  const double gamma = tail_exponent > 0.0 ? tail_exponent : g.tail_exponent();
  return RadialProfile(d, std::move(radii), std::move(out), gamma, interp);
}

}  // namespace kplane
