#include "kplane/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <json.hpp>
#include <numbers>

#include "kplane/errors.hpp"
#include "kplane/field.hpp"
#include "kplane/flow.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/norms.hpp"
#include "kplane/operators.hpp"
#include "kplane/random.hpp"
#include "kplane/special.hpp"

namespace kplane {

namespace {

constexpr double kPi = std::numbers::pi;

class Checks {
 public:
  explicit Checks(std::string suite) : suite_(std::move(suite)) {}

  // Passes when value <= tol.
  void at_most(const std::string& name, double value, double tol, std::string detail = {}) {
    add(name, value <= tol, value, tol, std::move(detail));
  }

  void add(const std::string& name, bool passed, double value, double tol, std::string detail = {}) {
    out_.push_back({suite_, name, passed, value, tol, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

std::uint64_t stream(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9E3779B97F4A7C15ULL + salt;
}

std::shared_ptr<const AxiGrid> field_grid(std::size_t n) {
  return std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(n, n, 1e5, 1.0));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

PointFunction h_function() {
  return [](std::span<const double> x) {
    double s = 1.0;
    for (double v : x) s += v * v;
    return 1.0 / s;
  };
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<CheckResult> rearrange_suite(const VerifyOptions& o) {
  Checks c("rearrange");
  const TransformParams P(1, 3);
  const double p = P.p();
  const auto mu = WeightedMeasure::lebesgue(3);
  const auto grid = field_grid(o.grid);
  const int n = 20;
  double norm_err = 0.0, order_viol = 0.0, homog = 0.0, contract = 0.0;
  for (int i = 0; i < n; ++i) {
    CounterRng rng(stream(o.seed, 11), static_cast<std::uint64_t>(i));
    const AxiSymField f = random_field(rng, 3, grid, 2.0);
    const AxiSymField g = random_field(rng, 3, grid, 2.0);
    std::vector<double> sum(f.values().begin(), f.values().end());
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += g.values()[j];
    const AxiSymField fg = f.with_values(sum);
    const RadialProfile fs = rearrange(f, default_radial_grid(), 0.0, Interp::log_pchip, o.exec);
    const RadialProfile gs = rearrange(g, default_radial_grid(), 0.0, Interp::log_pchip, o.exec);
    const RadialProfile fgs = rearrange(fg, default_radial_grid(), 0.0, Interp::log_pchip, o.exec);
    norm_err = std::max(norm_err, std::abs(lp_norm(fs, p, mu) / lp_norm(f, p) - 1.0));
    for (std::size_t j = 0; j < fs.size(); ++j) {
      order_viol = std::max(order_viol, (fs.value(j) - fgs.value(j)) / fgs.values().front());
    }
    const double lambda = 2.5;
    std::vector<double> scaled(f.values().begin(), f.values().end());
    for (double& v : scaled) v *= lambda;
    const RadialProfile ls =
        rearrange(f.with_values(scaled), default_radial_grid(), 0.0, Interp::log_pchip, o.exec);
    homog = std::max(homog, max_abs_diff(ls.values(), fs.scaled(lambda).values()) /
                                (lambda * fs.values().front()));
    contract = std::max(contract, lp_distance(fs, gs, p, mu) / lp_distance(f, g, p));
  }
  c.at_most("norm preservation", norm_err, 1e-4, "max relative norm change, 20 fields");
  c.at_most("order preservation", order_viol, 1e-12, "f <= f + g implies f* <= (f + g)*");
  c.at_most("homogeneity", homog, 1e-12, "(2.5 f)* = 2.5 f*");
  c.at_most("contractive direction", contract, 1.0 + 1e-6, "||f* - g*|| / ||f - g||");

  double idem = 0.0;
  for (int i = 0; i < 10; ++i) {
    CounterRng rng(stream(o.seed, 12), static_cast<std::uint64_t>(i));
    const double lambda = std::exp(2.0 * rng.uniform() - 1.0);
    const double gamma = 2.0 + 2.0 * rng.uniform();
    const RadialProfile f = RadialProfile::sample(
        3, default_radial_grid(),
        [&](double r) { return std::pow(1.0 + lambda * r * r, -0.5 * gamma); }, gamma);
    const RadialProfile vf = rearrange(embed_radial(f, grid, o.exec), default_radial_grid(), 0.0,
                                       Interp::log_pchip, o.exec, 4);
    idem = std::max(idem, lp_distance(vf, f, p, mu) / lp_norm(f, p, mu));
  }
  c.at_most("idempotent on radial nonincreasing", idem, 1e-3, "||V embed f - f|| / ||f||, 10 profiles");

  const auto fine = field_grid(std::max<std::size_t>(o.grid, 1024));
  double law = 0.0;
  for (int d : {3, 4}) {
    for (double cc : {0.25, 4.0}) {
      std::vector<double> v(fine->size());
      for (std::size_t i = 0; i < fine->n_rho(); ++i) {
        for (std::size_t j = 0; j < fine->n_s(); ++j) {
          const double r = fine->rho(i), s = fine->s(j);
          v[fine->index(i, j)] = cc * r * r + s * s / cc <= 1.0 ? 1.0 : 0.0;
        }
      }
      const AxiSymField e(d, fine, std::move(v), 2.0, FieldInterp::bilinear);
      const RadialProfile fs = rearrange(e, default_radial_grid(), 0.0, Interp::log_pchip, o.exec);
      const double volume = lp_norm(fs, 1.0, WeightedMeasure::lebesgue(d));
      const double r_new = std::pow(volume / ball_volume(d), 1.0 / d);
      const double expect = std::pow(cc, -(d - 2) / (2.0 * d));
      law = std::max(law, std::abs(r_new / expect - 1.0));
    }
  }
  c.at_most("ellipsoid radius law", law, 1e-2, "R'^d = R^d / c^{(d-2)/2}, c in {1/4, 4}, d in {3, 4}");
  return c.take();
}

std::vector<CheckResult> lorentz_suite(const VerifyOptions& o) {
  Checks c("lorentz");
  const TransformParams P(1, 3);
  const double p = P.p(), q = P.q();
  const auto mu = WeightedMeasure::lebesgue(3);
  const auto radii = log_grid(1e-4, 1e4, 512);
  double layer = 0.0;
  int fails = 0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    CounterRng rng(stream(o.seed, 21), static_cast<std::uint64_t>(i));
    const RadialProfile f = random_step_profile(rng, 3, radii, min_admissible_tail(P));
    layer = std::max(layer, std::abs(lorentz_quasinorm(f, p, p, mu) / lp_norm(f, p, mu) - 1.0));
    const InterpolationReport rep = interpolation_check(f, p, p + 0.25 * (q - p), mu);
    if (!rep.satisfied) ++fails;
    worst_ratio = std::max(worst_ratio, rep.lhs / rep.rhs);
  }
  c.at_most("layer-cake identity", layer, 1e-8, "|L^{p,p} / L^p - 1|, 100 profiles");
  c.add("interpolation inequality", fails == 0, worst_ratio, 1.0,
        std::to_string(fails) + " failures in 100 profiles, value = max lhs/rhs");
  return c.take();
}

std::vector<CheckResult> symmetry_suite(const VerifyOptions& o) {
  Checks c("symmetry");
  const TransformParams P(1, 3);
  const double p = P.p();
  const auto grid = field_grid(o.grid);

  double iso = 0.0, invol_excess = 0.0;
  int invol_fail = 0;
  for (int i = 0; i < 50; ++i) {
    CounterRng rng(stream(o.seed, 31), static_cast<std::uint64_t>(i));
    const AxiSymField f = random_field(rng, 3, grid, 2.0);
    const AxiSymField s = s_symmetry(f, P, o.exec).field;
    iso = std::max(iso, std::abs(lp_norm(s, p) / lp_norm(f, p) - 1.0));
    const AxiSymField ss = s_symmetry(s, P, o.exec).field;
    const double dev = max_abs_diff(ss.values(), f.values());
    const double tol =
        2.0 * std::max(interpolation_error_estimate(f), interpolation_error_estimate(s));
    if (dev > tol) ++invol_fail;
    invol_excess = std::max(invol_excess, dev / tol);
  }
  c.at_most("S isometry", iso, 1e-3, "|‖Sg‖/‖g‖ - 1|, 50 fields");
  c.add("S involution", invol_fail == 0, invol_excess, 1.0,
        "max |SSg - g| / (2 interpolation error), " + std::to_string(invol_fail) + " failures");

  const AxiSymField eh = embed_radial(extremizer_profile(ExtremizerSpec(P)), grid, o.exec);
  const AxiSymField sh = s_symmetry(eh, P, o.exec).field;
  // S h - h at a node is |s|^{-(k+1)} times the interpolation error of h at the image point
  double sh_dev = 0.0;
  for (std::size_t i = 0; i < grid->n_rho(); ++i) {
    for (std::size_t j = 0; j < grid->n_s(); ++j) {
      const double w = std::pow(std::abs(grid->s(j)), P.k() + 1.0);
      sh_dev = std::max(sh_dev, w * std::abs(sh.at(i, j) - eh.at(i, j)));
    }
  }
  const double sh_tol = 2.0 * interpolation_error_estimate(eh);
  c.at_most("S h = h", sh_dev, sh_tol, "max |s|^{k+1} |S h - h| over nodes");

  const AxiSymField g2 =
      s_symmetry(embed_radial(extremizer_profile(ExtremizerSpec(P, 1.0, 2.0)), grid, o.exec), P,
                 o.exec)
          .field;
  const EllipsoidReport er = ellipsoid_levelset_check(g2);
  c.at_most("ellipsoidal level sets: s0", std::abs(er.s0), 1e-3, "c = " + fmt(er.c));
  c.at_most("ellipsoidal level sets: c spread", er.c_spread, 1e-2,
            "rms " + fmt(er.rms_error) + ", skipped " + std::to_string(er.skipped_levels));

  double l15 = 0.0;
  const int kd[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (const auto& x : kd) {
    for (int i = 0; i < 1000; ++i) {
      CounterRng rng(stream(o.seed, 32 + static_cast<std::uint64_t>(x[0] * 10 + x[1])),
                     static_cast<std::uint64_t>(i));
      const VolumeRatio vr = volume_ratio(random_tuple(rng, x[0], x[1]));
      l15 = std::max(l15, std::abs(vr.lhs / vr.rhs - 1.0));
    }
  }
  c.at_most("volume ratio identity", l15, 1e-10, "1000 tuples per (k, d)");

  double l14 = 0.0;
  const PointFunction hf = h_function();
  const PointFunction shf = s_symmetry_function(hf, 1);
  for (int d : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      CounterRng rng(stream(o.seed, 40 + static_cast<std::uint64_t>(d)), static_cast<std::uint64_t>(i));
      const PointTuple t = random_tuple(rng, 1, d);
      PointTuple image;
      double prod = 1.0;
      for (const Point& x : t.points) {
        image.points.push_back(phi_map(x));
        prod *= std::abs(x.back());
      }
      const double lhs = tilde_r(shf, t);
      const double rhs = tilde_r(hf, image) / prod;
      l14 = std::max(l14, std::abs(lhs / rhs - 1.0));
    }
  }
  c.at_most("tilde_r inversion identity", l14, 1e-5, "100 tuples per d in {2, 3}, f = h");
  return c.take();
}

std::vector<CheckResult> drury_suite(const VerifyOptions& o) {
  Checks c("drury");
  const TransformParams P12(1, 2), P13(1, 3);
  const PointFunction hf = h_function();
  const std::uint64_t n = o.samples;
  const double exact2 = 2.0 * std::pow(kPi, 3);
  const double exact3 = std::pow(kPi, 5);

  const MCEstimate e2 = drury_norm_mc(hf, P12, n, o.seed, o.exec);
  const double z2 = std::abs(e2.value - exact2) / e2.std_error;
  c.at_most("h, d = 2 vs 2 pi^3", z2, 3.0,
            "estimate " + fmt(e2.value) + " +- " + fmt(e2.std_error) + ", value in sigmas");

  const MCEstimate e3 = drury_norm_mc(hf, P13, n, o.seed + 1, o.exec);
  const double z3 = std::abs(e3.value - exact3) / e3.std_error;
  c.at_most("h, d = 3 vs pi^5", z3, 3.0,
            "estimate " + fmt(e3.value) + " +- " + fmt(e3.std_error) + ", value in sigmas");

  const PointFunction bump = [](std::span<const double> x) {
    const double a = x[0] - 0.4, b = x[1] - 1.1;
    return std::exp(-(a * a + 2.0 * b * b));
  };
  const MCEstimate eb = drury_norm_mc(bump, P12, n, o.seed + 2, o.exec);
  const MCEstimate esb = drury_norm_mc(s_symmetry_function(bump, 1), P12, n, o.seed + 3, o.exec);
  const double zs = std::abs(eb.value - esb.value) / std::hypot(eb.std_error, esb.std_error);
  c.at_most("S invariance", zs, 3.0, "bump " + fmt(eb.value) + " vs S bump " + fmt(esb.value));

  CounterRng rng(stream(o.seed, 51), 0);
  double m[4];
  double det = 0.0;
  do {
    for (double& v : m) v = 0.3 * rng.normal();
    m[0] += 1.0;
    m[3] += 1.0;
    det = m[0] * m[3] - m[1] * m[2];
  } while (std::abs(det) < 0.3);
  const double shift[2] = {0.5 * rng.normal(), 0.5 * rng.normal()};
  const PointFunction hl = [m, shift, hf](std::span<const double> x) {
    const double y[2] = {m[0] * x[0] + m[1] * x[1] + shift[0], m[2] * x[0] + m[3] * x[1] + shift[1]};
    return hf(y);
  };
  const MCEstimate el = drury_norm_mc(hl, P12, n, o.seed + 4, o.exec);
  const double factor = std::pow(std::abs(det), -P12.q() / P12.p());
  const double za = std::abs(el.value - factor * e2.value) /
                    std::hypot(el.std_error, factor * e2.std_error);
  c.at_most("affine invariance", za, 3.0,
            "|det L| = " + fmt(std::abs(det)) + ", f o L " + fmt(el.value) + " vs " +
                fmt(factor * e2.value));

  const double direct = radon2d_direct(hf, P12.q(), 16, 1e-10, o.exec);
  c.at_most("direct Radon oracle, h", std::abs(direct / exact2 - 1.0), 1e-4, fmt(direct));

  const double direct_bump = radon2d_direct(bump, P12.q(), 256, 1e-9, o.exec);
  c.at_most("direct Radon vs MC, bump", std::abs(eb.value - direct_bump) / eb.std_error, 3.0,
            "direct " + fmt(direct_bump) + ", value in sigmas");
  return c.take();
}

std::vector<CheckResult> flow_suite(const VerifyOptions& o) {
  Checks c("flow");
  const TransformParams P(1, 3);
  const double A = best_constant(P);
  FlowOptions fo;
  fo.n_rho = fo.n_s = o.grid;
  fo.exec = o.exec;
  fo.cell_points = 1;
  fo.subcells = 2;

  const ConvergenceReport rh = competing_iterate(preset_profile("h", P), P, 5, 5e-4, fo);
  c.add("h is a fixed point", rh.converged && rh.converged_at == 0, rh.final_distance(), 5e-4,
        "converged at " + std::to_string(rh.converged_at));

  const ConvergenceReport ri = competing_iterate(preset_profile("indicator", P), P, o.iters, 0.0, fo);
  c.at_most("indicator converges to C h", ri.final_distance(), 1e-3,
            std::to_string(ri.distances.size() - 1) + " iterations");
  c.add("distance nonincreasing", ri.distance_monotone, 0.0, fo.slack);
  c.add("functional nondecreasing", ri.ratio_monotone, 0.0, fo.slack);
  double top = 0.0;
  for (double r : ri.ratios) {
    if (std::isfinite(r)) top = std::max(top, r / A);
  }
  c.at_most("functional below the best constant", top, 1.0 + 2e-4, "max ratio / A");
  double defect = 0.0;
  for (std::size_t i = 1; i < ri.norm_defects.size(); ++i) {
    defect = std::max(defect, std::abs(ri.norm_defects[i]));
  }
  c.at_most("per-step norm defect after the first step", defect, 1e-4,
            "relative, before rescaling; first step " +
                fmt(ri.norm_defects.empty() ? 0.0 : ri.norm_defects.front()));
  double drift = 0.0;
  for (double x : ri.norms) drift = std::max(drift, std::abs(x / ri.norms.front() - 1.0));
  c.at_most("norm conservation", drift, 1e-3, "relative, along the flow");

  const DilationFit fh = vs_squared_dilation_fit(preset_profile("h", P), P, fo);
  c.at_most("(VS)^2 dilation fit, h", fh.residual, 1e-3, "mu = " + fmt(fh.mu));
  const RadialProfile fam = RadialProfile::sample(
      3, default_radial_grid(), [](double r) { return 1.0 / (2.0 + 5.0 * r * r); }, 2.0);
  const DilationFit ff = vs_squared_dilation_fit(fam, P, fo);
  c.at_most("(VS)^2 dilation fit, (2 + 5 r^2)^{-1}", ff.residual, 1e-2, "mu = " + fmt(ff.mu));

  const RadialProfile h = preset_profile("h", P);
  std::vector<double> noisy(h.values().begin(), h.values().end());
  CounterRng rng(stream(o.seed, 61), 0);
  for (double& v : noisy) v *= std::max(0.0, 1.0 + 0.01 * rng.normal());
  const ConvergenceReport rn = competing_iterate(h.with_values(noisy), P, 50, 0.0, fo);
  c.at_most("perturbed h returns to the family", rn.final_distance(), 1e-3,
            "1% noise, 50 steps; initial distance " + fmt(rn.distances.front()));
  return c.take();
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"rearrange", "lorentz", "symmetry", "drury", "flow"};
  return names;
}

bool is_suite(std::string_view name) {
  if (name == "all") return true;
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerifyReport run_suite(std::string_view suite, const VerifyOptions& options) {
  if (!is_suite(suite)) throw DomainError("unknown suite '" + std::string(suite) + "'");
  VerifyReport report;
  report.seed = options.seed;
  auto run = [&](std::string_view name) {
    std::vector<CheckResult> r;
    if (name == "rearrange") r = rearrange_suite(options);
    if (name == "lorentz") r = lorentz_suite(options);
    if (name == "symmetry") r = symmetry_suite(options);
    if (name == "drury") r = drury_suite(options);
    if (name == "flow") r = flow_suite(options);
    report.checks.insert(report.checks.end(), r.begin(), r.end());
  };
  if (suite == "all") {
    for (const auto& name : suite_names()) run(name);
  } else {
    run(suite);
  }
  return report;
}

std::string report_json(const VerifyReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["passed"] = report.passed();
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    j["checks"].push_back({{"suite", c.suite},
                           {"name", c.name},
                           {"passed", c.passed},
                           {"value", c.value},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
  }
  return j.dump(2);
}

}  // namespace kplane
