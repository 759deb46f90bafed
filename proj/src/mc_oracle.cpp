#include "kplane/mc_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "kplane/errors.hpp"
#include "kplane/quadrature.hpp"
#include "kplane/special.hpp"

namespace kplane {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXd edge_matrix(const PointTuple& t) {
  const int k = t.k();
  const int d = t.d();
  if (k < 1) throw DomainError("PointTuple: need at least two points");
  Eigen::MatrixXd e(d, k);
  for (int i = 1; i <= k; ++i) {
    if (static_cast<int>(t.points[i].size()) != d) {
      throw DomainError("PointTuple: points of different dimensions");
    }
    for (int r = 0; r < d; ++r) e(r, i - 1) = t.points[i][r] - t.points[0][r];
  }
  return e;
}

double gram_volume(const PointTuple& t) {
  const Eigen::MatrixXd e = edge_matrix(t);
  const double det = (e.transpose() * e).determinant();
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double line_integral(const PointFunction& f, std::span<const double> c, std::span<const double> e,
                     double scale, double rel_tol) {
  const std::size_t d = c.size();
  std::vector<double> x(d);
  auto along = [&](double sign) {
    return [&, sign](double t) {
      for (std::size_t r = 0; r < d; ++r) x[r] = c[r] + sign * t * e[r];
      return f(x);
    };
  };
  return integrate_half_line(along(1.0), scale, rel_tol).value +
         integrate_half_line(along(-1.0), scale, rel_tol).value;
}

}  // namespace

Point phi_map(std::span<const double> x) {
  if (x.empty()) throw DomainError("phi_map: empty point");
  const double xd = x.back();
  if (xd == 0.0) throw DomainError("phi_map: x_d = 0");
  Point y(x.size());
  for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = x[i] / xd;
  y.back() = 1.0 / xd;
  return y;
}

double phi_jacobian(std::span<const double> x) {
  if (x.empty() || x.back() == 0.0) throw DomainError("phi_jacobian: x_d = 0");
  return std::pow(std::abs(x.back()), -static_cast<double>(x.size() + 1));
}

double parallelotope_volume(const PointTuple& t) { return gram_volume(t); }

double simplex_volume(const PointTuple& t) { return gram_volume(t) / factorial(t.k()); }

VolumeRatio volume_ratio(const PointTuple& t) {
  const int k = t.k();
  const auto& x0 = t.points[0];
  const double x0d = x0.back();
  PointTuple images;
  PointTuple mixed;
  images.points.push_back(phi_map(x0));
  mixed.points.push_back(images.points.front());
  VolumeRatio out;
  out.rhs = 1.0;
  for (int i = 1; i <= k; ++i) {
    const auto& xi = t.points[i];
    const double dd = xi.back() - x0d;
    if (dd == 0.0) throw DomainError("volume_ratio: [x_i - x_0]_d = 0");
    Point y(xi.size(), 0.0);
    for (std::size_t r = 0; r + 1 < xi.size(); ++r) y[r] = (xi[r] - x0[r]) / dd;
    mixed.points.push_back(std::move(y));
    images.points.push_back(phi_map(xi));
    out.rhs *= std::abs(x0d / xi.back() - 1.0);
  }
  out.lhs = simplex_volume(images) / simplex_volume(mixed);
  return out;
}

double plane_integral(const PointFunction& f, const PointTuple& t, const QuadSpec& spec) {
  const int k = t.k();
  const int d = t.d();
  if (k < 1 || k > 2) throw DomainError("plane_integral: only k = 1, 2 are supported");
  if (k >= d) throw DomainError("plane_integral: need k < d");
  const Eigen::MatrixXd e = edge_matrix(t);
  if (gram_volume(t) <= 0.0) throw DomainError("plane_integral: degenerate tuple");
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
  const Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  Eigen::VectorXd x0(d);
  for (int r = 0; r < d; ++r) x0(r) = t.points[0][r];
  const Eigen::VectorXd c = x0 - basis * (basis.transpose() * x0);
  const double scale = spec.scale > 0.0 ? spec.scale : std::sqrt(1.0 + c.squaredNorm());
  std::vector<double> cv(c.data(), c.data() + d);

  if (k == 1) {
    std::vector<double> ev(basis.data(), basis.data() + d);
    return line_integral(f, cv, ev, scale, spec.rel_tol);
  }
  std::vector<double> x(d);
  auto ring = [&](double phi) {
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    auto radial = [&](double r) {
      for (int i = 0; i < d; ++i) x[i] = cv[i] + r * (cp * basis(i, 0) + sp * basis(i, 1));
      return r * f(x);
    };
    return integrate_half_line(radial, scale, spec.rel_tol).value;
  };
  return integrate_adaptive(ring, 0.0, 2.0 * std::numbers::pi, spec.rel_tol).value;
}

double tilde_r(const PointFunction& f, const PointTuple& t, const QuadSpec& spec) {
  const double vol = parallelotope_volume(t);
  if (!(vol > 0.0)) throw DomainError("tilde_r: degenerate tuple");
  return plane_integral(f, t, spec) / vol;
}

PointFunction s_symmetry_function(PointFunction f, int k) {
  return [f = std::move(f), k](std::span<const double> x) {
    const double xd = x.back();
    if (xd == 0.0) return 0.0;
    const Point y = phi_map(x);
    return std::pow(std::abs(xd), -(k + 1.0)) * f(y);
  };
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index)
    : key_(splitmix64(seed ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + 0x632BE59BD9B4E019ULL * counter_++); }

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

namespace {

// Radial Lomax law about `center`: |x - center| has density alpha (1+r)^(-alpha-1),
// direction uniform.
bool sample_radial(CounterRng& rng, int d, double alpha, const Point* center, Point& out) {
  double nrm = 0.0;
  for (int c = 0; c < d; ++c) {
    out[c] = rng.normal();
    nrm += out[c] * out[c];
  }
  nrm = std::sqrt(nrm);
  const double u = rng.uniform();
  const double r = std::pow(u, -1.0 / alpha) - 1.0;
  if (nrm == 0.0 || !(r > 1e-12) || !std::isfinite(r)) return false;
  for (int c = 0; c < d; ++c) out[c] = out[c] * r / nrm + (center ? (*center)[c] : 0.0);
  return true;
}

double radial_density(int d, double alpha, double r) {
  return alpha * std::pow(1.0 + r, -alpha - 1.0) / (sphere_area(d) * std::pow(r, d - 1));
}

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return std::sqrt(s);
}

double norm(const Point& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

constexpr double kOriginAlpha = 0.5;
constexpr double kOffsetAlpha = 1.0;

}  // namespace

MCEstimate drury_norm_mc(const PointFunction& f, const TransformParams& params,
                         std::uint64_t n_samples, std::uint64_t seed, Exec exec,
                         const QuadSpec& spec) {
  const int k = params.k();
  const int d = params.d();
  if (k != 1 || d > 3) {
    throw DomainError("drury_norm_mc: supported (k, d) are (1, 2) and (1, 3)");
  }
  if (n_samples < 2) throw DomainError("drury_norm_mc: need at least two samples");

  std::vector<double> y(n_samples, 0.0);
  std::vector<unsigned char> bad(n_samples, 0);
  for_each_index(exec, static_cast<std::int64_t>(n_samples), [&](std::int64_t i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    PointTuple t;
    t.points.assign(2, Point(d));
    Point& x0 = t.points[0];
    Point& x1 = t.points[1];
    const bool offset = rng.uniform() < 0.5;
    if (!sample_radial(rng, d, kOriginAlpha, nullptr, x0) ||
        !sample_radial(rng, d, offset ? kOffsetAlpha : kOriginAlpha, offset ? &x0 : nullptr, x1)) {
      bad[i] = 1;
      return;
    }
    const double r = distance(x0, x1);
    if (std::abs(x0.back()) < 1e-8 || std::abs(x1.back()) < 1e-8 || !(r > 1e-12)) {
      bad[i] = 1;
      return;
    }
    const double f0 = f(x0);
    const double f1 = f(x1);
    if (f0 == 0.0 || f1 == 0.0) return;
    const double rho0 = radial_density(d, kOriginAlpha, norm(x0));
    const double rho1 = 0.5 * radial_density(d, kOriginAlpha, norm(x1)) +
                        0.5 * radial_density(d, kOffsetAlpha, r);
    const double rt = plane_integral(f, t, spec) / r;
    y[i] = f0 * f1 * std::pow(rt, d - k) / (rho0 * rho1);
  });

  MCEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  for (unsigned char b : bad) est.rejected += b;
  const double n = static_cast<double>(n_samples);
  const double mean = pairwise_sum(y) / n;
  std::vector<double> dev(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) dev[i] = (y[i] - mean) * (y[i] - mean);
  const double var = pairwise_sum(dev) / (n - 1.0);
  const double b = drury_measure_constant(params);
  est.value = mean / b;
  est.std_error = std::sqrt(var / n) / b;
  return est;
}

double radon2d_direct(const PointFunction& f, double q, int n_angles, double rel_tol, Exec exec) {
  if (n_angles < 1) throw DomainError("radon2d_direct: need n_angles >= 1");
  std::vector<double> per_angle(n_angles);
  for_each_index(exec, n_angles, [&](std::int64_t a) {
    const double theta = (static_cast<double>(a) + 0.5) * std::numbers::pi / n_angles;
    const double w[2] = {std::cos(theta), std::sin(theta)};
    const double e[2] = {-w[1], w[0]};
    auto rq = [&](double t) {
      const double c[2] = {t * w[0], t * w[1]};
      const double v = line_integral(f, c, e, std::sqrt(1.0 + t * t), rel_tol);
      return std::pow(std::abs(v), q);
    };
    auto negative = [&](double t) { return rq(-t); };
    per_angle[a] = integrate_half_line(rq, 1.0, rel_tol).value +
                   integrate_half_line(negative, 1.0, rel_tol).value;
  });
  return pairwise_sum(per_angle) / n_angles;
}

}  // namespace kplane
