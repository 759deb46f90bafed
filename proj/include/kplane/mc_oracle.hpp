#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kplane/params.hpp"
#include "kplane/parallel.hpp"

namespace kplane {

using Point = std::vector<double>;
/// A nonnegative function on R^d evaluated at a point.
using PointFunction = std::function<double(std::span<const double>)>;

/// x -> (x' / x_d, 1 / x_d). Throws DomainError when x_d = 0.
Point phi_map(std::span<const double> x);
/// |det D Phi(x)| = |x_d|^{-(d+1)}.
double phi_jacobian(std::span<const double> x);

/// Points x_0, ..., x_k of R^d.
struct PointTuple {
  std::vector<Point> points;

  int k() const { return static_cast<int>(points.size()) - 1; }
  int d() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

/// k-volume of the simplex (Gram determinant of the edges, over k!). 0 when degenerate.
double simplex_volume(const PointTuple& t);
/// k-volume of the parallelotope spanned by x_i - x_0 (k! times the simplex volume).
double parallelotope_volume(const PointTuple& t);

struct VolumeRatio {
  double lhs = 0.0;  ///< V(Phi x_0, ..., Phi x_k) / V(Phi x_0, y_1, ..., y_k)
  double rhs = 0.0;  ///< prod |x_{0d} / x_{id} - 1|
};

/// y_i = ((x_i' - x_0') / [x_i - x_0]_d, 0) and both sides of the volume identity.
VolumeRatio volume_ratio(const PointTuple& t);

struct QuadSpec {
  double rel_tol = 1e-10;
  /// Scale of the tan substitution; 0 picks sqrt(1 + |c|^2), c the point of the plane closest to 0.
  double scale = 0.0;
};

/// int_{R^k} f(x_0 + sum lambda_i (x_i - x_0)) dlambda, for k = 1, 2.
/// Computed in orthonormal coordinates centred at the point of the plane
/// closest to the origin and divided by the parallelotope volume.
double tilde_r(const PointFunction& f, const PointTuple& t, const QuadSpec& spec = {});

/// Integral of f over the k-plane through the points (unit k-dimensional measure).
double plane_integral(const PointFunction& f, const PointTuple& t, const QuadSpec& spec = {});

/// The same function after the inversion symmetry: |x_d|^{-(k+1)} f(Phi x).
PointFunction s_symmetry_function(PointFunction f, int k);

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejected = 0;
};

/// Counter-based generator: sample i of seed s draws from its own stream.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next_u64();
  /// Uniform in (0, 1).
  double uniform();
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// ||R f||_q^q for k = 1 through Drury's multilinear formula,
///   int f(x_0) f(x_1) tilde_r f(x_0, x_1)^{d-1} dx_0 dx_1 / b(d, 1),
/// with x_0 drawn from a radial law about the origin, |x_0| with density
/// (1/2)(1 + r)^{-3/2}, and x_1 from an equal mixture of that law and the
/// offset x_0 + delta, |delta| with density (1 + r)^{-2}. Directions uniform.
/// b(d, k) is drury_measure_constant. Supported (k, d): (1, 2), (1, 3).
MCEstimate drury_norm_mc(const PointFunction& f, const TransformParams& params,
                         std::uint64_t n_samples, std::uint64_t seed, Exec exec = Exec::parallel,
                         const QuadSpec& spec = {1e-9, 0.0});

/// ||R f||_q^q in d = 2 from (1/pi) int_0^pi dtheta int_R dt |R f(theta, t)|^q,
/// midpoint rule in the angle, adaptive quadrature in t and along each line.
double radon2d_direct(const PointFunction& f, double q, int n_angles, double rel_tol = 1e-9,
                      Exec exec = Exec::parallel);

}  // namespace kplane
