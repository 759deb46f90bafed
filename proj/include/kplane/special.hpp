#pragma once

#include "kplane/params.hpp"

namespace kplane {

/// Gamma function on the positive reals (Lanczos, g = 7, nine terms; reflection
/// below 1/2). Relative accuracy is about 1e-15 for arguments up to ~20.
double gamma_fn(double x);

/// Euler Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), x, y > 0.
double beta_fn(double x, double y);

/// |S^{m-1}|, the surface measure of the unit sphere of R^m. Throws DomainError for m <= 0.
double sphere_area(int m);

/// Volume of the unit ball of R^m.
double ball_volume(int m);

/// I(m, n) = int_0^inf t^m (1 + t^2)^{-n/2} dt = B((m+1)/2, (n-m-1)/2) / 2.
/// Throws DivergenceError when n <= m + 1 and DomainError when m < 0.
double i_integral(int m, int n);

/// Sharp constant A(k, d) = [2^{k-d} |S^k|^d / |S^d|^k]^{1/(d+1)}.
double best_constant(const TransformParams& params);

/// The same constant through Gamma values:
/// pi^{(d-k)/(2(d+1))} Gamma((d+1)/2)^{k/(d+1)} Gamma((k+1)/2)^{-d/(d+1)}.
double best_constant_gamma_form(const TransformParams& params);

/// |S^{k-1}| |S^{d-k-1}|^{1/q} / |S^{d-1}|^{1/p}: converts the ratio
/// ||T f||_{L^q(r^{d-k-1}dr)} / ||f||_{L^p(r^{d-1}dr)} into ||R f||_q / ||f||_p.
double radial_conversion_factor(const TransformParams& params);

/// Affine Blaschke-Petkantschin constant
///   b(d,k) = |S^{d-k}| ... |S^{d-1}| / (|S^0| ... |S^{k-1}|)
/// linking Lebesgue measure on (R^d)^{k+1} to the plane measure whose rotation
/// part is a probability measure. Drury's multilinear integral, with the plane
/// average taken per unit of parallelotope volume, equals b(d,k) ||R f||_q^q.
double drury_measure_constant(const TransformParams& params);

}  // namespace kplane
