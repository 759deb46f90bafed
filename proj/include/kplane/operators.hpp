#pragma once

#include <memory>
#include <vector>

#include "kplane/field.hpp"
#include "kplane/params.hpp"
#include "kplane/parallel.hpp"
#include "kplane/profile.hpp"

namespace kplane {

/// h_{C,lambda}(r) = C (1 + (lambda r)^2)^{-(k+1)/2}.
struct ExtremizerSpec {
  int k = 1;
  int d = 2;
  double amplitude = 1.0;
  double dilation = 1.0;

  ExtremizerSpec() = default;
  ExtremizerSpec(const TransformParams& params, double amplitude = 1.0, double dilation = 1.0);

  double operator()(double r) const;
};

/// Samples h_{C,lambda} with tail exponent k + 1.
RadialProfile extremizer_profile(const ExtremizerSpec& spec,
                                 std::vector<double> radii = default_radial_grid(),
                                 Interp interp = Interp::log_pchip);

/// T f(r) = int_0^inf f(sqrt(s^2 + r^2)) s^{k-1} ds at every node of f's grid.
/// Output tail exponent is f.tail_exponent() - k. Throws DivergenceError when
/// the input tail is not faster than s^{-k}.
RadialProfile t_transform(const RadialProfile& f, const TransformParams& params,
                          Exec exec = Exec::serial);

/// ||R f||_q / ||f||_p through the radial reduction and the conversion factor.
double functional_ratio(const RadialProfile& f, const TransformParams& params,
                        Exec exec = Exec::serial);

/// x -> f(|x|) sampled on the (rho, s) nodes.
AxiSymField embed_radial(const RadialProfile& f, std::shared_ptr<const AxiGrid> grid,
                         Exec exec = Exec::serial);

struct SymmetryResult {
  AxiSymField field;
  /// Input tail slower than |x|^{-(k+1)}: S g is unbounded near s = 0.
  bool slow_tail = false;
};

/// S g(rho, s) = |s|^{-(k+1)} g(rho / |s|, 1 / s) on g's grid, using g's
/// interpolation and tail model. Output tail exponent k + 1.
SymmetryResult s_symmetry(const AxiSymField& g, const TransformParams& params,
                          Exec exec = Exec::serial);

/// S(embed f) evaluated from the profile itself on `grid`:
/// |s|^{-(k+1)} f(sqrt(rho^2 + 1) / |s|).
/// cell_points = 1 samples the nodes; n > 1 stores in each cell the L^p mean
/// (p = params.p()) over an n x n Gauss rule, so that cell masses of |g|^p
/// are integrated to high order.
AxiSymField s_symmetry_radial(const RadialProfile& f, std::shared_ptr<const AxiGrid> grid,
                              const TransformParams& params, Exec exec = Exec::serial,
                              int cell_points = 1);

/// Symmetric decreasing rearrangement of g with respect to Lebesgue measure
/// on R^d, returned on `radii`. Node j carries the mean of g* over the ball
/// volumes of its step cell. Tail exponent is taken from g unless given.
/// subcells > 1 splits every grid cell into subcells x subcells pieces with
/// exact measures and interpolated values.
RadialProfile rearrange(const AxiSymField& g, std::vector<double> radii = default_radial_grid(),
                        double tail_exponent = 0.0, Interp interp = Interp::log_pchip,
                        Exec exec = Exec::serial, int subcells = 1);

struct ConcentrationResult {
  double t0 = 0.0;
  RadialProfile g;
  double c = 0.0;
  double weak_norm = 0.0;
};

/// Rescales f (normalized to ||f||_p = 1 on R^d) as g(x) = t0 f(t0^{p/d} x),
/// t0 = 1 / s0 with s0 the grid level maximizing t d_f(t)^{1/p}; c is the
/// largest step radius with g >= 1 on [0, c].
ConcentrationResult concentration_rescale(const RadialProfile& f, const TransformParams& params);

}  // namespace kplane
