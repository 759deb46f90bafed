#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace kplane {

/// Product grid of cells in (rho, s) = (|u|, x_d), u in R^{d-1}.
///
/// rho cells start at 0; s cells are symmetric about 0 with s = 0 an edge,
/// so cell centres (the nodes) never sample s = 0.
class AxiGrid {
 public:
  AxiGrid(std::vector<double> rho_edges, std::vector<double> s_edges);

  /// rho edges scale*sinh(i*h) up to `extent`; s edges mirrored the same way.
  /// Fine near the origin, geometric far from it.
  static AxiGrid sinh_spaced(std::size_t n_rho, std::size_t n_s, double extent = 1e5,
                             double scale = 1.0);

  /// Uniform partitions of [0, rho_max] and [-s_max, s_max].
  static AxiGrid uniform(std::size_t n_rho, std::size_t n_s, double rho_max, double s_max);

  std::size_t n_rho() const { return rho_.size(); }
  std::size_t n_s() const { return s_.size(); }
  std::size_t size() const { return n_rho() * n_s(); }
  std::span<const double> rho_nodes() const { return rho_; }
  std::span<const double> s_nodes() const { return s_; }
  std::span<const double> rho_edges() const { return rho_edges_; }
  std::span<const double> s_edges() const { return s_edges_; }
  double rho(std::size_t i) const { return rho_[i]; }
  double s(std::size_t j) const { return s_[j]; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_s() + j; }

  /// Lebesgue measure in R^d of the solid of revolution of cell (i, j):
  /// |B^{d-1}| (rho_hi^{d-1} - rho_lo^{d-1}) * (s_hi - s_lo), i.e.
  /// |S^{d-2}| rho^{d-2} drho ds integrated exactly (|S^0| = 2 for d = 2).
  double cell_measure(std::size_t i, std::size_t j, int d) const;

  /// All cell measures, row-major in (rho, s).
  std::vector<double> cell_measures(int d) const;

 private:
  std::vector<double> rho_edges_;
  std::vector<double> s_edges_;
  std::vector<double> rho_;
  std::vector<double> s_;
};

enum class FieldInterp { bilinear, cubic };

/// A nonnegative axially symmetric function on R^d sampled at the nodes of an
/// AxiGrid. Between nodes it is tensor-product cubic (Lagrange, even in rho,
/// clamped at 0) or bilinear in (rho, s); beyond the grid box it
/// decays radially with `tail_exponent` from the box boundary. Integrals use
/// the cell (step) interpretation over the box.
class AxiSymField {
 public:
  AxiSymField(int d, std::shared_ptr<const AxiGrid> grid, std::vector<double> values,
              double tail_exponent, FieldInterp interp = FieldInterp::cubic);

  int dim() const { return d_; }
  const AxiGrid& grid() const { return *grid_; }
  std::shared_ptr<const AxiGrid> grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_[grid_->index(i, j)]; }
  double tail_exponent() const { return tail_exponent_; }
  FieldInterp interp() const { return interp_; }

  /// Interpolated value at (rho >= 0, s).
  double operator()(double rho, double s) const;

  AxiSymField with_values(std::vector<double> values) const;
  double max_value() const;

 private:
  int d_;
  std::shared_ptr<const AxiGrid> grid_;
  std::vector<double> values_;
  double tail_exponent_;
  FieldInterp interp_;
};

/// Estimate of the cubic interpolation error: the largest leave-one-out
/// deviation (node value against the cubic through two neighbours on either
/// side, along rho and along s), rescaled from the doubled spacing to the
/// midpoint of a single cell.
double interpolation_error_estimate(const AxiSymField& f);

}  // namespace kplane
