#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace dinls {

using Complex = std::complex<double>;

/// Cell-centred radial mesh on [0, R] for radial functions on R^N.
///
/// Nodes sit at r_j = (j + 1/2) dr, so r = 0 is never a node and weights
/// r^{-b} stay finite. Quadrature weights carry the R^N measure,
/// w_j = omega_{N-1} r_j^{N-1} dr with omega_{N-1} = 2 pi^{N/2} / Gamma(N/2).
class RadialGrid {
 public:
  RadialGrid(int dimension, double radius, int points);

  int dimension() const noexcept { return dimension_; }
  double radius() const noexcept { return radius_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  double spacing() const noexcept { return spacing_; }
  /// omega_{N-1}, the area of the unit sphere in R^N.
  double sphere_area() const noexcept { return sphere_area_; }
  /// (N-1)/2: v = r^{(N-1)/2} u turns the radial Laplacian into d_rr - c_N/r^2.
  double reduction_exponent() const noexcept { return 0.5 * (dimension_ - 1); }
  /// c_N = (N-1)(N-3)/4.
  double centrifugal_constant() const noexcept { return 0.25 * (dimension_ - 1) * (dimension_ - 3); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  int dimension_;
  double radius_;
  double spacing_;
  double sphere_area_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// N in {3,4,5}, R > 0, M >= 16 and a power of two; throws BadGridSpec.
GridPtr make_radial_grid(int dimension, double radius, int points);

/// Radial profile u(r_j) at time t. Holds a shared reference to its grid.
class Field {
 public:
  Field(GridPtr grid, std::vector<Complex> values, double time = 0.0);
  /// Zero field on the grid.
  explicit Field(GridPtr grid, double time = 0.0);

  const RadialGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Complex& operator[](std::size_t j) const { return values_[j]; }
  Complex& operator[](std::size_t j) { return values_[j]; }

  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  /// False once any entry is NaN or Inf.
  bool is_finite() const noexcept;

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
  double time_;
};

/// sum_j samples_j w_j. Throws LengthMismatch or NonFiniteSample.
double integrate(const RadialGrid& grid, std::span<const double> samples);

/// du/dr at the nodes: fourth-order central differences, even extension across
/// r = 0, one-sided fourth-order stencils in the last two cells.
std::vector<Complex> radial_derivative(const Field& field);
std::vector<Complex> radial_derivative(const RadialGrid& grid, std::span<const Complex> values);

/// v_j = r_j^{(N-1)/2} u_j and its inverse.
std::vector<Complex> to_reduced(const Field& field);
Field from_reduced(const GridPtr& grid, std::span<const Complex> reduced, double time = 0.0);

/// Damping profile: 1 inside r < R - R/8, cos^2 ramp to 0 at r = R.
std::vector<double> absorbing_mask(const RadialGrid& grid);

}  // namespace dinls
