#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dinls/grid.hpp"

namespace dinls {

/// Exact flow of i u_t = -d_rr v in the reduced variable v = r^{(N-1)/2} u,
/// with Dirichlet ends at r = 0 and r = R.
///
/// On the cell-centred grid the sine modes sin(k_m r), k_m = pi m / R,
/// m = 1..M, diagonalise d_rr; DST-II maps nodes to modes and DST-III maps
/// back (their product is 2M times the identity). Each mode is multiplied by
/// exp(-i k_m^2 dt). The centrifugal part -c_N/r^2 of the radial Laplacian is
/// not included here; the solver folds it into the phase substep.
///
/// Instances own FFTW plans and a scratch buffer, so one propagator must not be
/// used from two threads at once. Distinct propagators are independent.
class LinearPropagator {
 public:
  explicit LinearPropagator(GridPtr grid);
  ~LinearPropagator();
  LinearPropagator(LinearPropagator&&) noexcept;
  LinearPropagator& operator=(LinearPropagator&&) noexcept;
  LinearPropagator(const LinearPropagator&) = delete;
  LinearPropagator& operator=(const LinearPropagator&) = delete;

  /// In-place update of nodal values u_j over a time dt (any sign).
  void apply(std::span<Complex> values, double dt);
  Field apply(const Field& field, double dt);

  const GridPtr& grid() const noexcept;
  /// k_m^2 for m = 1..M.
  std::span<const double> squared_wavenumbers() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper: builds a propagator and applies it.
Field linear_substep(const Field& field, double dt);

/// ||grad u||^2 as the quadratic form the propagator conserves:
///   omega_{N-1} [ int |v'|^2 dr + c_N int |v|^2 / r^2 dr ],
/// with int |v'|^2 taken exactly on the sine interpolant of v = r^{(N-1)/2} u.
/// Plans are cached per thread and per point count.
double dirichlet_form(const RadialGrid& grid, std::span<const Complex> values);

}  // namespace dinls
