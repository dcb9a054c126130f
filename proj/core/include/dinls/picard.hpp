#pragma once

#include <vector>

#include "dinls/grid.hpp"
#include "dinls/model.hpp"

namespace dinls {

/// n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

struct PicardResult {
  Field solution;
  /// ||u^(m)(T) - u^(m-1)(T)||_{L^2} for m = 1..iterations.
  std::vector<double> iterate_distances;
};

/// Duhamel fixed-point iterates
///   u^(0)(t) = e^{it Lap} u0,
///   u^(m+1)(t) = e^{it Lap} u0 - i int_0^t e^{i(t-s) Lap} F(u^(m)(s)) ds,
/// with the time integral done by Gauss-Legendre quadrature at every level
/// (so u^(m) is needed at the nodes of each inner interval, recursively).
///
/// The free flow is LinearPropagator; the centrifugal potential c_N/r^2 of the
/// reduced Laplacian is carried in F together with both power terms, so for
/// N = 3 (c_3 = 0) F is exactly the model nonlinearity.
///
/// Requires T > 0, iterations >= 2, quad_nodes >= 4. Throws NoContraction when
/// an iterate distance grows.
PicardResult picard_solve(const Field& u0, const PdeModel& model, double T, int iterations, int quad_nodes);

}  // namespace dinls
