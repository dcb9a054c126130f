#pragma once

#include <array>
#include <optional>

#include "dinls/params.hpp"

namespace dinls {

/// One nonlinearity lambda |x|^{-b} |u|^p u.
struct PowerTerm {
  double coupling = 0.0;
  double power = 1.0;
  double weight = 0.0;
};

/// The right-hand side that the numerics evolve and measure:
///   i u_t + Lap u = sum_k lambda_k |x|^{-b_k} |u|^{p_k} u.
///
/// Built from validated ProblemParams for physical runs. linear() and
/// with_couplings() give the zero-coupling and rescaled variants used by the
/// free-propagator oracles; those carry no ProblemParams.
struct PdeModel {
  int dimension = 3;
  std::array<PowerTerm, 2> terms{};
  std::optional<ProblemParams> params;

  static PdeModel from_params(const ProblemParams& p) {
    PdeModel m;
    m.dimension = p.dimension();
    m.terms[0] = {p.lambda1(), p.p1().value(), p.b1().value()};
    m.terms[1] = {p.lambda2(), p.p2().value(), p.b2().value()};
    m.params = p;
    return m;
  }

  static PdeModel linear(int dimension) {
    PdeModel m;
    m.dimension = dimension;
    return m;
  }

  /// Same powers and weights with replaced couplings (drops the params link).
  PdeModel with_couplings(double lambda1, double lambda2) const {
    PdeModel m = *this;
    m.terms[0].coupling = lambda1;
    m.terms[1].coupling = lambda2;
    m.params.reset();
    return m;
  }

  bool is_linear() const { return terms[0].coupling == 0.0 && terms[1].coupling == 0.0; }
};

}  // namespace dinls
