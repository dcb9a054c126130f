#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dinls/number.hpp"

namespace dinls {

/// Unvalidated parameter tuple, as read from a config file or flags.
struct RawParams {
  int dimension = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Number p1, p2, b1, b2;
};

/// Parameter tuple (N, lambda1, lambda2, p1, p2, b1, b2) of the double-power
/// inhomogeneous NLS. Only validate_params() constructs one, so every instance
/// satisfies the constraint region:
///   N in {3,4,5}, lambda_i != 0, 0 < b_i < min{2, (6-N)/2},
///   0 < p1 < (4-2b1)/(N-2), p2 = (4-2b2)/(N-2).
class ProblemParams {
 public:
  int dimension() const noexcept { return dimension_; }
  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }
  const Number& p1() const noexcept { return p1_; }
  const Number& p2() const noexcept { return p2_; }
  const Number& b1() const noexcept { return b1_; }
  const Number& b2() const noexcept { return b2_; }

  RawParams raw() const { return {dimension_, lambda1_, lambda2_, p1_, p2_, b1_, b2_}; }

 private:
  friend ProblemParams validate_params(const RawParams& raw);
  ProblemParams() = default;

  int dimension_ = 3;
  double lambda1_ = 1.0;
  double lambda2_ = 1.0;
  Number p1_, p2_, b1_, b2_;
};

/// Throws Error with DimensionOutOfRange, CouplingZero or ExponentOutOfRange;
/// the message names the violated inequality and both of its sides.
ProblemParams validate_params(const RawParams& raw);

/// min{2, (6-N)/2}: the open upper bound on b1, b2.
Number inhomogeneity_bound(int dimension);
/// (4-2b)/(N-2): the energy-critical power for weight exponent b.
Number critical_power(const Number& b, int dimension);

/// Exponent pair (gamma, rho) for a space-time norm L^gamma_t L^rho_x.
struct ExponentPair {
  Number gamma;
  Number rho;
};

/// Schrodinger-admissible pair: 2/gamma + N/rho = N/2 and 2 <= rho <= 2N/(N-2).
struct AdmissiblePair : ExponentPair {};

/// 2/gamma + N/rho - N/2, exact when both exponents are exact.
Number admissibility_defect(const ExponentPair& pair, int dimension);
/// 2 <= rho <= 2N/(N-2) (equivalently gamma >= 2 on the admissible line).
bool in_admissible_range(const ExponentPair& pair, int dimension);
/// Checks both admissibility conditions; throws ExponentOutOfRange otherwise.
AdmissiblePair make_admissible(const Number& gamma, const Number& rho, int dimension);

/// (gamma_b, rho_b) = (4(p+2)/(p(N-2)+2b), N(p+2)/(N+p-b)) for
/// 0 < p <= (4-2b)/(N-2), 0 <= b < min{2, N/2}. The closed ends admit the
/// critical power and the homogeneous case; both still give admissible pairs.
AdmissiblePair intercritical_pair(const Number& p, const Number& b, int dimension);

/// Default offset for the perturbed pairs: 1/gamma^± = 1/gamma ± eta/2,
/// 1/rho^± = 1/rho ± eta/N.
Number default_eta();

/// Exponents of the W, V and Z space-time norms built on the critical term.
/// plus/minus follow the W^± convention: W^+ uses (gamma^-, rho^+) and
/// W^- uses (gamma^+, rho^-), both admissible.
struct StrichartzExponents {
  int dimension = 3;
  Number b2;
  Number eta;
  AdmissiblePair w0, w_plus, w_minus;
  AdmissiblePair v0, v_plus, v_minus;
  /// Z sits on the H^1-scaling line 2/gamma + N/rho = N/2 - 1 (rho is the
  /// Sobolev partner of W0's rho), so it is not L^2-admissible.
  ExponentPair z;
};

StrichartzExponents wvz_exponents(int dimension, const Number& b2, const Number& eta = default_eta());

enum class Regime {
  GlobalCase1,
  GlobalCase2,
  GlobalCase3,
  BlowupCaseI,
  BlowupCaseII,
  BlowupCaseIII,
  BlowupCaseIV,
  BlowupCaseV,
  Unclassified,
};

std::string_view to_string(Regime regime);
bool is_blowup(Regime regime);
bool is_global(Regime regime);

/// One evaluated inequality, e.g. {"case2: (p1/p2)*b2 <= b1", true, 1/6, 2/5}.
struct Condition {
  std::string name;
  bool holds = false;
  Number lhs;
  Number rhs;
};

struct RegimeVerdict {
  Regime kind = Regime::Unclassified;
  std::vector<Condition> conditions;
  /// Blow-up verdicts only: c in y'(t) >= c ||grad u||^2.
  std::optional<double> blowup_constant;
  /// Blow-up verdicts with a known variance: ||x u0||^2 / (c y0).
  std::optional<double> t_bound;
};

/// First matching global well-posedness case in listed order (1), (2), (3);
/// conditions of all cases are recorded.
RegimeVerdict classify_global(const ProblemParams& params);

struct BlowupData {
  double energy = 0.0;
  double mass = 0.0;
  double y0 = 0.0;
  /// Constant C of case v (E + C M < 0); must be positive.
  double c_large = 1.0;
  /// Margin used as c for case v.
  double epsilon = 0.05;
  /// ||x u0||^2, when known, to evaluate the blow-up time bound.
  std::optional<double> variance;
};

/// First matching finite-time blow-up case among i..v; all require
/// lambda2 < 0 and y0 > 0. Throws NonPositiveMass when mass <= 0.
RegimeVerdict classify_blowup(const ProblemParams& params, const BlowupData& data);

/// c = (N p2 - 4 + 2 b2)/2 for cases i/ii, (N p1 - 4 + 2 b1)/2 for iii/iv,
/// epsilon for case v. Throws NotABlowupRegime for non blow-up regimes.
double blowup_constant(const ProblemParams& params, Regime regime, double epsilon);

}  // namespace dinls
