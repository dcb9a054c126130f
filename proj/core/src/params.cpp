#include "dinls/params.hpp"

#include <cmath>

#include "dinls/error.hpp"

namespace dinls {

namespace {

[[noreturn]] void out_of_range(const std::string& inequality, const Number& lhs, const Number& rhs) {
  throw Error(ErrorCode::ExponentOutOfRange,
              inequality + " violated: lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string());
}

void require_less(const std::string& inequality, const Number& lhs, const Number& rhs) {
  if (!less(lhs, rhs)) out_of_range(inequality, lhs, rhs);
}

void require_dimension(int n) {
  if (n < 3 || n > 5)
    throw Error(ErrorCode::DimensionOutOfRange, "N = " + std::to_string(n) + " is outside {3, 4, 5}");
}

Condition evaluate(std::string name, const Number& lhs, std::string_view op, const Number& rhs) {
  bool holds = false;
  if (op == "<") holds = less(lhs, rhs);
  else if (op == "<=") holds = less_equal(lhs, rhs);
  else if (op == ">") holds = less(rhs, lhs);
  else if (op == ">=") holds = less_equal(rhs, lhs);
  return {std::move(name), holds, lhs, rhs};
}

Number real(double v) {
  // Couplings and functionals are plain doubles; integers stay exact so that
  // sign tests on e.g. lambda = -1 compare exactly against zero.
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15) return Number(Rational(static_cast<long long>(v)));
  return Number(v);
}

bool all_hold(const std::vector<Condition>& conds, std::size_t first, std::size_t last) {
  for (std::size_t i = first; i < last; ++i)
    if (!conds[i].holds) return false;
  return true;
}

}  // namespace

Number inhomogeneity_bound(int dimension) {
  return min(Number(2), Number(Rational(6 - dimension, 2)));
}

Number critical_power(const Number& b, int dimension) {
  return (Number(4) - Number(2) * b) / Number(dimension - 2);
}

ProblemParams validate_params(const RawParams& raw) {
  require_dimension(raw.dimension);
  if (raw.lambda1 == 0.0) throw Error(ErrorCode::CouplingZero, "lambda1 must be nonzero");
  if (raw.lambda2 == 0.0) throw Error(ErrorCode::CouplingZero, "lambda2 must be nonzero");
  if (!std::isfinite(raw.lambda1) || !std::isfinite(raw.lambda2))
    throw Error(ErrorCode::CouplingZero, "couplings must be finite");

  const int n = raw.dimension;
  const Number bound = inhomogeneity_bound(n);
  require_less("0 < b1", Number(0), raw.b1);
  require_less("b1 < min{2, (6-N)/2}", raw.b1, bound);
  require_less("0 < b2", Number(0), raw.b2);
  require_less("b2 < min{2, (6-N)/2}", raw.b2, bound);
  require_less("0 < p1", Number(0), raw.p1);
  require_less("p1 < (4-2*b1)/(N-2)", raw.p1, critical_power(raw.b1, n));
  const Number p2_critical = critical_power(raw.b2, n);
  if (!equal(raw.p2, p2_critical)) out_of_range("p2 = (4-2*b2)/(N-2)", raw.p2, p2_critical);

  ProblemParams params;
  params.dimension_ = n;
  params.lambda1_ = raw.lambda1;
  params.lambda2_ = raw.lambda2;
  params.p1_ = raw.p1;
  params.p2_ = raw.p2;
  params.b1_ = raw.b1;
  params.b2_ = raw.b2;
  return params;
}

Number admissibility_defect(const ExponentPair& pair, int dimension) {
  const Number n(dimension);
  return Number(2) / pair.gamma + n / pair.rho - n / Number(2);
}

bool in_admissible_range(const ExponentPair& pair, int dimension) {
  const Number upper = Number(2 * dimension) / Number(dimension - 2);
  return less_equal(Number(2), pair.rho) && less_equal(pair.rho, upper);
}

AdmissiblePair make_admissible(const Number& gamma, const Number& rho, int dimension) {
  require_dimension(dimension);
  ExponentPair pair{gamma, rho};
  const Number defect = admissibility_defect(pair, dimension);
  if (!equal(defect, Number(0)))
    out_of_range("2/gamma + N/rho = N/2", Number(2) / gamma + Number(dimension) / rho,
                 Number(Rational(dimension, 2)));
  if (!in_admissible_range(pair, dimension))
    out_of_range("2 <= rho <= 2N/(N-2)", rho, Number(Rational(2 * dimension, dimension - 2)));
  return AdmissiblePair{pair};
}

AdmissiblePair intercritical_pair(const Number& p, const Number& b, int dimension) {
  require_dimension(dimension);
  const Number n(dimension);
  if (less(b, Number(0))) out_of_range("0 <= b", b, Number(0));
  require_less("b < min{2, N/2}", b, min(Number(2), n / Number(2)));
  require_less("0 < p", Number(0), p);
  if (less(critical_power(b, dimension), p)) out_of_range("p <= (4-2*b)/(N-2)", p, critical_power(b, dimension));
  const Number gamma = Number(4) * (p + Number(2)) / (p * (n - Number(2)) + Number(2) * b);
  const Number rho = n * (p + Number(2)) / (n + p - b);
  return make_admissible(gamma, rho, dimension);
}

Number default_eta() { return Number(Rational(1, 1000)); }

StrichartzExponents wvz_exponents(int dimension, const Number& b2, const Number& eta) {
  require_dimension(dimension);
  require_less("0 < b2", Number(0), b2);
  require_less("b2 < min{2, (6-N)/2}", b2, inhomogeneity_bound(dimension));
  if (less(eta, Number(0))) out_of_range("eta >= 0", eta, Number(0));

  const Number n(dimension);
  const Number two(2);
  const Number scale = n + two - two * b2;  // N + 2 - 2 b2
  StrichartzExponents out;
  out.dimension = dimension;
  out.b2 = b2;
  out.eta = eta;

  const Number w_gamma = two * scale / (n - two);
  const Number w_rho = two * n * scale / (n * n + Number(4) - two * b2 * n);
  const Number v_gamma = two * scale / (n - b2);
  const Number v_rho = two * n * scale / (n * n + two * b2 - two * b2 * n);

  auto perturbed = [&](const Number& gamma, const Number& rho, int sign_gamma, int sign_rho) {
    const Number inv_gamma = Number(1) / gamma + Number(sign_gamma) * eta / two;
    const Number inv_rho = Number(1) / rho + Number(sign_rho) * eta / n;
    return make_admissible(Number(1) / inv_gamma, Number(1) / inv_rho, dimension);
  };

  out.w0 = make_admissible(w_gamma, w_rho, dimension);
  out.w_plus = perturbed(w_gamma, w_rho, -1, +1);
  out.w_minus = perturbed(w_gamma, w_rho, +1, -1);
  out.v0 = make_admissible(v_gamma, v_rho, dimension);
  out.v_plus = perturbed(v_gamma, v_rho, -1, +1);
  out.v_minus = perturbed(v_gamma, v_rho, +1, -1);
  out.z = {w_gamma, two * n * scale / ((n - two * b2) * (n - two))};
  return out;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::GlobalCase1: return "GlobalCase1";
    case Regime::GlobalCase2: return "GlobalCase2";
    case Regime::GlobalCase3: return "GlobalCase3";
    case Regime::BlowupCaseI: return "BlowupCaseI";
    case Regime::BlowupCaseII: return "BlowupCaseII";
    case Regime::BlowupCaseIII: return "BlowupCaseIII";
    case Regime::BlowupCaseIV: return "BlowupCaseIV";
    case Regime::BlowupCaseV: return "BlowupCaseV";
    case Regime::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

bool is_blowup(Regime regime) {
  return regime == Regime::BlowupCaseI || regime == Regime::BlowupCaseII ||
         regime == Regime::BlowupCaseIII || regime == Regime::BlowupCaseIV ||
         regime == Regime::BlowupCaseV;
}

bool is_global(Regime regime) {
  return regime == Regime::GlobalCase1 || regime == Regime::GlobalCase2 ||
         regime == Regime::GlobalCase3;
}

RegimeVerdict classify_global(const ProblemParams& params) {
  const Number zero(0);
  const Number l1 = real(params.lambda1());
  const Number l2 = real(params.lambda2());
  const Number& p1 = params.p1();
  const Number& p2 = params.p2();
  const Number& b1 = params.b1();
  const Number& b2 = params.b2();
  const Number n(params.dimension());
  const Number b1_ceiling = n * (p2 - p1) / (p2 + Number(2));

  RegimeVerdict verdict;
  auto& c = verdict.conditions;
  c.push_back(evaluate("case1: lambda1 > 0", l1, ">", zero));
  c.push_back(evaluate("case1: lambda2 > 0", l2, ">", zero));
  const std::size_t case2 = c.size();
  c.push_back(evaluate("case2: lambda1 > 0", l1, ">", zero));
  c.push_back(evaluate("case2: lambda2 < 0", l2, "<", zero));
  c.push_back(evaluate("case2: p1 < p2", p1, "<", p2));
  c.push_back(evaluate("case2: (p1/p2)*b2 <= b1", p1 / p2 * b2, "<=", b1));
  c.push_back(evaluate("case2: b1 < b2", b1, "<", b2));
  const std::size_t case3 = c.size();
  c.push_back(evaluate("case3: lambda1 > 0", l1, ">", zero));
  c.push_back(evaluate("case3: lambda2 < 0", l2, "<", zero));
  c.push_back(evaluate("case3: b2 < b1", b2, "<", b1));
  c.push_back(evaluate("case3: b1 < N(p2-p1)/(p2+2)", b1, "<", b1_ceiling));
  const std::size_t end = c.size();

  if (all_hold(c, 0, case2)) verdict.kind = Regime::GlobalCase1;
  else if (all_hold(c, case2, case3)) verdict.kind = Regime::GlobalCase2;
  else if (all_hold(c, case3, end)) verdict.kind = Regime::GlobalCase3;
  return verdict;
}

double blowup_constant(const ProblemParams& params, Regime regime, double epsilon) {
  const double n = params.dimension();
  switch (regime) {
    case Regime::BlowupCaseI:
    case Regime::BlowupCaseII:
      return (n * params.p2().value() - 4.0 + 2.0 * params.b2().value()) / 2.0;
    case Regime::BlowupCaseIII:
    case Regime::BlowupCaseIV:
      return (n * params.p1().value() - 4.0 + 2.0 * params.b1().value()) / 2.0;
    case Regime::BlowupCaseV:
      return epsilon;
    default:
      throw Error(ErrorCode::NotABlowupRegime, std::string(to_string(regime)) + " has no blow-up constant");
  }
}

RegimeVerdict classify_blowup(const ProblemParams& params, const BlowupData& data) {
  if (!(data.mass > 0.0))
    throw Error(ErrorCode::NonPositiveMass, "mass must be positive, got " + std::to_string(data.mass));
  if (!(data.c_large > 0.0))
    throw Error(ErrorCode::PreconditionFailed, "C_large must be positive");

  const Number zero(0);
  const Number l1 = real(params.lambda1());
  const Number l2 = real(params.lambda2());
  const Number& p1 = params.p1();
  const Number& p2 = params.p2();
  const Number& b1 = params.b1();
  const Number& b2 = params.b2();
  const Number n(params.dimension());
  const Number b1_ceiling = n * (p2 - p1) / (p2 + Number(2));
  const Number mass_critical = (Number(4) - Number(2) * b1) / n;
  const Number energy(data.energy);
  const Number shifted_energy(data.energy + data.c_large * data.mass);

  RegimeVerdict verdict;
  auto& c = verdict.conditions;
  c.push_back(evaluate("all: lambda2 < 0", l2, "<", zero));
  c.push_back(evaluate("all: y0 > 0", Number(data.y0), ">", zero));
  const std::size_t case_i = c.size();
  c.push_back(evaluate("i: lambda1 > 0", l1, ">", zero));
  c.push_back(evaluate("i: p1 < p2", p1, "<", p2));
  c.push_back(evaluate("i: b1 < b2", b1, "<", b2));
  c.push_back(evaluate("i: E < 0", energy, "<", zero));
  const std::size_t case_ii = c.size();
  c.push_back(evaluate("ii: lambda1 > 0", l1, ">", zero));
  c.push_back(evaluate("ii: b1 < N(p2-p1)/(p2+2)", b1, "<", b1_ceiling));
  c.push_back(evaluate("ii: E < 0", energy, "<", zero));
  const std::size_t case_iii = c.size();
  c.push_back(evaluate("iii: lambda1 < 0", l1, "<", zero));
  c.push_back(evaluate("iii: (4-2*b1)/N < p1", mass_critical, "<", p1));
  c.push_back(evaluate("iii: p1 < p2", p1, "<", p2));
  c.push_back(evaluate("iii: b1 < b2", b1, "<", b2));
  c.push_back(evaluate("iii: E < 0", energy, "<", zero));
  const std::size_t case_iv = c.size();
  c.push_back(evaluate("iv: lambda1 < 0", l1, "<", zero));
  c.push_back(evaluate("iv: (4-2*b1)/N < p1", mass_critical, "<", p1));
  c.push_back(evaluate("iv: b1 < N(p2-p1)/(p2+2)", b1, "<", b1_ceiling));
  c.push_back(evaluate("iv: E < 0", energy, "<", zero));
  const std::size_t case_v = c.size();
  c.push_back(evaluate("v: lambda1 < 0", l1, "<", zero));
  c.push_back(evaluate("v: p1 < p2", p1, "<", p2));
  c.push_back(evaluate("v: (p1*b2)/p2 <= b1", p1 * b2 / p2, "<=", b1));
  c.push_back(evaluate("v: b1 <= b2", b1, "<=", b2));
  c.push_back(evaluate("v: E + C*M < 0", shifted_energy, "<", zero));
  const std::size_t end = c.size();

  if (all_hold(c, 0, case_i)) {
    if (all_hold(c, case_i, case_ii)) verdict.kind = Regime::BlowupCaseI;
    else if (all_hold(c, case_ii, case_iii)) verdict.kind = Regime::BlowupCaseII;
    else if (all_hold(c, case_iii, case_iv)) verdict.kind = Regime::BlowupCaseIII;
    else if (all_hold(c, case_iv, case_v)) verdict.kind = Regime::BlowupCaseIV;
    else if (all_hold(c, case_v, end)) verdict.kind = Regime::BlowupCaseV;
  }

  if (is_blowup(verdict.kind)) {
    const double constant = blowup_constant(params, verdict.kind, data.epsilon);
    verdict.blowup_constant = constant;
    if (data.variance) verdict.t_bound = *data.variance / (constant * data.y0);
  }
  return verdict;
}

}  // namespace dinls
