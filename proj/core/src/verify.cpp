#include "dinls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dinls/error.hpp"
#include "dinls/observables.hpp"

namespace dinls {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::GaussianWidthSweep: return "gaussian_width_sweep";
    case FamilyKind::AmplitudeSweep: return "amplitude_sweep";
    case FamilyKind::RandomSmoothSuperposition: return "random_superposition";
    case FamilyKind::ScalingFamily: return "scaling";
  }
  return "unknown";
}

std::string_view to_string(InterpolationHypothesis h) {
  switch (h) {
    case InterpolationHypothesis::None: return "none";
    case InterpolationHypothesis::First: return "i";
    case InterpolationHypothesis::Second: return "ii";
  }
  return "unknown";
}

TestFunctionFamily TestFunctionFamily::gaussian_width_sweep(double w_min, double w_max, int count, double mass) {
  if (!(w_min > 0.0 && w_max > w_min) || count < 2 || !(mass > 0.0))
    throw Error(ErrorCode::PreconditionFailed, "width sweep needs 0 < w_min < w_max, count >= 2, mass > 0");
  TestFunctionFamily f;
  f.kind = FamilyKind::GaussianWidthSweep;
  f.mass = mass;
  const double ratio = std::log(w_max / w_min);
  for (int i = 0; i < count; ++i) f.parameters.push_back(w_min * std::exp(ratio * i / (count - 1)));
  return f;
}

TestFunctionFamily TestFunctionFamily::amplitude_sweep(std::vector<double> amplitudes, double width) {
  TestFunctionFamily f;
  f.kind = FamilyKind::AmplitudeSweep;
  f.parameters = std::move(amplitudes);
  f.base_width = width;
  return f;
}

TestFunctionFamily TestFunctionFamily::random_superposition(std::uint64_t seed, int count, int components) {
  if (count < 1 || components < 1)
    throw Error(ErrorCode::PreconditionFailed, "random family needs count >= 1 and components >= 1");
  TestFunctionFamily f;
  f.kind = FamilyKind::RandomSmoothSuperposition;
  f.seed = seed;
  f.count = count;
  f.components = components;
  return f;
}

TestFunctionFamily TestFunctionFamily::scaling(std::vector<double> factors, double width) {
  TestFunctionFamily f;
  f.kind = FamilyKind::ScalingFamily;
  f.parameters = std::move(factors);
  f.base_width = width;
  return f;
}

namespace {

Field gaussian(const GridPtr& grid, double amplitude, double width) {
  const auto r = grid->nodes();
  std::vector<Complex> u(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double s = r[j] / width;
    u[j] = amplitude * std::exp(-s * s);
  }
  return Field(grid, std::move(u));
}

}  // namespace

std::vector<FamilyMember> generate_family(const TestFunctionFamily& family, const GridPtr& grid) {
  std::vector<FamilyMember> members;
  const int n = grid->dimension();
  switch (family.kind) {
    case FamilyKind::GaussianWidthSweep:
      for (double w : family.parameters) {
        if (!(w > 0.0)) throw Error(ErrorCode::PreconditionFailed, "Gaussian width must be positive");
        // Normalise on the grid so the quadrature mass is exactly the target.
        Field unit = gaussian(grid, 1.0, w);
        const double m = mass(unit);
        if (!(m > 0.0)) throw Error(ErrorCode::PreconditionFailed, "width not resolved by the grid");
        members.push_back({1.0 / w, gaussian(grid, std::sqrt(family.mass / m), w)});
      }
      break;
    case FamilyKind::AmplitudeSweep:
      for (double a : family.parameters) members.push_back({a, gaussian(grid, a, family.base_width)});
      break;
    case FamilyKind::ScalingFamily:
      for (double l : family.parameters) {
        if (!(l > 0.0)) throw Error(ErrorCode::PreconditionFailed, "scaling factor must be positive");
        members.push_back({l, gaussian(grid, std::pow(l, 0.5 * n), family.base_width / l)});
      }
      break;
    case FamilyKind::RandomSmoothSuperposition: {
      std::mt19937_64 rng(family.seed);
      std::uniform_real_distribution<double> amp(0.2, 1.0), width(0.5, 2.0),
          phase(0.0, 2.0 * std::numbers::pi);
      const auto r = grid->nodes();
      for (int i = 0; i < family.count; ++i) {
        std::vector<Complex> u(r.size());
        for (int k = 0; k < family.components; ++k) {
          const double a = amp(rng), w = width(rng), th = phase(rng);
          const Complex c = std::polar(a, th);
          for (std::size_t j = 0; j < r.size(); ++j) {
            const double s = r[j] / w;
            u[j] += c * std::exp(-s * s);
          }
        }
        members.push_back({static_cast<double>(i), Field(grid, std::move(u))});
      }
      break;
    }
  }
  std::stable_sort(members.begin(), members.end(),
                   [](const FamilyMember& a, const FamilyMember& b) { return a.concentration < b.concentration; });
  return members;
}

InterpolationHypothesis interpolation_hypothesis(const ProblemParams& params) {
  const Number& p1 = params.p1();
  const Number& p2 = params.p2();
  const Number& b1 = params.b1();
  const Number& b2 = params.b2();
  if (less(p1, p2) && less_equal(p1 / p2 * b2, b1) && less_equal(b1, b2)) return InterpolationHypothesis::First;
  const Number upper = Number(params.dimension()) * (p2 - p1) / (p2 + Number(2));
  if (less(b2, b1) && less(b1, upper)) return InterpolationHypothesis::Second;
  return InterpolationHypothesis::None;
}

double interpolation_residual(const Field& u, const ProblemParams& params, double eta) {
  return weighted_norm(u, params.p1().value() + 2.0, params.b1().value()) -
         eta * weighted_norm(u, params.p2().value() + 2.0, params.b2().value());
}

namespace {

void finish_slice(MassSlice& slice) {
  double sup = -std::numeric_limits<double>::infinity();
  for (auto& s : slice.samples) {
    sup = std::max(sup, s.residual);
    s.running_sup = sup;
  }
  slice.sup_residual = sup;
  const double lo = slice.samples.front().concentration;
  const double hi = slice.samples.back().concentration;
  slice.decades = lo > 0.0 ? std::log10(hi / lo) : 0.0;

  // Running sup just before the final decade versus the overall sup.
  const double cut = hi / 10.0;
  std::optional<double> before;
  for (const auto& s : slice.samples)
    if (s.concentration < cut) before = s.running_sup;
  if (!before || !std::isfinite(sup)) {
    slice.final_decade_increase = std::numeric_limits<double>::infinity();
  } else if (sup <= *before) {
    slice.final_decade_increase = 0.0;
  } else {
    const double scale = std::max(std::abs(*before), std::numeric_limits<double>::min());
    slice.final_decade_increase = (sup - *before) / scale;
  }
  slice.stabilized = std::isfinite(sup) && slice.final_decade_increase < kSupStabilityTolerance;
}

}  // namespace

InterpolationReport check_interpolation(const ProblemParams& params, double eta, const TestFunctionFamily& family,
                                        const GridPtr& grid, bool exploratory) {
  if (!(eta > 0.0)) throw Error(ErrorCode::PreconditionFailed, "eta must be positive");
  if (grid->dimension() != params.dimension())
    throw Error(ErrorCode::PreconditionFailed, "grid and parameter dimensions differ");

  InterpolationReport report;
  report.hypothesis = interpolation_hypothesis(params);
  report.eta = eta;
  if (report.hypothesis == InterpolationHypothesis::None) {
    if (!exploratory)
      throw Error(ErrorCode::HypothesisNotSatisfied,
                  "exponents satisfy neither interpolation hypothesis; rerun in exploratory mode");
    report.exploratory = true;
  }

  const double p1 = params.p1().value() + 2.0, b1 = params.b1().value();
  const double p2 = params.p2().value() + 2.0, b2 = params.b2().value();
  for (const auto& member : generate_family(family, grid)) {
    InterpolationSample s;
    s.concentration = member.concentration;
    s.mass = mass(member.field);
    s.wn1 = weighted_norm(member.field, p1, b1);
    s.wn2 = weighted_norm(member.field, p2, b2);
    s.residual = s.wn1 - eta * s.wn2;
    auto slice = std::find_if(report.slices.begin(), report.slices.end(), [&](const MassSlice& m) {
      return std::abs(m.mass - s.mass) <= 1e-6 * std::max(m.mass, s.mass);
    });
    if (slice == report.slices.end()) {
      report.slices.push_back({});
      slice = std::prev(report.slices.end());
      slice->mass = s.mass;
    }
    slice->samples.push_back(s);
  }

  report.pass = !report.exploratory && !report.slices.empty();
  for (auto& slice : report.slices) {
    finish_slice(slice);
    report.pass = report.pass && slice.stabilized;
  }
  return report;
}

KineticReport check_kinetic_bound(const ProblemParams& params, const Field& u0, const SolverConfig& config) {
  KineticReport report;
  report.verdict = classify_global(params);
  if (report.verdict.kind == Regime::Unclassified)
    throw Error(ErrorCode::HypothesisNotSatisfied, "parameters fall in none of the global-existence cases");

  const PdeModel model = PdeModel::from_params(params);
  RunOutcome run = run_simulation(u0, model, config);
  report.status = run.status;
  report.final_time = run.final_time;
  report.diagnostics = std::move(run.diagnostics);
  const auto& series = report.diagnostics;
  if (series.empty()) return report;

  const double e0 = series.front().energy;
  const double a1 = params.lambda1() / (params.p1().value() + 2.0);
  const double a2 = params.lambda2() / (params.p2().value() + 2.0);
  report.initial_kinetic = series.front().kinetic;
  report.identity_ok = true;
  for (const auto& s : series) {
    report.sup_kinetic = std::max(report.sup_kinetic, s.kinetic);
    const double drift = std::abs(s.energy - e0);
    const double residual = std::abs(0.5 * s.kinetic - (e0 - a1 * s.weighted_norm_1 - a2 * s.weighted_norm_2));
    report.energy_drifts.push_back(drift);
    report.identity_residuals.push_back(residual);
    report.max_energy_drift = std::max(report.max_energy_drift, drift);
    const double roundoff = 1e-12 * (std::abs(e0) + s.kinetic + std::abs(a1) * s.weighted_norm_1 +
                                     std::abs(a2) * s.weighted_norm_2);
    if (!(residual <= 2.0 * drift + roundoff)) report.identity_ok = false;
  }
  if (report.initial_kinetic > 0.0) report.kinetic_ratio = report.sup_kinetic / report.initial_kinetic;

  const double half = 0.5 * (series.front().t + series.back().t);
  double sup_first = 0.0;
  for (const auto& s : series)
    if (s.t <= half) sup_first = std::max(sup_first, s.kinetic);
  report.final_half_increase = sup_first > 0.0 ? (report.sup_kinetic - sup_first) / sup_first : 0.0;
  return report;
}

double relative_l2(const Field& a, const Field& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "fields live on different grids");
  const auto w = b.grid().weights();
  double diff = 0.0, ref = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    diff += std::norm(a[j] - b[j]) * w[j];
    ref += std::norm(b[j]) * w[j];
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

Field free_gaussian(const GridPtr& grid, double t) {
  const auto r = grid->nodes();
  const Complex z(1.0, 4.0 * t);
  const Complex prefactor = std::pow(z, -0.5 * grid->dimension());
  std::vector<Complex> u(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) u[j] = prefactor * std::exp(-r[j] * r[j] / z);
  return Field(grid, std::move(u), t);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::PreconditionFailed, "slope needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const Field& u0, const PdeModel& model, double t_end,
                                    const std::vector<double>& dt_list, const std::optional<Field>& exact) {
  if (dt_list.size() < 3) throw Error(ErrorCode::PreconditionFailed, "convergence study needs >= 3 time steps");
  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    if (!(dt_list[i] > 0.0)) throw Error(ErrorCode::PreconditionFailed, "time steps must be positive");
    if (i > 0 && !(dt_list[i] < dt_list[i - 1]))
      throw Error(ErrorCode::PreconditionFailed, "time steps must be strictly decreasing");
  }
  if (!(t_end > 0.0)) throw Error(ErrorCode::PreconditionFailed, "t_end must be positive");

  ConvergenceReport report;
  SplitStepSolver solver(u0.grid_ptr(), model);
  const double e0 = energy(u0, model);
  for (double dt : dt_list) {
    const long steps = std::max(1L, std::lround(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    std::vector<Complex> u(u0.values().begin(), u0.values().end());
    double drift = 0.0;
    for (long n = 0; n < steps; ++n) {
      solver.step(u, h);
      const double e = energy(Field(u0.grid_ptr(), u), model);
      drift = std::max(drift, std::abs(e - e0));
    }
    if (e0 != 0.0) drift /= std::abs(e0);
    report.rows.push_back({h, steps, 0.0, std::nullopt, drift, Field(u0.grid_ptr(), std::move(u), u0.time() + t_end)});
  }

  const Field& reference = report.rows.back().final_state;
  std::vector<double> dts, errs, errs_exact, drifts;
  for (auto& row : report.rows) {
    row.error_vs_reference = relative_l2(row.final_state, reference);
    if (exact) row.error_vs_analytic = relative_l2(row.final_state, *exact);
  }
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    dts.push_back(report.rows[i].dt);
    errs.push_back(report.rows[i].error_vs_reference);
  }
  report.fitted_order = log_log_slope(dts, errs);

  std::vector<double> all_dts;
  for (const auto& row : report.rows) {
    all_dts.push_back(row.dt);
    drifts.push_back(std::max(row.energy_drift, std::numeric_limits<double>::min()));
    if (exact) errs_exact.push_back(std::max(*row.error_vs_analytic, std::numeric_limits<double>::min()));
  }
  report.fitted_energy_order = log_log_slope(all_dts, drifts);
  if (exact) report.fitted_order_analytic = log_log_slope(all_dts, errs_exact);
  return report;
}

}  // namespace dinls
