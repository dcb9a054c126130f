#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "dinls/grid.hpp"
#include "dinls/model.hpp"
#include "dinls/observables.hpp"
#include "dinls/params.hpp"
#include "dinls/propagator.hpp"

namespace dinls {

struct SolverConfig {
  double dt0 = 1e-3;
  double dt_min = 1e-10;
  double t_end = 1.0;
  /// Largest phase rotation (radians) the nonlinear substep may apply per step.
  double cfl_phase = 0.1;
  double blowup_amp_factor = 1e3;
  double blowup_grad_factor = 1e3;
  bool absorbing_mask = false;
  int sample_stride = 10;
  /// C of blow-up case v and its margin epsilon, used for the T_bound report.
  double c_large = 1.0;
  double case_v_epsilon = 0.05;
};

/// dt_min < dt0, factors > 1, cfl_phase in (0, pi), sample_stride >= 1,
/// t_end >= 0. Throws BadSolverConfig.
void validate(const SolverConfig& config);

enum class RunStatus { ReachedTEnd, BlowupDetected, StepUnderflow, Corrupt };
std::string_view to_string(RunStatus status);

struct BlowupReport {
  double t_detect = 0.0;
  /// ||x u0||^2 / (c y0), present when u0 falls in a blow-up case.
  std::optional<double> t_bound;
  std::optional<double> blowup_constant;
  double max_kinetic = 0.0;
  /// "amplitude" or "gradient".
  std::string_view trigger;
};

struct RunOutcome {
  RunStatus status = RunStatus::ReachedTEnd;
  double final_time = 0.0;
  DiagnosticsSeries diagnostics;
  std::optional<BlowupReport> blowup_report;
  /// Blow-up classification of u0 (only when the model carries ProblemParams).
  std::optional<RegimeVerdict> initial_verdict;
  Field final_state;
  long steps = 0;
  /// Samples whose outermost cell held more than kTailThreshold of the variance.
  int tail_warnings = 0;
  /// Amplitude growth max|u| / max|u0| at the end of the run.
  double amplitude_growth = 1.0;
};

/// u_j <- u_j exp(-i [sum_k lambda_k r_j^{-b_k} |u_j|^{p_k} + c_N / r_j^2] dt).
/// |u_j| is unchanged exactly.
void nonlinear_phase_substep(std::span<Complex> values, const RadialGrid& grid, const PdeModel& model, double dt);
Field nonlinear_phase_substep(const Field& field, const PdeModel& model, double dt);

/// max_j |sum_k lambda_k r_j^{-b_k} |u_j|^{p_k}|, the nonlinear phase rate that
/// limits the adaptive step. The linear centrifugal rate is excluded.
double max_phase_rate(std::span<const Complex> values, const RadialGrid& grid, const PdeModel& model);

/// Second-order Strang composition: half phase, full linear, half phase.
class SplitStepSolver {
 public:
  SplitStepSolver(GridPtr grid, PdeModel model);

  void step(std::span<Complex> values, double dt);
  Field step(const Field& field, double dt);

  const PdeModel& model() const noexcept { return model_; }
  const GridPtr& grid() const noexcept { return grid_; }
  LinearPropagator& propagator() noexcept { return propagator_; }

 private:
  GridPtr grid_;
  PdeModel model_;
  LinearPropagator propagator_;
};

Field step_strang(const Field& field, const PdeModel& model, double dt);

/// Adaptive Strang integration from u0 to config.t_end.
///
/// dt_n = min(dt0, cfl_phase / max_phase_rate, t_end - t). Diagnostics are
/// sampled at t = 0, every sample_stride steps and at the final time.
/// Stops with BlowupDetected once max|u| or ||grad u|| exceeds its factor times
/// the initial value, StepUnderflow when dt_n < dt_min, Corrupt on NaN/Inf.
RunOutcome run_simulation(const Field& u0, const PdeModel& model, const SolverConfig& config);

}  // namespace dinls
