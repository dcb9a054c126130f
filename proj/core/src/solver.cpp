#include "dinls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dinls/error.hpp"

namespace dinls {

namespace {

bool finite(std::span<const Complex> values) {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double max_abs(std::span<const Complex> values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

void validate(const SolverConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::BadSolverConfig, what); };
  if (!(c.dt0 > 0.0)) fail("dt0 must be positive");
  if (!(c.dt_min > 0.0 && c.dt_min < c.dt0)) fail("need 0 < dt_min < dt0");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) fail("t_end must be finite and >= 0");
  if (!(c.cfl_phase > 0.0 && c.cfl_phase < std::numbers::pi)) fail("cfl_phase must lie in (0, pi)");
  if (!(c.blowup_amp_factor > 1.0)) fail("blowup_amp_factor must exceed 1");
  if (!(c.blowup_grad_factor > 1.0)) fail("blowup_grad_factor must exceed 1");
  if (c.sample_stride < 1) fail("sample_stride must be >= 1");
  if (!(c.c_large > 0.0)) fail("c_large must be positive");
  if (!(c.case_v_epsilon > 0.0)) fail("case_v_epsilon must be positive");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::ReachedTEnd: return "ReachedTEnd";
    case RunStatus::BlowupDetected: return "BlowupDetected";
    case RunStatus::StepUnderflow: return "StepUnderflow";
    case RunStatus::Corrupt: return "Corrupt";
  }
  return "Corrupt";
}

void nonlinear_phase_substep(std::span<Complex> values, const RadialGrid& grid, const PdeModel& model, double dt) {
  if (dt == 0.0) return;
  const auto r = grid.nodes();
  const double centrifugal = grid.centrifugal_constant();
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double a = std::abs(values[j]);
    double rate = centrifugal / (r[j] * r[j]);
    for (const auto& term : model.terms) {
      if (term.coupling == 0.0 || a == 0.0) continue;
      rate += term.coupling * std::pow(r[j], -term.weight) * std::pow(a, term.power);
    }
    if (rate == 0.0) continue;
    values[j] *= std::polar(1.0, -rate * dt);
  }
}

Field nonlinear_phase_substep(const Field& field, const PdeModel& model, double dt) {
  Field out = field;
  nonlinear_phase_substep(out.values(), field.grid(), model, dt);
  return out;
}

double max_phase_rate(std::span<const Complex> values, const RadialGrid& grid, const PdeModel& model) {
  const auto r = grid.nodes();
  double worst = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double a = std::abs(values[j]);
    if (a == 0.0) continue;
    double rate = 0.0;
    for (const auto& term : model.terms) {
      if (term.coupling == 0.0) continue;
      rate += term.coupling * std::pow(r[j], -term.weight) * std::pow(a, term.power);
    }
    worst = std::max(worst, std::abs(rate));
  }
  return worst;
}

SplitStepSolver::SplitStepSolver(GridPtr grid, PdeModel model)
    : grid_(std::move(grid)), model_(std::move(model)), propagator_(grid_) {
  if (model_.dimension != grid_->dimension())
    throw Error(ErrorCode::PreconditionFailed, "model and grid dimensions differ");
}

void SplitStepSolver::step(std::span<Complex> values, double dt) {
  nonlinear_phase_substep(values, *grid_, model_, 0.5 * dt);
  propagator_.apply(values, dt);
  nonlinear_phase_substep(values, *grid_, model_, 0.5 * dt);
}

Field SplitStepSolver::step(const Field& field, double dt) {
  Field out = field;
  step(out.values(), dt);
  out.set_time(field.time() + dt);
  return out;
}

Field step_strang(const Field& field, const PdeModel& model, double dt) {
  SplitStepSolver solver(field.grid_ptr(), model);
  return solver.step(field, dt);
}

RunOutcome run_simulation(const Field& u0, const PdeModel& model, const SolverConfig& config) {
  validate(config);
  if (!u0.is_finite()) throw Error(ErrorCode::NonFiniteSample, "initial data is not finite");

  SplitStepSolver solver(u0.grid_ptr(), model);
  const auto& grid = u0.grid();
  const std::vector<double> mask = config.absorbing_mask ? absorbing_mask(grid) : std::vector<double>{};

  RunOutcome out{RunStatus::ReachedTEnd, 0.0, {}, std::nullopt, std::nullopt, u0};
  Field& u = out.final_state;
  const double t0 = u0.time();
  const double t_end = t0 + config.t_end;

  DiagnosticsSample first = sample_diagnostics(u0, model, 0.0);
  out.diagnostics.push_back(first);
  if (first.tail_fraction > kTailThreshold) ++out.tail_warnings;

  if (model.params) {
    BlowupData data{first.energy, first.mass, first.y, config.c_large, config.case_v_epsilon, first.variance};
    if (first.mass > 0.0) out.initial_verdict = classify_blowup(*model.params, data);
  }

  const double amp0 = first.max_amplitude;
  const double grad0 = std::sqrt(first.kinetic);
  double max_kinetic = first.kinetic;

  auto record = [&](double dt_used) {
    DiagnosticsSample s = sample_diagnostics(u, model, dt_used);
    if (s.tail_fraction > kTailThreshold) ++out.tail_warnings;
    max_kinetic = std::max(max_kinetic, s.kinetic);
    out.diagnostics.push_back(s);
  };

  double t = t0;
  double dt_last = 0.0;
  bool last_sampled = true;
  while (t_end - t > 1e-14 * std::max(1.0, std::abs(t_end))) {
    double dt = config.dt0;
    const double rate = max_phase_rate(u.values(), grid, model);
    if (rate > 0.0) dt = std::min(dt, config.cfl_phase / rate);
    if (dt < config.dt_min) {
      out.status = RunStatus::StepUnderflow;
      break;
    }
    const bool final_step = dt >= (t_end - t) * (1.0 - 1e-9);
    if (final_step) dt = t_end - t;

    solver.step(u.values(), dt);
    if (!mask.empty())
      for (std::size_t j = 0; j < mask.size(); ++j) u[j] *= mask[j];
    t = final_step ? t_end : t + dt;
    u.set_time(t);
    ++out.steps;
    dt_last = dt;
    last_sampled = false;

    if (!finite(u.values())) {
      out.status = RunStatus::Corrupt;
      break;
    }

    const double amp = max_abs(u.values());
    const bool amp_trigger = amp0 > 0.0 && amp > config.blowup_amp_factor * amp0;
    bool grad_trigger = false;
    if (!amp_trigger && grad0 > 0.0) {
      const double k = kinetic(u);
      max_kinetic = std::max(max_kinetic, k);
      grad_trigger = std::sqrt(k) > config.blowup_grad_factor * grad0;
    }
    if (amp_trigger || grad_trigger) {
      record(dt);
      last_sampled = true;
      out.status = RunStatus::BlowupDetected;
      BlowupReport report;
      report.t_detect = t - t0;
      report.trigger = amp_trigger ? "amplitude" : "gradient";
      if (out.initial_verdict && is_blowup(out.initial_verdict->kind)) {
        report.t_bound = out.initial_verdict->t_bound;
        report.blowup_constant = out.initial_verdict->blowup_constant;
      }
      out.blowup_report = report;
      break;
    }

    if (out.steps % config.sample_stride == 0 || final_step) {
      record(dt);
      last_sampled = true;
    }
  }

  if (!last_sampled && out.status != RunStatus::Corrupt) record(dt_last);
  if (out.blowup_report) out.blowup_report->max_kinetic = max_kinetic;
  out.final_time = t - t0;
  if (amp0 > 0.0 && out.status != RunStatus::Corrupt) out.amplitude_growth = max_abs(u.values()) / amp0;
  return out;
}

}  // namespace dinls
