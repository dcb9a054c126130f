#include "run.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "dinls/error.hpp"
#include "dinls/initial_data.hpp"
#include "dinls/picard.hpp"
#include "dinls/snapshot.hpp"

namespace dinls::app {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

ojson number_json(const Number& x) { return x.to_string(); }

ojson pair_json(const ExponentPair& pr, int dimension) {
  return {{"gamma", number_json(pr.gamma)},
          {"rho", number_json(pr.rho)},
          {"defect", number_json(admissibility_defect(pr, dimension))},
          {"in_range", in_admissible_range(pr, dimension)}};
}

std::string csv_config_line(const ExperimentConfig& config) { return "# config: " + to_json(config).dump() + "\n"; }

std::string diagnostics_csv(const ExperimentConfig& config, const DiagnosticsSeries& series) {
  std::ostringstream out;
  out << csv_config_line(config);
  write_diagnostics_csv(out, series);
  return out.str();
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

struct Setup {
  GridPtr grid;
  PdeModel model;
  std::optional<ProblemParams> params;
};

Setup make_setup(const ExperimentConfig& config) {
  Setup s;
  s.grid = make_radial_grid(config.grid.dimension, config.grid.radius, config.grid.points);
  if (config.params) s.params = validate_params(*config.params);
  s.model = (config.linear || !s.params) ? PdeModel::linear(config.grid.dimension) : PdeModel::from_params(*s.params);
  return s;
}

Field make_initial(const ExperimentConfig& config, const Setup& setup, ojson& summary) {
  const auto& id = config.initial_data;
  if (id.kind == "snapshot") {
    const fs::path path = resolve_path(config, id.snapshot);
    Field u0 = [&] {
      if (path.extension() == ".csv") {
        std::ifstream in(path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
        return read_snapshot_csv(in, setup.grid);
      }
      return load_snapshot(path.string());
    }();
    const auto& g = u0.grid();
    if (g.dimension() != config.grid.dimension || g.size() != config.grid.points ||
        g.radius() != config.grid.radius)
      throw Error(ErrorCode::ValidationError, "snapshot grid differs from [grid]");
    // Keep one grid instance for every field of the run.
    Field rebased(setup.grid, std::vector<Complex>(u0.values().begin(), u0.values().end()), 0.0);
    summary["initial_data_source"] = path.generic_string();
    return rebased;
  }
  double amplitude = id.amplitude;
  if (id.zero_energy_factor) {
    const double a_star = zero_energy_amplitude(setup.grid, setup.model, id.width, id.chirp, 1e-3, 20.0);
    amplitude = *id.zero_energy_factor * a_star;
    summary["zero_energy_amplitude"] = a_star;
  }
  summary["amplitude_used"] = amplitude;
  return chirped_gaussian(setup.grid, amplitude, id.width, id.chirp);
}

ojson observables_json(const Field& u, const PdeModel& model) {
  const auto d = sample_diagnostics(u, model);
  return {{"mass", d.mass},          {"energy", d.energy},     {"kinetic", d.kinetic}, {"variance", d.variance},
          {"y", d.y},                {"wn1", d.weighted_norm_1}, {"wn2", d.weighted_norm_2},
          {"max_amplitude", d.max_amplitude}};
}

void write_snapshot(const ExperimentConfig& config, const fs::path& dir, const Field& field, ojson& summary) {
  const auto& fmt = config.outputs.snapshot_format;
  if (fmt == "none") return;
  std::ostringstream out;
  fs::path name;
  if (fmt == "binary") {
    write_snapshot_binary(out, field);
    name = "final_state.bin";
  } else {
    write_snapshot_csv(out, field);
    name = "final_state.csv";
  }
  write_atomic(dir / name, out.str());
  summary["final_state"] = name.generic_string();
}

ojson base_summary(const ExperimentConfig& config) {
  ojson j;
  j["mode"] = std::string(to_string(config.mode));
  j["config"] = to_json(config);
  return j;
}

RunResult finish(const fs::path& dir, ojson summary, int code) {
  summary["exit_code"] = code;
  write_atomic(dir / "summary.json", dump(summary));
  return {code, std::move(summary)};
}

bool is_unit_gaussian(const InitialDataSpec& id) {
  return id.kind == "gaussian" && !id.zero_energy_factor && id.amplitude == 1.0 && id.width == 1.0 &&
         id.chirp == 0.0;
}

RunResult run_simulate(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const Field u0 = make_initial(config, setup, summary);
  summary["initial"] = observables_json(u0, setup.model);
  if (setup.params && !config.linear) summary["global_verdict"] = to_json(classify_global(*setup.params));

  const RunOutcome out = run_simulation(u0, setup.model, config.solver);
  if (setup.model.is_linear() && is_unit_gaussian(config.initial_data))
    summary["relative_l2_vs_analytic"] = relative_l2(out.final_state, free_gaussian(setup.grid, out.final_time));
  summary["status"] = std::string(to_string(out.status));
  summary["final_time"] = out.final_time;
  summary["steps"] = out.steps;
  summary["samples"] = out.diagnostics.size();
  summary["tail_warnings"] = out.tail_warnings;
  summary["amplitude_growth"] = out.amplitude_growth;
  if (out.initial_verdict) summary["initial_verdict"] = to_json(*out.initial_verdict);
  if (out.blowup_report) {
    const auto& b = *out.blowup_report;
    ojson r{{"t_detect", b.t_detect}, {"trigger", std::string(b.trigger)}, {"max_kinetic", b.max_kinetic}};
    if (b.blowup_constant) r["blowup_constant"] = *b.blowup_constant;
    if (b.t_bound) {
      r["t_bound"] = *b.t_bound;
      r["t_detect_within_bound"] = b.t_detect <= *b.t_bound;
    }
    summary["blowup"] = r;
  }
  write_atomic(dir / "diagnostics.csv", diagnostics_csv(config, out.diagnostics));
  summary["diagnostics"] = "diagnostics.csv";
  write_snapshot(config, dir, out.final_state, summary);

  log << "simulate: " << to_string(out.status) << " at t = " << out.final_time << " after " << out.steps
      << " steps\n";
  int code = kExitOk;
  if (out.status == RunStatus::BlowupDetected) code = kExitBlowup;
  if (out.status == RunStatus::Corrupt) code = kExitError;
  return finish(dir, std::move(summary), code);
}

RunResult run_classify(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const RegimeVerdict global = classify_global(*setup.params);
  summary["global_verdict"] = to_json(global);

  const Field u0 = make_initial(config, setup, summary);
  const auto d = sample_diagnostics(u0, setup.model);
  summary["initial"] = observables_json(u0, setup.model);
  const BlowupData data{d.energy, d.mass, d.y, config.solver.c_large, config.solver.case_v_epsilon, d.variance};
  const RegimeVerdict blowup = classify_blowup(*setup.params, data);
  summary["blowup_verdict"] = to_json(blowup);

  const Regime regime = global.kind != Regime::Unclassified ? global.kind : blowup.kind;
  summary["regime"] = std::string(to_string(regime));
  log << "global: " << to_string(global.kind) << "\nblow-up: " << to_string(blowup.kind) << "\n";
  return finish(dir, std::move(summary), regime == Regime::Unclassified ? kExitUnclassified : kExitOk);
}

RunResult run_exponents(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  ojson summary = base_summary(config);
  const int n = config.exponents.dimension.value_or(config.params ? config.params->dimension : config.grid.dimension);
  const Number p = Number::parse(config.exponents.p);
  const Number b = Number::parse(config.exponents.b);
  const Number eta = Number::parse(config.exponents.eta);
  const AdmissiblePair pair = intercritical_pair(p, b, n);
  summary["N"] = n;
  summary["intercritical"] = pair_json(pair, n);
  const Number defect = admissibility_defect(pair, n);
  log << "(" << pair.gamma.to_string() << ", " << pair.rho.to_string() << ")\n"
      << "2/gamma + N/rho - N/2 = " << defect.to_string() << "\n"
      << "admissible: " << (equal(defect, Number(0)) && in_admissible_range(pair, n) ? "yes" : "no") << "\n";

  // W/V/Z pairs are built on the critical weight b2.
  const Number b2 = config.params ? config.params->b2 : b;
  try {
    summary["wvz"] = to_json(wvz_exponents(n, b2, eta));
  } catch (const Error& e) {
    summary["wvz"] = nullptr;
    summary["wvz_error"] = e.what();
  }
  return finish(dir, std::move(summary), kExitOk);
}

TestFunctionFamily make_family(const ExperimentConfig& config) {
  const auto& v = config.verify;
  const auto need_values = [&] {
    if (v.values.empty()) throw Error(ErrorCode::ValidationError, "verify.values is empty for family " + v.family);
  };
  if (v.family == "amplitude_sweep") {
    need_values();
    return TestFunctionFamily::amplitude_sweep(v.values, config.initial_data.width);
  }
  if (v.family == "scaling") {
    need_values();
    return TestFunctionFamily::scaling(v.values, config.initial_data.width);
  }
  if (v.family == "random_superposition")
    return TestFunctionFamily::random_superposition(config.seed, v.count, v.components);
  return TestFunctionFamily::gaussian_width_sweep(v.w_min, v.w_max, v.count, v.mass);
}

RunResult run_verify_interpolation(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const auto report =
      check_interpolation(*setup.params, config.verify.eta, make_family(config), setup.grid, config.verify.exploratory);
  summary["report"] = to_json(report);

  std::ostringstream csv;
  csv << csv_config_line(config) << "slice_mass,concentration,mass,wn1,wn2,residual,running_sup\n";
  csv.precision(17);
  for (const auto& slice : report.slices)
    for (const auto& s : slice.samples)
      csv << slice.mass << ',' << s.concentration << ',' << s.mass << ',' << s.wn1 << ',' << s.wn2 << ','
          << s.residual << ',' << s.running_sup << '\n';
  write_atomic(dir / "interpolation.csv", csv.str());
  summary["samples"] = "interpolation.csv";
  log << "interpolation (" << to_string(report.hypothesis) << "): " << (report.pass ? "stable" : "not stable")
      << " over " << report.slices.size() << " mass slice(s)\n";
  return finish(dir, std::move(summary), kExitOk);
}

RunResult run_verify_kinetic(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const Field u0 = make_initial(config, setup, summary);
  const KineticReport r = check_kinetic_bound(*setup.params, u0, config.solver);
  summary["verdict"] = to_json(r.verdict);
  summary["status"] = std::string(to_string(r.status));
  summary["final_time"] = r.final_time;
  summary["initial_kinetic"] = r.initial_kinetic;
  summary["sup_kinetic"] = r.sup_kinetic;
  summary["kinetic_ratio"] = r.kinetic_ratio;
  summary["final_half_increase"] = r.final_half_increase;
  summary["max_energy_drift"] = r.max_energy_drift;
  double worst = 0.0;
  for (double x : r.identity_residuals) worst = std::max(worst, x);
  summary["max_identity_residual"] = worst;
  summary["identity_ok"] = r.identity_ok;
  write_atomic(dir / "diagnostics.csv", diagnostics_csv(config, r.diagnostics));
  summary["diagnostics"] = "diagnostics.csv";
  log << "kinetic: sup ratio " << r.kinetic_ratio << ", identity " << (r.identity_ok ? "ok" : "violated") << "\n";
  return finish(dir, std::move(summary), kExitOk);
}

RunResult run_convergence(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const Field u0 = make_initial(config, setup, summary);
  const double t_end = config.solver.t_end;
  std::optional<Field> exact;
  // The closed form is known for the free flow of exp(-r^2).
  if (setup.model.is_linear() && is_unit_gaussian(config.initial_data)) exact = free_gaussian(setup.grid, t_end);
  const auto report = convergence_study(u0, setup.model, t_end, config.convergence.dt_list, exact);
  summary["report"] = to_json(report);
  log << "convergence: fitted order " << report.fitted_order << "\n";
  return finish(dir, std::move(summary), kExitOk);
}

RunResult run_picard(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const Setup setup = make_setup(config);
  ojson summary = base_summary(config);
  const Field u0 = make_initial(config, setup, summary);
  const auto& pc = config.picard;
  const PicardResult picard = picard_solve(u0, setup.model, pc.horizon, pc.iterations, pc.quad_nodes);

  SolverConfig reference = config.solver;
  reference.dt0 = pc.reference_dt;
  reference.dt_min = std::min(reference.dt_min, pc.reference_dt * 1e-3);
  reference.t_end = pc.horizon;
  reference.absorbing_mask = false;
  const RunOutcome ref = run_simulation(u0, setup.model, reference);

  const double error = relative_l2(picard.solution, ref.final_state);
  ojson ratios = ojson::array();
  for (std::size_t m = 1; m < picard.iterate_distances.size(); ++m)
    ratios.push_back(picard.iterate_distances[m] / picard.iterate_distances[m - 1]);
  summary["iterate_distances"] = picard.iterate_distances;
  summary["contraction_ratios"] = ratios;
  summary["reference_status"] = std::string(to_string(ref.status));
  summary["reference_steps"] = ref.steps;
  summary["relative_l2_vs_split_step"] = error;
  log << "picard: relative L2 distance to split-step " << error << "\n";
  return finish(dir, std::move(summary), ref.status == RunStatus::ReachedTEnd ? kExitOk : kExitError);
}

RunResult run_sweep(const ExperimentConfig& config, const fs::path& dir, std::ostream& log) {
  const auto& paths = config.sweep.configs;
  struct Slot {
    fs::path config_path;
    fs::path out_dir;
    int exit_code = kExitError;
    std::string error;
    std::string log;
  };
  std::vector<Slot> slots(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    slots[i].config_path = resolve_path(config, paths[i]);
    slots[i].out_dir = dir / ("run_" + std::to_string(i) + "_" + slots[i].config_path.stem().string());
  }

  // Parent flags apply to every run, except those that describe the sweep itself.
  std::vector<std::string> inherited;
  for (const auto& o : config.overrides) {
    const std::string target = o.substr(0, o.find('='));
    if (target != "mode" && target != "outputs.directory" && !target.starts_with("sweep.")) inherited.push_back(o);
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < slots.size(); i = next++) {
      Slot& slot = slots[i];
      std::ostringstream run_log;
      try {
        const ExperimentConfig sub = load_config(slot.config_path, inherited);
        if (sub.mode == Mode::Sweep) throw Error(ErrorCode::ValidationError, "nested sweeps are not supported");
        slot.exit_code = run_experiment(sub, slot.out_dir, run_log).exit_code;
      } catch (const std::exception& e) {
        slot.exit_code = kExitError;
        slot.error = e.what();
      }
      slot.log = run_log.str();
    }
  };
  const int workers = std::min<int>(config.sweep.workers, static_cast<int>(slots.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  ojson summary = base_summary(config);
  ojson runs = ojson::array();
  bool failed = false;
  for (const auto& slot : slots) {
    ojson r{{"config", slot.config_path.generic_string()},
            {"out_dir", fs::relative(slot.out_dir, dir).generic_string()},
            {"exit_code", slot.exit_code}};
    if (!slot.error.empty()) r["error"] = slot.error;
    runs.push_back(r);
    failed = failed || slot.exit_code == kExitError;
    log << "[" << slot.config_path.filename().string() << "] exit " << slot.exit_code << "\n" << slot.log;
    if (!slot.error.empty()) log << "  error: " << slot.error << "\n";
  }
  summary["runs"] = runs;
  return finish(dir, std::move(summary), failed ? kExitError : kExitOk);
}

}  // namespace

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot rename " + tmp.string() + ": " + ec.message());
  }
}

ojson to_json(const RegimeVerdict& v) {
  ojson j;
  j["regime"] = std::string(to_string(v.kind));
  ojson conditions = ojson::array();
  for (const auto& c : v.conditions)
    conditions.push_back({{"name", c.name},
                          {"holds", c.holds},
                          {"lhs", number_json(c.lhs)},
                          {"rhs", number_json(c.rhs)},
                          {"lhs_value", c.lhs.value()},
                          {"rhs_value", c.rhs.value()}});
  j["conditions"] = conditions;
  if (v.blowup_constant) j["blowup_constant"] = *v.blowup_constant;
  if (v.t_bound) j["t_bound"] = *v.t_bound;
  return j;
}

ojson to_json(const StrichartzExponents& x) {
  const int n = x.dimension;
  return {{"N", n},
          {"b2", number_json(x.b2)},
          {"eta", number_json(x.eta)},
          {"W0", pair_json(x.w0, n)},
          {"W+", pair_json(x.w_plus, n)},
          {"W-", pair_json(x.w_minus, n)},
          {"V0", pair_json(x.v0, n)},
          {"V+", pair_json(x.v_plus, n)},
          {"V-", pair_json(x.v_minus, n)},
          {"Z", {{"gamma", number_json(x.z.gamma)}, {"rho", number_json(x.z.rho)}}}};
}

ojson to_json(const InterpolationReport& r) {
  ojson slices = ojson::array();
  for (const auto& s : r.slices)
    slices.push_back({{"mass", s.mass},
                      {"members", s.samples.size()},
                      {"sup_residual", s.sup_residual},
                      {"decades", s.decades},
                      {"final_decade_increase", std::isfinite(s.final_decade_increase) ? ojson(s.final_decade_increase)
                                                                                        : ojson(nullptr)},
                      {"stabilized", s.stabilized}});
  return {{"hypothesis", std::string(to_string(r.hypothesis))},
          {"exploratory", r.exploratory},
          {"eta", r.eta},
          {"slices", slices},
          {"pass", r.pass}};
}

ojson to_json(const ConvergenceReport& r) {
  ojson rows = ojson::array();
  for (const auto& row : r.rows) {
    ojson j{{"dt", row.dt}, {"steps", row.steps}, {"error_vs_reference", row.error_vs_reference}};
    if (row.error_vs_analytic) j["error_vs_analytic"] = *row.error_vs_analytic;
    j["energy_drift"] = row.energy_drift;
    rows.push_back(j);
  }
  ojson j{{"rows", rows}, {"fitted_order", r.fitted_order}};
  if (r.fitted_order_analytic) j["fitted_order_analytic"] = *r.fitted_order_analytic;
  j["fitted_energy_order"] = r.fitted_energy_order;
  return j;
}

RunResult run_experiment(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw Error(ErrorCode::IoError, "cannot create output directory " + out_dir.string());
  switch (config.mode) {
    case Mode::Simulate: return run_simulate(config, out_dir, log);
    case Mode::Classify: return run_classify(config, out_dir, log);
    case Mode::Exponents: return run_exponents(config, out_dir, log);
    case Mode::VerifyInterpolation: return run_verify_interpolation(config, out_dir, log);
    case Mode::VerifyKinetic: return run_verify_kinetic(config, out_dir, log);
    case Mode::Convergence: return run_convergence(config, out_dir, log);
    case Mode::PicardCheck: return run_picard(config, out_dir, log);
    case Mode::Sweep: return run_sweep(config, out_dir, log);
  }
  throw Error(ErrorCode::ValidationError, "unhandled mode");
}

}  // namespace dinls::app
