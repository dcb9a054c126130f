#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "dinls/error.hpp"
#include "run.hpp"

namespace {

using dinls::app::Mode;

// Flag values collected before they are folded into "section.key=value"
// overrides, which are applied after the config file.
struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<long long> seed;
  std::optional<std::string> dt;
  std::optional<int> grid_points;
  std::optional<std::string> t_end;
  std::vector<std::string> set;
  std::vector<std::pair<std::string, std::optional<std::string>>> mode_flags;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("-c,--config", f.config, "Experiment file (.toml or .json)")->check(CLI::ExistingFile);
  sub->add_option("-o,--out", f.out, "Output directory (outputs.directory)");
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_option("--dt", f.dt, "Initial time step (solver.dt0)");
  sub->add_option("--grid-points", f.grid_points, "Radial grid points M (grid.M)");
  sub->add_option("--t-end", f.t_end, "Final time (solver.t_end)");
  sub->add_option("--set", f.set, "Any setting as section.key=value (repeatable)");
}

void add_mode_flag(CLI::App* sub, Flags& f, const std::string& flag, const std::string& target,
                   const std::string& help) {
  f.mode_flags.emplace_back(target, std::nullopt);
  const std::size_t slot = f.mode_flags.size() - 1;
  sub->add_option_function<std::string>(
      flag, [&f, slot](const std::string& v) { f.mode_flags[slot].second = v; }, help);
}

void add_mode_switch(CLI::App* sub, Flags& f, const std::string& flag, const std::string& target,
                     const std::string& help) {
  f.mode_flags.emplace_back(target, std::nullopt);
  const std::size_t slot = f.mode_flags.size() - 1;
  sub->add_flag_callback(flag, [&f, slot] { f.mode_flags[slot].second = "true"; }, help);
}

std::vector<std::string> collect_overrides(const Flags& f, Mode mode) {
  std::vector<std::string> o{"mode=" + std::string(dinls::app::to_string(mode))};
  if (f.out) o.push_back("outputs.directory=\"" + *f.out + "\"");
  if (f.seed) o.push_back("seed=" + std::to_string(*f.seed));
  if (f.dt) o.push_back("solver.dt0=" + *f.dt);
  if (f.grid_points) o.push_back("grid.M=" + std::to_string(*f.grid_points));
  if (f.t_end) o.push_back("solver.t_end=" + *f.t_end);
  for (const auto& [target, value] : f.mode_flags)
    if (value) o.push_back(target + "=" + *value);
  o.insert(o.end(), f.set.begin(), f.set.end());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solver and diagnostics for the double-power inhomogeneous NLS"};
  app.require_subcommand(1);

  struct Entry {
    Mode mode;
    CLI::App* sub;
  };
  std::vector<Entry> entries;
  Flags flags;
  const auto add = [&](Mode mode, const std::string& help) {
    CLI::App* sub = app.add_subcommand(std::string(dinls::app::to_string(mode)), help);
    add_common(sub, flags);
    entries.push_back({mode, sub});
    return sub;
  };

  auto* sim = add(Mode::Simulate, "Integrate one initial datum and record diagnostics");
  add_mode_switch(sim, flags, "--linear", "linear", "Zero couplings (free flow)");
  add(Mode::Classify, "Report the global and blow-up regime verdicts");
  auto* ex = add(Mode::Exponents, "Print the intercritical pair and the W/V/Z exponents");
  add_mode_flag(ex, flags, "--p", "exponents.p", "Power p");
  add_mode_flag(ex, flags, "--b", "exponents.b", "Weight exponent b");
  add_mode_flag(ex, flags, "--N", "exponents.N", "Dimension N");
  add_mode_flag(ex, flags, "--eta", "exponents.eta", "Offset of the perturbed pairs");
  auto* vi = add(Mode::VerifyInterpolation, "Probe the weighted interpolation inequality");
  add_mode_flag(vi, flags, "--eta", "verify.eta", "Coefficient eta of the critical term");
  add_mode_flag(vi, flags, "--family", "verify.family", "Probe family");
  add_mode_switch(vi, flags, "--exploratory", "verify.exploratory", "Run outside the hypotheses");
  add(Mode::VerifyKinetic, "Check the kinetic-energy identity along a trajectory");
  auto* cv = add(Mode::Convergence, "Time-step refinement study");
  add_mode_switch(cv, flags, "--linear", "linear", "Zero couplings; compare with the free Gaussian");
  auto* pc = add(Mode::PicardCheck, "Compare Duhamel iterates with the split-step solver");
  add_mode_flag(pc, flags, "--iterations", "picard.iterations", "Number of Picard iterates");
  add_mode_flag(pc, flags, "--quad-nodes", "picard.quad_nodes", "Gauss-Legendre nodes per interval");
  add_mode_flag(pc, flags, "--horizon", "picard.T", "Final time T");
  add_mode_switch(pc, flags, "--linear", "linear", "Zero couplings (free flow)");
  auto* sw = add(Mode::Sweep, "Run several configs on a worker pool");
  add_mode_flag(sw, flags, "--workers", "sweep.workers", "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? dinls::app::kExitOk : dinls::app::kExitError;
  }

  Mode mode = Mode::Simulate;
  for (const auto& e : entries)
    if (e.sub->parsed()) mode = e.mode;

  try {
    const auto overrides = collect_overrides(flags, mode);
    const auto config = flags.config.empty() ? dinls::app::config_from_overrides(overrides)
                                             : dinls::app::load_config(flags.config, overrides);
    const auto result = dinls::app::run_experiment(config, config.outputs.directory, std::cout);
    std::cout << "artifacts: " << config.outputs.directory.string() << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dinls::app::kExitError;
  }
}
