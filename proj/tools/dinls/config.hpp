#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dinls/params.hpp"
#include "dinls/solver.hpp"

namespace dinls::app {

/// One scalar or array value as written in the config. Numbers keep their
/// source text so exponents such as 1/2 or 0.4 stay exact.
struct ConfigValue {
  enum class Kind { String, Number, Bool, Array };
  Kind kind = Kind::String;
  std::string text;
  bool flag = false;
  std::vector<ConfigValue> items;
  int line = 0;
};

/// section -> key -> value; top-level keys live in section "".
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

/// Parses the TOML subset used by experiment files: [section] headers,
/// key = value with strings, numbers, booleans and flat arrays, # comments.
/// Throws Error(ParseError) naming the line.
ConfigTable parse_toml(const std::string& text);
/// Same table shape from a JSON object of objects.
ConfigTable parse_json_config(const std::string& text);

enum class Mode { Simulate, Classify, Exponents, VerifyInterpolation, VerifyKinetic, Convergence, PicardCheck, Sweep };
std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct GridSpec {
  int dimension = 3;
  double radius = 20.0;
  int points = 1024;
};

struct InitialDataSpec {
  /// "gaussian" (chirped Gaussian) or "snapshot".
  std::string kind = "gaussian";
  double amplitude = 1.0;
  /// When set, amplitude = factor * A*, the zero-energy amplitude.
  std::optional<double> zero_energy_factor;
  double width = 1.0;
  double chirp = 0.0;
  std::string snapshot;
};

struct OutputSpec {
  std::filesystem::path directory = "out";
  /// Snapshot format for the final state: "csv", "binary" or "none".
  std::string snapshot_format = "csv";
};

struct ExponentsSpec {
  std::string p = "2";
  std::string b = "1/2";
  std::optional<int> dimension;
  std::string eta = "1/1000";
};

struct VerifySpec {
  double eta = 1.0;
  std::string family = "gaussian_width_sweep";
  double w_min = 0.03;
  double w_max = 10.0;
  int count = 61;
  double mass = 1.0;
  std::vector<double> values;
  int components = 4;
  bool exploratory = false;
};

struct ConvergenceSpec {
  std::vector<double> dt_list{4e-3, 2e-3, 1e-3, 1e-5};
};

struct PicardSpec {
  double horizon = 0.02;
  int iterations = 4;
  int quad_nodes = 8;
  double reference_dt = 1e-5;
};

struct SweepSpec {
  std::vector<std::string> configs;
  int workers = 2;
};

/// Fully defaulted, validated experiment description.
struct ExperimentConfig {
  Mode mode = Mode::Simulate;
  std::uint64_t seed = 0;
  /// Zero both couplings (free flow); [params] becomes optional.
  bool linear = false;
  std::optional<RawParams> params;
  GridSpec grid;
  SolverConfig solver;
  InitialDataSpec initial_data;
  OutputSpec outputs;
  ExponentsSpec exponents;
  VerifySpec verify;
  ConvergenceSpec convergence;
  PicardSpec picard;
  SweepSpec sweep;
  /// Directory of the config file, for resolving relative paths.
  std::filesystem::path base_dir = ".";
  /// "section.key=value" overrides applied on top of the file, in order.
  std::vector<std::string> overrides;
};

/// Builds a config from a table; unknown sections or keys are ParseErrors and
/// module validators run before returning (ValidationError on failure).
ExperimentConfig build_config(const ConfigTable& table, const std::filesystem::path& base_dir = ".");

/// Reads .toml or .json (by extension), applies "section.key=value"
/// overrides, and validates.
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
/// Same from an in-memory table, for flag-only runs.
ExperimentConfig config_from_overrides(const std::vector<std::string>& overrides);

/// Applies one "section.key=value" override to a table.
void apply_override(ConfigTable& table, const std::string& assignment);

/// Relative paths in a config are taken from the config file's directory.
std::filesystem::path resolve_path(const ExperimentConfig& config, const std::string& path);

/// Every effective setting, defaults included, in a fixed key order.
nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace dinls::app
