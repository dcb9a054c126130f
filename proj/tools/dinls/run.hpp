#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "config.hpp"
#include "dinls/verify.hpp"

namespace dinls::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUnclassified = 2,
  kExitBlowup = 3,
};

struct RunResult {
  int exit_code = kExitOk;
  /// Contents of the mode's summary JSON (also written to disk).
  nlohmann::ordered_json summary;
};

/// Dispatches config.mode and writes its artifacts under out_dir (created if
/// needed). Progress lines go to log. Library errors propagate as Error.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Writes to a sibling temporary file, then renames over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// JSON views of library reports, shared with the acceptance driver.
nlohmann::ordered_json to_json(const RegimeVerdict& verdict);
nlohmann::ordered_json to_json(const StrichartzExponents& exponents);
nlohmann::ordered_json to_json(const InterpolationReport& report);
nlohmann::ordered_json to_json(const ConvergenceReport& report);

}  // namespace dinls::app
