#pragma once

// Experiment specifications for the command-line front end: parsing from a
// JSON document, whole-spec validation, and execution into CSV files.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnfade/mcsim.hpp"

namespace lnfade {

enum class ExperimentKind { Fig2, Fig3, Fig4, Custom };

std::string to_string(ExperimentKind kind);

/// Values pinned by the named figure experiments.
struct FigureParams {
  static constexpr double tp = 1.0 / 150.0;
  static constexpr double pt = 1.0;
  static constexpr double m = -0.5;
  static constexpr double sigma = 1.0;
  static constexpr double rho = 0.2;
  static constexpr int bits = 8;
  static constexpr std::size_t n_data = 10;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Custom;
  bool allow_override = false;
  SimConfig sim;
  std::vector<double> snr_db;
  bool analytic = true;
  double rho = FigureParams::rho;
  std::size_t profile_slots = 64;
  std::uint64_t profile_seed = 1;
  std::string output = "results.csv";
};

struct Violation {
  std::string field;
  std::string message;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<Violation> v);
  std::vector<Violation> violations;
};

/// Parses a spec document. Type errors and missing required fields are
/// appended to `violations` (the spec is still returned, partially filled).
ExperimentSpec parse_spec(const nlohmann::json& doc, std::vector<Violation>& violations);

/// Every invariant violation of a parsed spec; empty when valid. Figure
/// experiments report each pinned parameter that differs from its figure
/// value unless allow_override is set.
std::vector<Violation> validate_spec(const ExperimentSpec& spec);

/// Reads, parses and validates a spec file. I/O failure throws
/// std::ios_base::failure; the returned list holds parse and invariant
/// violations together.
std::vector<Violation> validate_file(const std::filesystem::path& path, ExperimentSpec* out = nullptr);

/// The series a spec expands to: figure experiments run independent uncoded,
/// dependent uncoded and dependent coded; custom runs the configuration as is.
std::vector<SimConfig> expand_series(const ExperimentSpec& spec);

/// Self-describing comment lines written ahead of every CSV header.
std::vector<std::string> describe(const ExperimentSpec& spec);

struct RunOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // one line per (series, SNR point)
};

/// Runs the sweep and, when enabled, the analytic companions. Throws
/// ValidationError, ConvergenceError, DivergenceError or std::ios_base::failure.
RunOutput run_experiment(const ExperimentSpec& spec);

/// Column names of the analytic summary CSV.
inline constexpr const char* kAnalyticCsvHeader =
    "snr_db,a1,mean_erasure,uncoded_seconds,coded_seconds,coded_ni_star,pb_single,pb_joint";

}  // namespace lnfade
