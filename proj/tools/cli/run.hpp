#pragma once

// Command-line front end: parses a RunConfig, runs one analysis, and writes
// its tables as CSV or JSON.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coprime/core_sets.hpp"

namespace coprime::cli {

enum class Command { Diffset, Weights, Bias, Variance, Complexity, Estimate, Tables };
enum class SbMode { Unit, Default };
enum class OutputFormat { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitIo = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "COPRIME_OUTPUT_DIR";

struct RunConfig {
  Command command = Command::Weights;
  Lag M = 4;
  Lag N = 3;
  RangeKind range = RangeKind::Full;
  std::optional<std::int64_t> grid_size;  // command default when empty
  std::optional<SbMode> sb_mode;          // command default when empty
  Lag snapshots = 10;
  std::uint64_t seed = 1;
  std::uint64_t realization = 0;
  std::string output;  // empty: $COPRIME_OUTPUT_DIR/<command>.<ext>, else stdout
  OutputFormat format = OutputFormat::Csv;

  Lag max = 8;                      // sweep bound for tables / variance
  std::string window = "biased";    // bias: biased | unbiased
  std::string kind;                 // diffset: restrict to one set kind
  std::string preset = "one";       // estimate: one | three | spread
  std::vector<double> frequencies;  // estimate: multiples of pi, overrides preset
  double noise = 0.1;
  std::string norm = "biased";  // estimate: biased | unbiased
  std::int64_t peaks = 0;       // estimate: also report the k largest peaks

  std::int64_t resolved_grid_size() const;
  SbMode resolved_sb_mode() const;
  /// One-line key=value rendering of every field, after defaults.
  std::string describe() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses flags (args[0] is the program name). `--config FILE` reads flat
/// `key = value` lines; flags given on the command line win. Throws
/// ConfigError, including for values that fail validation.
RunConfig parse_command_line(const std::vector<std::string>& args);

/// Throws ConfigError.
void validate(const RunConfig& config);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Runs the analysis. Throws coprime::Error on oracle mismatches.
std::vector<Table> execute(const RunConfig& config);

void write_csv(std::ostream& out, const RunConfig& config, const std::vector<Table>& tables);
void write_json(std::ostream& out, const RunConfig& config, const std::vector<Table>& tables);

/// Full pipeline with exit-status mapping; errors are written to `err` as
/// one JSON record per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coprime::cli
