#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tauttrack::cli {

inline constexpr int exit_pass = 0;  // also a refutation found
inline constexpr int exit_audit_failure = 1;
inline constexpr int exit_input_error = 2;

enum class Format { Text, Json };

struct PipelineConfig {
  std::vector<std::string> command;  // group and action, e.g. {"disk", "refute"}
  std::string tri, taut, coor, loop, diagram;
  std::string out;  // output file, or directory for `corpus generate`
  Format format = Format::Text;
  int verbosity = 0;
  std::uint64_t seed = 1;  // TAUTTRACK_SEED takes precedence

  std::string kind;   // disk refute: vertical | normal
  std::string bigon;  // region name or index
  int site = -1;      // loop push-up

  // corpus generate
  int max_tets = 3;
  int max_regions = 6;
  int loops_per_structure = 2;
  int max_arcs = 6;
  int per_boundary = 4;
};

struct RunResult {
  int status = exit_pass;
  std::string report;
};

/// Parses the command line.  Throws InputError on bad usage; `--help` is
/// reported through `help` with an empty command.
PipelineConfig parse_args(int argc, const char* const* argv, std::string* help = nullptr);

/// Runs one command.  Input and parse errors become exit 2 with a report.
RunResult run(const PipelineConfig& config);

/// parse_args + run, writing the report to `out` and diagnostics to `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tauttrack::cli
