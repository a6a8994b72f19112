#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relhom/cli/spec_io.hpp"
#include "relhom/report.hpp"

namespace relhom::cli {

inline constexpr const char* kToolVersion = "relhom 0.1.0";

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simples", "spectrum", "tors",   "localize",
                                              "gamma",   "resolve",  "factor", "check"};
  return names;
}
inline const std::vector<std::string>& suites() {
  static const std::vector<std::string> names{"i-mono", "coni",         "coho1",        "vanishing",
                                              "bijection", "localization", "model", "approximation"};
  return names;
}

struct Options {
  std::string subcommand;
  std::string tau;     // empty: every declared theory
  std::string module;  // module or complex name
  std::optional<long> max_degree;
  std::optional<long> depth;
  std::string suite;
  bool json = true;
  bool timing = false;
};

struct Outcome {
  report::Report report;
  /// Computed objects for the non-check subcommands; null for `check`.
  json result;
};

/// Throws USAGE for unknown names or missing flags.
Outcome run(const LoadedSpec& spec, const Options& opts);
std::string render(const Outcome& out, const Options& opts);
inline int exit_status(const Outcome& out) { return out.report.has_fail() ? 1 : 0; }

}  // namespace relhom::cli
