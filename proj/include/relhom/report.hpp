#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "relhom/exactla/matrix.hpp"

namespace relhom::report {

using json = nlohmann::json;

enum class Verdict { Pass, Fail, Skipped };

std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string id;
  /// Name of the statement the check exercises.
  std::string reference;
  Verdict verdict = Verdict::Pass;
  /// Always an object; FAIL records carry the counterexample here and
  /// SKIPPED records name the missing hypothesis under "skipped_because".
  json witness = json::object();
  /// Inclusive degree range over which the verdict is certified.
  std::optional<std::pair<long, long>> certified_range;
  double wall_seconds = 0;
};

struct Report {
  std::string tool_version;
  std::string input_digest;
  std::vector<CheckRecord> checks;

  bool has_fail() const;
  void append(std::vector<CheckRecord> more);
};

CheckRecord pass(std::string id, std::string reference, json witness = json::object());
CheckRecord fail(std::string id, std::string reference, json witness);
CheckRecord skipped(std::string id, std::string reference, const std::string& because);
CheckRecord verdict(bool ok, std::string id, std::string reference, json witness);

json matrix_json(const la::Matrix& m);

/// Sorted keys; wall times only when `timing` is set.
json to_json(const Report& r, bool timing);
std::string to_text(const Report& r, bool timing);

/// Measures the wall time of a block into a record.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace relhom::report
