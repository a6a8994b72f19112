#include "relhom/report.hpp"

#include <sstream>

namespace relhom::report {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "FAIL";
}

bool Report::has_fail() const {
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return true;
  }
  return false;
}

void Report::append(std::vector<CheckRecord> more) {
  for (auto& c : more) checks.push_back(std::move(c));
}

CheckRecord pass(std::string id, std::string reference, json witness) {
  return {std::move(id), std::move(reference), Verdict::Pass, std::move(witness), std::nullopt, 0};
}

CheckRecord fail(std::string id, std::string reference, json witness) {
  if (!witness.is_object() || witness.empty()) witness = json{{"detail", witness}};
  return {std::move(id), std::move(reference), Verdict::Fail, std::move(witness), std::nullopt, 0};
}

CheckRecord skipped(std::string id, std::string reference, const std::string& because) {
  return {std::move(id), std::move(reference), Verdict::Skipped, json{{"skipped_because", because}}, std::nullopt, 0};
}

CheckRecord verdict(bool ok, std::string id, std::string reference, json witness) {
  return ok ? pass(std::move(id), std::move(reference), std::move(witness))
            : fail(std::move(id), std::move(reference), std::move(witness));
}

json matrix_json(const la::Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"p", m.p()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

json to_json(const Report& r, bool timing) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j{{"id", c.id}, {"reference", c.reference}, {"verdict", verdict_name(c.verdict)}, {"witness", c.witness}};
    if (c.certified_range) j["certified_range"] = {c.certified_range->first, c.certified_range->second};
    if (timing) j["wall_seconds"] = c.wall_seconds;
    checks.push_back(std::move(j));
  }
  json out{{"version", r.tool_version}, {"checks", std::move(checks)}};
  if (!r.input_digest.empty()) out["input_digest"] = r.input_digest;
  return out;
}

std::string to_text(const Report& r, bool timing) {
  std::ostringstream os;
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& c : r.checks) {
    os << verdict_name(c.verdict) << "  " << c.id << "  (" << c.reference << ")";
    if (c.certified_range) os << "  degrees [" << c.certified_range->first << "," << c.certified_range->second << "]";
    if (timing) os << "  " << c.wall_seconds << "s";
    os << '\n';
    if (c.verdict != Verdict::Pass && !c.witness.empty()) os << "      " << c.witness.dump() << '\n';
    ++counts[static_cast<int>(c.verdict)];
  }
  os << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " skipped\n";
  return os.str();
}

}  // namespace relhom::report
