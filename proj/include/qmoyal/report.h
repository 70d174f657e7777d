#pragma once

// Structured sweep results shared by the conformance checks and the demos.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qmoyal {

using Json = nlohmann::ordered_json;

struct Witness {
  std::string case_label;
  std::string expected;
  std::string actual;
};

struct ConformanceReport {
  std::string check;
  Json parameters = Json::object();
  int n_cases = 0;
  int n_match = 0;
  std::vector<Witness> witnesses;
  std::optional<std::string> derived_correction;

  /// Only the first few mismatches are kept as witnesses.
  static constexpr std::size_t witness_limit = 12;

  ConformanceReport(std::string name, Json params);

  /// Counts one case; renders lazily so matching cases cost nothing.
  template <typename E, typename A>
  bool record(bool match, const std::string& label, E&& expected, A&& actual) {
    ++n_cases;
    if (match) {
      ++n_match;
    } else if (witnesses.size() < witness_limit) {
      witnesses.push_back({label, expected(), actual()});
    }
    return match;
  }
  bool record_strings(bool match, const std::string& label, const std::string& expected,
                      const std::string& actual);

  bool all_match() const { return n_match == n_cases; }
};

struct CheckOutcome {
  std::vector<ConformanceReport> reports;
  std::vector<std::string> hard_failures;
  /// Free-form lines for the human-readable rendering (not part of the JSON schema).
  std::vector<std::string> notes;

  /// Registers a report whose cases must all match.
  void require_all(const ConformanceReport& report);
  /// Registers a report that is recorded only.
  void record(const ConformanceReport& report) { reports.push_back(report); }
  void require(bool condition, const std::string& failure);
  bool ok() const { return hard_failures.empty(); }
  CheckOutcome& operator+=(const CheckOutcome& o);
};

Json to_json(const ConformanceReport& report);
/// {"reports": [...], "hard_failures": [...]}
Json to_json(const CheckOutcome& outcome);
std::string to_text(const CheckOutcome& outcome);

/// Validates one report object against the published schema; returns the
/// first problem found, or nullopt.
std::optional<std::string> schema_violation(const Json& report);

}  // namespace qmoyal
