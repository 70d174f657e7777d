#include "qmoyal/report.h"

#include <sstream>

namespace qmoyal {

ConformanceReport::ConformanceReport(std::string name, Json params)
    : check(std::move(name)), parameters(std::move(params)) {}

bool ConformanceReport::record_strings(bool match, const std::string& label,
                                       const std::string& expected, const std::string& actual) {
  return record(match, label, [&] { return expected; }, [&] { return actual; });
}

void CheckOutcome::require_all(const ConformanceReport& report) {
  reports.push_back(report);
  if (!report.all_match()) {
    std::ostringstream msg;
    msg << report.check << ": " << (report.n_cases - report.n_match) << " of " << report.n_cases
        << " cases disagree";
    hard_failures.push_back(msg.str());
  }
}

void CheckOutcome::require(bool condition, const std::string& failure) {
  if (!condition) hard_failures.push_back(failure);
}

CheckOutcome& CheckOutcome::operator+=(const CheckOutcome& o) {
  reports.insert(reports.end(), o.reports.begin(), o.reports.end());
  hard_failures.insert(hard_failures.end(), o.hard_failures.begin(), o.hard_failures.end());
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  return *this;
}

Json to_json(const ConformanceReport& report) {
  Json j;
  j["check"] = report.check;
  j["parameters"] = report.parameters;
  j["n_cases"] = report.n_cases;
  j["n_match"] = report.n_match;
  j["witnesses"] = Json::array();
  for (const auto& w : report.witnesses) {
    Json wj;
    wj["case"] = w.case_label;
    wj["expected"] = w.expected;
    wj["actual"] = w.actual;
    j["witnesses"].push_back(std::move(wj));
  }
  j["derived_correction"] = report.derived_correction ? Json(*report.derived_correction) : Json(nullptr);
  return j;
}

Json to_json(const CheckOutcome& outcome) {
  Json j;
  j["reports"] = Json::array();
  for (const auto& r : outcome.reports) j["reports"].push_back(to_json(r));
  j["hard_failures"] = outcome.hard_failures;
  return j;
}

std::string to_text(const CheckOutcome& outcome) {
  std::ostringstream out;
  for (const auto& r : outcome.reports) {
    out << (r.all_match() ? "[match]    " : "[mismatch] ") << r.check << "  " << r.n_match << "/"
        << r.n_cases;
    if (!r.parameters.empty()) out << "  " << r.parameters.dump();
    out << '\n';
    for (const auto& w : r.witnesses) {
      out << "    case " << w.case_label << "\n      expected: " << w.expected
          << "\n      actual:   " << w.actual << '\n';
    }
    if (r.derived_correction) out << "    derived correction: " << *r.derived_correction << '\n';
  }
  for (const auto& n : outcome.notes) out << n << '\n';
  if (outcome.hard_failures.empty()) {
    out << "hard assertions: all passed\n";
  } else {
    for (const auto& f : outcome.hard_failures) out << "HARD FAILURE: " << f << '\n';
  }
  return out.str();
}

std::optional<std::string> schema_violation(const Json& r) {
  static const std::vector<std::string> keys = {"check",     "parameters", "n_cases",
                                                "n_match",   "witnesses",  "derived_correction"};
  if (!r.is_object()) return "report is not an object";
  if (r.size() != keys.size()) return "report has unexpected keys";
  for (const auto& k : keys) {
    if (!r.contains(k)) return "missing key " + k;
  }
  if (!r["check"].is_string()) return "check is not a string";
  if (!r["parameters"].is_object()) return "parameters is not an object";
  if (!r["n_cases"].is_number_integer() || !r["n_match"].is_number_integer()) {
    return "counts are not integers";
  }
  const auto n_cases = r["n_cases"].get<long>();
  const auto n_match = r["n_match"].get<long>();
  if (n_match < 0 || n_match > n_cases) return "n_match out of range";
  if (!r["witnesses"].is_array()) return "witnesses is not an array";
  for (const auto& w : r["witnesses"]) {
    if (!w.is_object() || w.size() != 3) return "malformed witness";
    for (const char* k : {"case", "expected", "actual"}) {
      if (!w.contains(k) || !w[k].is_string()) return std::string("witness lacks string ") + k;
    }
  }
  if (r["witnesses"].empty() != (n_match == n_cases)) {
    return "witnesses must be present exactly when some case mismatches";
  }
  if (!r["derived_correction"].is_null() && !r["derived_correction"].is_string()) {
    return "derived_correction is neither null nor a string";
  }
  return std::nullopt;
}

}  // namespace qmoyal
