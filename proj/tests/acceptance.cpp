// One PASS/FAIL line per acceptance criterion; all comparisons are exact.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmoyal/applications.h"
#include "qmoyal/cli.h"
#include "qmoyal/conformance.h"
#include "qmoyal/report.h"

using namespace qmoyal;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const ConformanceReport* find(const CheckOutcome& o, const std::string& check, const std::string& key = "",
                              const std::string& value = "") {
  for (const auto& r : o.reports) {
    if (r.check != check) continue;
    if (key.empty() || (r.parameters.contains(key) && r.parameters[key].dump() == value)) return &r;
  }
  return nullptr;
}

void require_outcome(Verdict& v, const CheckOutcome& o, const std::string& name) {
  v.require(o.ok(), name + " has hard failures");
  for (const auto& f : o.hard_failures) v.require(false, f);
}

void require_full_match(Verdict& v, const ConformanceReport* r, const std::string& name) {
  if (!r) {
    v.require(false, name + " missing");
    return;
  }
  v.require(r->all_match(), name + " " + std::to_string(r->n_match) + "/" + std::to_string(r->n_cases));
}

bool has_witness(const ConformanceReport* r, const std::string& label) {
  if (!r) return false;
  for (const auto& w : r->witnesses) {
    if (w.case_label == label) return true;
  }
  return false;
}

struct Cli {
  int code;
  std::string out;
};

Cli cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qmoyal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

CheckOptions grid(int n) {
  CheckOptions opt;
  opt.grid = n;
  return opt;
}

Verdict oracle_integrity() {
  Verdict v;
  const CheckOutcome o = verify_oracle_integrity(grid(3));
  require_outcome(v, o, "oracle-integrity");
  const auto* confluence = find(o, "oracle_integrity/confluence");
  require_full_match(v, confluence, "confluence");
  if (confluence) v.require(confluence->parameters["words"] == 200, "word count");
  const auto* closed = find(o, "oracle_integrity/closed_form");
  require_full_match(v, closed, "closed form");
  if (closed) v.require(closed->n_cases == 49, "closed form covers b, c <= 6");
  return v;
}

Verdict base_relation() {
  Verdict v;
  const auto S = Ordering::standard;
  auto op = [](const std::string& letters) {
    return LabeledOperator::monomial(OperatorWord::from_letters(letters));
  };
  NormalForm h{S, {}};
  h.add({0, 0}, Coefficient::h());
  v.require(q_commutator(op("P"), op("X"), S) == h, "[P, X]_q != h");
  const OperatorExpr t11 = OperatorExpr(OperatorWord::from_letters("PX")) +
                           OperatorExpr(OperatorWord::from_letters("XP"), Coefficient(q_power(2)));
  const NormalForm expected = normal_order(t11 * Coefficient(q_integer(2), 1), S);
  v.require(q_commutator(op("PP"), op("XX"), S) == expected, "[P^2, X^2]_q != h [2] (PX + q^2 XP)");
  return v;
}

Verdict obstruction() {
  Verdict v;
  const CheckOutcome o = obstruction_report(grid(3));
  require_outcome(v, o, "obstruction");
  const auto* r = find(o, "obstruction");
  v.require(r != nullptr, "report missing");
  v.require(has_witness(r, "P^2 X^3 - q^6 X^3 P^2 = [2] (P X^2 + q^4 X^2 P + q^2 X P X)"),
            "mismatch without h not recorded");
  v.require(!has_witness(r, "P^2 X^3 - q^6 X^3 P^2 = h [2] (P X^2 + q^4 X^2 P + q^2 X P X)"),
            "identity with h fails");
  v.require(!has_witness(r, "[P, P X^2 + q^4 X^2 P + q^2 X P X]_q = h [3] (P X + q^3 X P)"), "[P, T12] fails");
  v.require(has_witness(r, "T11 candidates at generic q"), "q^2 vs q^3 contradiction not exhibited");
  v.require(!has_witness(r, "T11 candidates at q = 1"), "contradiction persists at q = 1");
  return v;
}

Verdict antistandard_verbatim() {
  Verdict v;
  for (int n : {3, 5}) {
    const CheckOutcome o = verify_antistandard_qW(grid(n));
    require_outcome(v, o, "antistandard-qw");
    const auto* r = find(o, "antistandard_qW/verbatim");
    require_full_match(v, r, "verbatim grid " + std::to_string(n));
    if (r) v.require(r->n_cases == (n + 1) * (n + 1) * (n + 1) * (n + 1), "case count");
  }
  v.detail = v.pass ? "256 cases at indices <= 3 and 1296 at indices <= 5" : v.detail;
  return v;
}

Verdict standard_adjudication() {
  Verdict v;
  const CheckOutcome o = verify_standard_qW(grid(3));
  require_outcome(v, o, "standard-qw");
  const auto* r = find(o, "standard_qW/degree_language");
  require_full_match(v, r, "degree language");
  if (r) {
    v.require(r->parameters.contains("reading"), "reading not stated");
    if (v.pass) v.detail = "reading " + r->parameters["reading"].get<std::string>();
  }
  return v;
}

Verdict q1_reductions() {
  Verdict v;
  require_outcome(v, verify_q1_reductions(grid(3)), "q1-reductions");
  const CheckOutcome w = verify_ordinary_Winf(grid(3));
  require_full_match(v, find(w, "ordinary_Winf/sal"), "sal");
  require_full_match(v, find(w, "ordinary_Winf/aal"), "aal");
  return v;
}

Verdict homomorphism() {
  Verdict v;
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti}) {
    const CheckOutcome o = verify_homomorphism(id, grid(3));
    require_outcome(v, o, to_string(id));
    v.require(!o.reports.empty(), "no reports");
    for (const auto& r : o.reports) require_full_match(v, &r, r.check);
  }
  return v;
}

Verdict classical_identity() {
  Verdict v;
  const CheckOutcome o = verify_classical_identity(grid(3));
  require_outcome(v, o, "classical-identity");
  int products = 0;
  for (const auto& r : o.reports) {
    if (r.check.rfind("classical_identity/classical-q-", 0) != 0) continue;
    ++products;
    require_full_match(v, &r, r.check);
    v.require(r.n_cases == 625, r.check + " does not cover indices <= 4");
  }
  v.require(products == 3, "expected three classical products");
  return v;
}

Verdict weyl_sector() {
  Verdict v;
  const CheckOutcome w = verify_ordinary_Winf(grid(3));
  require_outcome(v, w, "ordinary-winf");
  require_full_match(v, find(w, "ordinary_Winf/la1_oracle_agreement"), "oracle agreement");
  const WeylExpansion desk = weyl_commutator_by_symmetrization(3, 0, 0, 3);
  const auto it = desk.find({0, 0});
  v.require(it != desk.end() && it->second == Coefficient(Scalar(Rational(3, 2)), 3),
            "[T30, T03] h^3 coefficient is not 3/2");
  v.require(find(w, "ordinary_Winf/la1_printed_B") != nullptr, "printed B comparison missing");
  const CheckOutcome g = verify_gf_star(grid(3));
  require_outcome(v, g, "gf-star");
  v.require(find(g, "gf_star/printed_gfp") != nullptr, "generic-q comparison missing");
  return v;
}

Verdict h0_cancellation() {
  Verdict v;
  try {
    const CheckOutcome o = verify_h0_cancellation(grid(3));
    require_outcome(v, o, "h0-cancellation");
    for (const auto& r : o.reports) require_full_match(v, &r, r.check);
    require_outcome(v, verify_poisson_consistency(grid(3)), "poisson-consistency");
  } catch (const std::exception& e) {
    v.require(false, e.what());
  }
  return v;
}

Verdict applications() {
  Verdict v;
  const CheckOutcome o = verify_applications(grid(3));
  require_outcome(v, o, "applications");
  int canonical = 0, printed = 0;
  for (const auto& r : o.reports) {
    if (r.check == "point_transform/canonical_pair") {
      ++canonical;
      require_full_match(v, &r, r.check);
    }
    if (r.check == "point_transform/printed_values") ++printed;
  }
  v.require(canonical == 6, "canonical pair not checked for all six exponents");
  v.require(printed == 6, "printed values not reported");
  const SymbolPoly x = SymbolPoly::monomial(0, 1);
  const LeibnizWitness w = leibniz_witness(SymbolPoly::monomial(2, 0), x, x);
  v.require(!w.equal_at_generic_q && w.equal_at_q1, "Leibniz witness");
  for (auto assoc : {Association::left, Association::right, Association::balanced}) {
    v.require(kinetic_transform(1, assoc) == SymbolPoly::monomial(2, 0), "kinetic a = 1");
  }
  return v;
}

Verdict determinism_and_schema() {
  Verdict v;
  const Cli a = cli({"verify-all", "--grid", "3", "--format", "json"});
  const Cli b = cli({"verify-all", "--grid", "3", "--format", "json"});
  v.require(a.code == 0, "verify-all exit code " + std::to_string(a.code));
  v.require(a.out == b.out, "verify-all output differs between runs");
  try {
    const Json j = Json::parse(a.out);
    v.require(j.contains("reports") && j["reports"].is_array() && !j["reports"].empty(), "no reports");
    for (const auto& r : j["reports"]) {
      if (const auto bad = schema_violation(r)) v.require(false, *bad);
    }
    v.require(j["hard_failures"].empty(), "hard failures present");
  } catch (const Json::exception& e) {
    v.require(false, e.what());
  }
  v.require(cli({"normal-order", "P^(1/2)"}).code == 1, "parse error exit code");
  v.require(cli({"bogus"}).code == 1, "usage error exit code");
  v.require(cli({"normal-order", "P X"}).code == 0, "success exit code");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle integrity", oracle_integrity},
      {"base relation and [P^2, X^2]_q", base_relation},
      {"obstruction suite", obstruction},
      {"antistandard closed form, verbatim", antistandard_verbatim},
      {"standard closed form adjudication", standard_adjudication},
      {"q = 1 reductions", q1_reductions},
      {"homomorphism", homomorphism},
      {"classical identity", classical_identity},
      {"Weyl sector", weyl_sector},
      {"h^0 cancellation", h0_cancellation},
      {"applications", applications},
      {"determinism and schema", determinism_and_schema},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failures += !v.pass;
    std::printf("%s  %2d  %s%s%s\n", v.pass ? "PASS" : "FAIL", ++n, name.c_str(), v.detail.empty() ? "" : "  -- ",
                v.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
