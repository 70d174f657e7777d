#include <map>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "qmoyal/conformance.h"
#include "test_support.h"

using namespace qtest;

namespace {

// Faithful representation of PX - qXP = h on polynomials in z: X is
// multiplication by z and P is h times the Jackson derivative.
using ZPoly = std::map<int, Coefficient>;

ZPoly act(const OperatorExpr& e, int n) {
  ZPoly total;
  for (const auto& [w, c] : e.terms()) {
    ZPoly v{{n, c}};
    const auto& f = w.factors();
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
      for (int i = 0; i < it->power; ++i) {
        ZPoly next;
        for (const auto& [k, ck] : v) {
          if (it->letter == Letter::X) {
            next[k + 1] += ck;
          } else if (k > 0) {
            next[k - 1] += ck * Coefficient(q_integer(k), 1);
          }
        }
        v = std::move(next);
      }
    }
    for (const auto& [k, ck] : v) total[k] += ck;
  }
  std::erase_if(total, [](const auto& kv) { return kv.second.is_zero(); });
  return total;
}

bool same_action(const OperatorExpr& a, const OperatorExpr& b) {
  for (int n = 0; n <= 8; ++n) {
    if (act(a, n) != act(b, n)) return false;
  }
  return true;
}

OperatorExpr basis(Ordering o, int a, int b) { return OperatorExpr(OperatorWord::ordered(o, a, b)); }

// q^{x(A) p(B)} AB - q^{p(A) x(B)} BA built directly from the words.
OperatorExpr weighted_commutator(Ordering o, int a, int b, int c, int d) {
  const auto A = basis(o, a, b), B = basis(o, c, d);
  const int xa = o == Ordering::standard ? a : b, pa = o == Ordering::standard ? b : a;
  const int xb = o == Ordering::standard ? c : d, pb = o == Ordering::standard ? d : c;
  return A * B * Coefficient(q(xa * pb)) - B * A * Coefficient(q(pa * xb));
}

// Ordinary Weyl-Moyal product on monomials over Q[h]: keys (p, x, h-power).
using WPoly = std::map<std::tuple<int, int, int>, Rational>;

Rational falling(int n, int k) {
  if (k > n) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

WPoly weyl_product(int m, int n, int k, int l) {
  WPoly out;
  for (int s = 0; s <= m + n + k + l; ++s) {
    Rational pref = 1;
    for (int i = 1; i <= s; ++i) pref *= Rational(1, 2) / i;
    for (int j = 0; j <= s; ++j) {
      // (d_p^{s-j} d_x^j f)(d_x^{s-j} d_p^j g), sign (-1)^j, times binom(s, j).
      const Rational c = pref * binomial(s, j) * falling(m, s - j) * falling(n, j) * falling(l, s - j) *
                         falling(k, j) * (j % 2 ? -1 : 1);
      if (c == 0) continue;
      out[{m - (s - j) + k - j, n - j + l - (s - j), s}] += c;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

WeylExpansion weyl_commutator_oracle(int m, int n, int k, int l) {
  WPoly diff = weyl_product(m, n, k, l);
  for (const auto& [key, c] : weyl_product(k, l, m, n)) diff[key] -= c;
  WeylExpansion out;
  for (const auto& [key, c] : diff) {
    if (c == 0) continue;
    const auto [p, x, s] = key;
    out[{p, x}] += Coefficient(Scalar(c), s);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace

TEST_CASE("representation oracle reproduces the base relation") {
  const auto px = word("PX"), xp = word("XP");
  CHECK(same_action(px - xp * Coefficient(q()), OperatorExpr(h())));
  CHECK_FALSE(same_action(px, xp));
  // [P^2, X^2]_q = h [2] (PX + q^2 XP)
  CHECK(same_action(weighted_commutator(Ordering::standard, 0, 2, 2, 0),
                    (px + xp * Coefficient(q(2))) * coef(Scalar(1) + q(), 1)));
}

TEST_CASE("antistandard closed form matches the representation, indices <= 3") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d) {
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(c);
          CAPTURE(d);
          const NormalForm nf = bracket_from_constants(Ordering::antistandard, a, b, c, d, qaal_constants(a, b, c, d));
          CHECK(same_action(to_expr(nf), weighted_commutator(Ordering::antistandard, a, b, c, d)));
        }
}

TEST_CASE("standard closed form: transposed exponents match, verbatim does not") {
  int verbatim_matches = 0;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d) {
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(c);
          CAPTURE(d);
          const auto target = weighted_commutator(Ordering::standard, a, b, c, d);
          const auto transposed = qsal_constants(a, b, c, d, QsalReading::exponents_transposed);
          CHECK(same_action(to_expr(bracket_from_constants(Ordering::standard, a, b, c, d, transposed)), target));
          const auto verbatim = qsal_constants(a, b, c, d, QsalReading::verbatim);
          verbatim_matches +=
              same_action(to_expr(bracket_from_constants(Ordering::standard, a, b, c, d, verbatim)), target);
        }
  CHECK(verbatim_matches == 116);
  // Smallest witness: [P, X P]_q = h P, the verbatim reading gives q h P.
  CHECK(qsal_constants(0, 1, 1, 1, QsalReading::verbatim) == StructureConstants{{1, coef(q())}});
  CHECK(qsal_constants(0, 1, 1, 1, QsalReading::exponents_transposed) == StructureConstants{{1, Coefficient(1)}});
}

TEST_CASE("q = 1 closed forms") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (int d = 0; d <= 3; ++d) {
          auto at_one = [](StructureConstants s) {
            for (auto& [r, c] : s) c = eval_q1(c);
            std::erase_if(s, [](const auto& kv) { return kv.second.is_zero(); });
            return s;
          };
          CHECK(at_one(qaal_constants(a, b, c, d)) == aal_constants(a, b, c, d));
          CHECK(at_one(qsal_constants(a, b, c, d, QsalReading::exponents_transposed)) == sal_constants(a, b, c, d));
        }
}

TEST_CASE("Weyl-basis commutators against an independent Moyal expansion") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) {
          CAPTURE(m);
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(l);
          const WeylExpansion oracle = weyl_commutator_oracle(m, n, k, l);
          CHECK(weyl_commutator_by_symmetrization(m, n, k, l) == oracle);
          CHECK(weyl_commutator_by_moyal(m, n, k, l) == oracle);
          CHECK(weyl_commutator_by_formula(m, n, k, l, BReading::corrected) == oracle);
        }
}

TEST_CASE("printed B on the desk case [T_{3,0}, T_{0,3}]") {
  CHECK(la1_upper_limit(3, 0, 0, 3) == 1);
  const WeylExpansion oracle = weyl_commutator_oracle(3, 0, 0, 3);
  CHECK(oracle.at({0, 0}) == coef(Scalar(rat(3, 2)), 3));
  CHECK(oracle.at({2, 2}) == coef(Scalar(9), 1));
  CHECK(la1_b(3, 0, 0, 3, 0, BReading::printed) == 9);
  CHECK(la1_b(3, 0, 0, 3, 1, BReading::printed) == 18);
  CHECK(la1_b(3, 0, 0, 3, 1, BReading::corrected) == rat(3, 2));
}

TEST_CASE("printed generic-q Weyl coefficient") {
  CHECK(gfp_coefficient(0, 1, 1, 0, 0) == Scalar(-1));
  CHECK(gfp_coefficient(2, 1, 1, 2, 0) == q(1) * Scalar(2) + q(2));
  CHECK(gfp_coefficient(0, 0, 1, 2, 0).is_zero());
}

TEST_CASE("obstruction report") {
  const CheckOutcome out = obstruction_report(CheckOptions{});
  CHECK(out.ok());
  REQUIRE(out.reports.size() == 1);
  CHECK(out.reports[0].n_cases == 6);
  CHECK(out.reports[0].n_match == 4);
}

TEST_CASE("report schema") {
  CheckOptions opt;
  opt.grid = 2;
  for (const char* name : {"obstruction", "standard-qw", "gf-star", "applications"}) {
    CAPTURE(name);
    const CheckOutcome out = run_check(name, opt);
    CHECK(out.ok());
    for (const auto& r : out.reports) {
      const auto violation = schema_violation(to_json(r));
      CHECK_MESSAGE(!violation, r.check << ": " << violation.value_or(""));
    }
  }

  ConformanceReport r("demo", Json::object());
  r.record_strings(true, "a", "1", "1");
  CHECK_FALSE(schema_violation(to_json(r)));
  Json j = to_json(r);
  j["extra"] = 1;
  CHECK(schema_violation(j));
  j = to_json(r);
  j["n_match"] = 2;
  CHECK(schema_violation(j));
  r.record_strings(false, "b", "1", "2");
  j = to_json(r);
  CHECK_FALSE(schema_violation(j));
  j["witnesses"] = Json::array();
  CHECK(schema_violation(j));
}

TEST_CASE("witness list is capped") {
  ConformanceReport r("cap", Json::object());
  for (int i = 0; i < 40; ++i) r.record_strings(false, std::to_string(i), "x", "y");
  CHECK(r.n_cases == 40);
  CHECK(r.n_match == 0);
  CHECK(r.witnesses.size() == ConformanceReport::witness_limit);
}

TEST_CASE("checks are deterministic") {
  CheckOptions opt;
  opt.grid = 2;
  for (const char* name : {"oracle-integrity", "jacobiator", "applications"}) {
    CAPTURE(name);
    CHECK(to_json(run_check(name, opt)).dump() == to_json(run_check(name, opt)).dump());
  }
  CHECK_THROWS_AS(run_check("no-such-check", opt), std::invalid_argument);
}
