#include <vector>

#include "doctest.h"
#include "qmoyal/errors.h"
#include "test_support.h"

using namespace qtest;

namespace {

const Scalar one_q = Scalar(1) + q();

std::vector<SymbolPoly> monomial_grid(int max_degree) {
  std::vector<SymbolPoly> out;
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; n <= max_degree; ++n) out.push_back(mono(m, n));
  return out;
}

OperatorExpr operator_of(Ordering o, const SymbolPoly& f) { return to_expr(quantize(o, f)); }

}  // namespace

TEST_CASE("Jackson derivative") {
  CHECK(q_derivative(Variable::x, mono(0, 2)) == mono(0, 1, coef(one_q)));
  CHECK(q_derivative(Variable::p, mono(0, 3)).is_zero());
  const SymbolPoly half = SymbolPoly::monomial(0, rat(1, 2));
  CHECK(q_derivative(Variable::x, half) ==
        SymbolPoly::monomial(0, rat(-1, 2), coef(Scalar(1) / (Scalar(1) + q(1, 2)))));
  // Difference quotient (f(z) - f(qz)) / ((1 - q) z) on monomials.
  for (int a = -2; a <= 4; ++a) {
    const Scalar quotient = (Scalar(1) - q(a)) / (Scalar(1) - q());
    CHECK(q_derivative(Variable::p, mono(a, 1)) == mono(a - 1, 1, coef(quotient)));
  }
}

TEST_CASE("star product examples") {
  CHECK(star(StarProductId::QStandard, mono(1, 0), mono(0, 2)) ==
        mono(1, 2, coef(q(2))) + mono(0, 1, coef(one_q, 1)));
  CHECK(star(StarProductId::QStandard, mono(0, 1), mono(1, 0)) == mono(1, 1));
  CHECK(star(StarProductId::QAnti, mono(0, 1), mono(1, 0)) ==
        mono(1, 1, coef(q(-1))) + mono(0, 0, coef(-q(-1), 1)));
  CHECK(star(StarProductId::ClassicalQStandard, mono(1, 0), mono(0, 1)) == mono(1, 1, coef(q())));
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int k = 0; k <= 2; ++k)
        for (int l = 0; l <= 2; ++l)
          CHECK(star(StarProductId::ClassicalQStandard, mono(m, n), mono(k, l)) ==
                mono(m + k, n + l, coef(q(m * l))));
  CHECK(star(StarProductId::HbarWeyl, mono(3, 0), mono(0, 3)) ==
        mono(3, 3) + mono(2, 2, coef(Scalar(rat(9, 2)), 1)) + mono(1, 1, coef(Scalar(rat(9, 2)), 2)) +
            mono(0, 0, coef(Scalar(rat(3, 4)), 3)));
  CHECK(to_string(star(StarProductId::QStandard, mono(1, 0), mono(0, 2))) == "q^2 p x^2 + (1+q) h x");
}

TEST_CASE("ordinary star products on the canonical pair") {
  CHECK(star(StarProductId::HbarStandard, mono(1, 0), mono(0, 1)) == mono(1, 1) + mono(0, 0, h()));
  CHECK(star(StarProductId::HbarAnti, mono(0, 1), mono(1, 0)) ==
        mono(1, 1) + mono(0, 0, coef(Scalar(-1), 1)));
  CHECK(star(StarProductId::HbarWeyl, mono(1, 0), mono(0, 1)) ==
        mono(1, 1) + mono(0, 0, coef(Scalar(rat(1, 2)), 1)));
}

TEST_CASE("series termination") {
  const SymbolPoly ph = SymbolPoly::monomial(rat(1, 2), 0);
  const SymbolPoly xh = SymbolPoly::monomial(0, rat(1, 2));
  CHECK_THROWS_AS(star(StarProductId::QStandard, ph, xh), NonTerminatingSeries);
  const QContext truncated{4, 2};
  const SymbolPoly s = star(StarProductId::QStandard, ph, xh, truncated);
  CHECK(s.terms().size() == 3);
  // Only one side fractional: the integer side stops the series.
  CHECK_NOTHROW(star(StarProductId::QStandard, mono(2, 0), xh));
  CHECK_THROWS_AS(star(StarProductId::QStandard, SymbolPoly::monomial(rat(1, 3), 0), mono(0, 1)),
                  NonRepresentableExponent);
}

TEST_CASE("q-Moyal bracket examples") {
  const auto Q = StarProductId::QStandard;
  CHECK(q_moyal_bracket(Q, mono(1, 0), mono(0, 1)) == mono(0, 0));
  CHECK(q_moyal_bracket(Q, mono(1, 0), mono(0, 2)) == mono(0, 1, coef(one_q)));
  CHECK(q_moyal_bracket(Q, mono(2, 1), mono(1, 2)) ==
        mono(2, 2, coef(q(2) * one_q * one_q - q(4))) + mono(1, 1, coef(q() * one_q, 1)));
  for (auto id : all_star_products()) {
    for (const auto& f : monomial_grid(2)) CHECK(q_moyal_bracket(id, f, f).is_zero());
  }
}

TEST_CASE("q-Poisson bracket examples") {
  CHECK(q_poisson_bracket(mono(1, 0), mono(0, 1)) == mono(0, 0));
  CHECK(q_poisson_bracket(mono(2, 0), mono(0, 1)) == mono(1, 0, coef(one_q)));
  CHECK(q_poisson_bracket(mono(2, 0), mono(0, 2)) == mono(1, 1, coef(q() * one_q * one_q)));
}

TEST_CASE("symbol and quantization maps") {
  const auto S = Ordering::standard;
  CHECK(symbol_of(nf(S, {{{2, 1}, 1}})) == mono(1, 2));
  CHECK(symbol_of(nf(S, {{{0, 0}, h()}})) == mono(0, 0, h()));
  CHECK(symbol_of(nf(Ordering::antistandard, {{{2, 1}, 1}})) == mono(2, 1));
  CHECK(symbol_of(normal_order(word("PX"), S)) == mono(1, 1, coef(q())) + mono(0, 0, h()));
  CHECK(quantize(S, mono(1, 2)) == nf(S, {{{2, 1}, 1}}));
  CHECK(to_expr(quantize(S, mono(1, 1))) == word("XP"));
  CHECK_THROWS_AS(quantize(S, SymbolPoly::monomial(0, rat(1, 2))), NonQuantizableExponent);
  CHECK_THROWS_AS(quantize(S, mono(-1, 0)), NonQuantizableExponent);
  for (const auto& f : monomial_grid(3)) {
    for (auto o : {S, Ordering::antistandard}) CHECK(symbol_of(quantize(o, f)) == f);
  }
}

TEST_CASE("star products are symbols of operator products") {
  const auto grid = monomial_grid(3);
  for (const auto& [id, o] : {std::pair{StarProductId::QStandard, Ordering::standard},
                              std::pair{StarProductId::QAnti, Ordering::antistandard}}) {
    for (const auto& f : grid)
      for (const auto& g : grid) {
        const SymbolPoly expected = symbol_of(normal_order(operator_of(o, f) * operator_of(o, g), o));
        CHECK(star(id, f, g) == expected);
      }
  }
}

TEST_CASE("brackets are symbols of q-commutators") {
  const auto grid = monomial_grid(3);
  for (const auto& [id, o] : {std::pair{StarProductId::QStandard, Ordering::standard},
                              std::pair{StarProductId::QAnti, Ordering::antistandard}}) {
    for (const auto& f : grid)
      for (const auto& g : grid) {
        const auto A = LabeledOperator::homogeneous(operator_of(o, f));
        const auto B = LabeledOperator::homogeneous(operator_of(o, g));
        const SymbolPoly expected = divide_exact_h(symbol_of(q_commutator(A, B, o)));
        CHECK(q_moyal_bracket(id, f, g) == expected);
      }
  }
}

TEST_CASE("classical q-star products satisfy the weighted commutation rule") {
  for (auto id : {StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti,
                  StarProductId::ClassicalQWeyl}) {
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k)
          for (int l = 0; l <= 4; ++l) {
            const SymbolPoly f = mono(m, n), g = mono(k, l);
            CHECK((star(id, f, g) * coef(q(n * k)) - star(id, g, f) * coef(q(m * l))).is_zero());
          }
  }
}

TEST_CASE("q = 1 reduction") {
  const auto grid = monomial_grid(4);
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF}) {
    for (const auto& f : grid)
      for (const auto& g : grid) CHECK(eval_q1(star(id, f, g)) == star(hbar_counterpart(id), f, g));
  }
  for (auto id : {StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti,
                  StarProductId::ClassicalQWeyl}) {
    for (const auto& f : grid)
      for (const auto& g : grid) CHECK(eval_q1(star(id, f, g)) == f * g);
  }
}

TEST_CASE("Jacobi identity for the undeformed Weyl bracket") {
  const auto grid = monomial_grid(2);
  const auto id = StarProductId::HbarWeyl;
  for (const auto& f : grid)
    for (const auto& g : grid)
      for (const auto& k : grid) {
        const SymbolPoly jac = q_moyal_bracket(id, f, q_moyal_bracket(id, g, k)) +
                               q_moyal_bracket(id, g, q_moyal_bracket(id, k, f)) +
                               q_moyal_bracket(id, k, q_moyal_bracket(id, f, g));
        CHECK(jac.is_zero());
      }
}

TEST_CASE("associativity of the ordered q-star products") {
  const auto grid = monomial_grid(3);
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti}) {
    for (const auto& f : grid)
      for (const auto& g : grid)
        for (const auto& k : grid) CHECK(star(id, star(id, f, g), k) == star(id, f, star(id, g, k)));
  }
}

TEST_CASE("Poisson bracket is the classical limit of the Moyal bracket") {
  const auto grid = monomial_grid(3);
  for (const auto& f : grid)
    for (const auto& g : grid)
      CHECK(q_poisson_bracket(f, g) == eval_h0(q_moyal_bracket(StarProductId::QStandard, f, g)));
  const SymbolPoly f = mono(2, 1) + mono(0, 3, coef(q(1, 2)));
  const SymbolPoly g = mono(1, 2, coef(3)) + mono(1, 0);
  CHECK(q_poisson_bracket(f, g) == eval_h0(q_moyal_bracket(StarProductId::QStandard, f, g)));
}

TEST_CASE("star powers of truncated series") {
  const auto Q = StarProductId::QStandard;
  const TruncatedSeries unit(3, {mono(0, 0)});
  for (int n = 1; n <= 4; ++n) CHECK(star_power(Q, unit, n, Association::left) == unit);
  const TruncatedSeries f(2, {mono(0, 0), mono(1, 0)});
  const TruncatedSeries expected(2, {mono(0, 0), mono(1, 0, 2), mono(2, 0)});
  CHECK(star_power(Q, f, 2, Association::left) == expected);
  CHECK(to_string(expected) == "1 + 2 t p + t^2 p^2");
  const TruncatedSeries g(3, {mono(0, 0), mono(1, 1) + mono(2, 0), mono(0, 2)});
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti}) {
    const auto left = star_power(id, g, 4, Association::left);
    CHECK(star_power(id, g, 4, Association::right) == left);
    CHECK(star_power(id, g, 4, Association::balanced) == left);
  }
  CHECK_THROWS(star_power(Q, f, 0, Association::left));
}

TEST_CASE("product names round trip") {
  for (auto id : all_star_products()) CHECK(star_product_from_string(to_string(id)) == id);
  CHECK_THROWS(star_product_from_string("moyal"));
  CHECK(association_from_string("balanced") == Association::balanced);
}
