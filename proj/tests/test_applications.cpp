#include "doctest.h"
#include "qmoyal/applications.h"
#include "qmoyal/errors.h"
#include "test_support.h"

using namespace qtest;

namespace {

const Scalar one_q = Scalar(1) + q();

QContext ctx_for(const Rational& a) {
  return QContext{a.get_den() == 3 ? 6 : 2, -1};
}

}  // namespace

TEST_CASE("point transformations keep the canonical pair") {
  for (const Rational& a : {rat(-1), rat(1, 3), rat(1, 2), rat(1), rat(2), rat(3)}) {
    CAPTURE(to_string(a));
    const QContext ctx = ctx_for(a);
    const PointTransform t = PointTransform::make(a, ctx);
    CHECK(t.u == SymbolPoly::monomial(0, a));
    CHECK(t.p_u == SymbolPoly::monomial(1, 1 - a, coef(q_integer(a, ctx).inverse())));
    const PointTransformBrackets b = point_transform_brackets(t, ctx);
    CHECK(b.p_x == SymbolPoly(Coefficient(1)));
    CHECK(b.pu_u == SymbolPoly(Coefficient(1)));
    CHECK(b.x_p == SymbolPoly(Coefficient(-1)));
    CHECK(b.u_pu == SymbolPoly(Coefficient(-1)));
    const CheckOutcome out = point_transform_bracket_report(a, ctx);
    CHECK(out.ok());
  }
  CHECK_THROWS_AS(PointTransform::make(rat(1, 3), QContext{}), NonRepresentableExponent);
}

TEST_CASE("equations of motion") {
  // {H, x} for H = p^2 is [2] p in every flavor at h^0.
  CHECK(tau_q(mono(2, 0), mono(0, 1), BracketFlavor::poisson) == mono(1, 0, coef(one_q)));
  CHECK(tau_q(mono(2, 0), mono(0, 1), BracketFlavor::moyal_standard) == mono(1, 0, coef(one_q)));
  CHECK(tau_q(mono(0, 0, Coefficient(5)), mono(3, 2), BracketFlavor::poisson).is_zero());
}

TEST_CASE("Leibniz defect for H = p^2, f = g = x") {
  const LeibnizWitness w = leibniz_witness(mono(2, 0), mono(0, 1), mono(0, 1));
  CHECK(w.lhs == mono(1, 1, coef(q(1) * one_q * one_q)));
  CHECK(w.rhs == mono(1, 1, coef(Scalar(2) * one_q)));
  CHECK_FALSE(w.equal_at_generic_q);
  CHECK(w.equal_at_q1);
  CHECK(leibniz_report().ok());
}

TEST_CASE("kinetic term") {
  for (auto assoc : {Association::left, Association::right, Association::balanced}) {
    CHECK(kinetic_transform(rat(1), assoc) == mono(2, 0));
  }
  const QContext ctx{4, -1};
  const SymbolPoly left = kinetic_transform(rat(1, 2), Association::left, ctx);
  CHECK_FALSE(left.has_kappa());
  CHECK(left.terms().size() == 3);
  CHECK(left.terms().count(SymbolMonomial{rat(2), rat(1)}) == 1);
  // Classically p_u^2 = 4 x p^2 for u = x^(1/2).
  CHECK(left.terms().at(SymbolMonomial{rat(2), rat(1)}) == coef(q(1) + Scalar(2) * q(3, 2) + q(2)));
  CHECK(eval_q1(eval_h0(left)) == mono(2, 1, Coefficient(4)));
  CHECK(kinetic_report(rat(1)).ok());
}

TEST_CASE("evolution symbols") {
  const SymbolPoly px = mono(1, 1);
  const auto qs = StarProductId::QStandard;
  const TruncatedSeries zero = path_integral_compose(SymbolPoly(), 2, 4, qs, Association::left);
  CHECK(zero[0] == SymbolPoly(Coefficient(1)));
  for (int k = 1; k <= 4; ++k) CHECK(zero[k].is_zero());

  // Constant H = c: exp(-c t').
  const TruncatedSeries c = path_integral_compose(SymbolPoly(Coefficient(3)), 3, 4, qs, Association::left);
  Rational term = 1;
  for (int k = 0; k <= 4; ++k) {
    CHECK(c[k] == SymbolPoly(Coefficient(Scalar(term))));
    term *= Rational(-3) / (k + 1);
  }

  const TruncatedSeries u1 = path_integral_compose(px, 1, 3, qs, Association::left);
  CHECK(u1[1] == -px);
  CHECK(u1[2] == star(qs, px, px) * Coefficient(Scalar(rat(1, 2))));
  // An associative product leaves the slicing invisible.
  CHECK(path_integral_compose(px, 2, 3, qs, Association::left) == u1);
  CHECK(path_integral_compose(px, 3, 3, qs, Association::balanced) == u1);
  CHECK(path_integral_report(4, Association::left).ok());
}
