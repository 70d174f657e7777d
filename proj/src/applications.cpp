#include "qmoyal/applications.h"

#include <stdexcept>

namespace qmoyal {

namespace {

SymbolPoly mono(const Rational& p, const Rational& x, const Coefficient& c = Coefficient(1)) {
  return SymbolPoly::monomial(p, x, c);
}

Json with_product(Json params, StarProductId id) {
  params["product"] = to_string(id);
  return params;
}

}  // namespace

// Point transformations ----------------------------------------------------

PointTransform PointTransform::make(const Rational& a, const QContext& ctx) {
  if (a == 0) throw std::invalid_argument("point transform needs a nonzero exponent");
  require_representable(a, ctx);
  const Scalar inv = q_integer(a, ctx).inverse();
  return PointTransform{a, mono(0, a), mono(1, 1 - a, Coefficient(inv))};
}

PointTransformBrackets point_transform_brackets(const PointTransform& t, const QContext& ctx) {
  const SymbolPoly x = mono(0, 1), p = mono(1, 0);
  return PointTransformBrackets{q_poisson_bracket(t.u, t.p_u, ctx), q_poisson_bracket(t.p_u, t.u, ctx),
                                q_poisson_bracket(x, p, ctx), q_poisson_bracket(p, x, ctx)};
}

CheckOutcome point_transform_bracket_report(const Rational& a, const QContext& ctx) {
  const PointTransform t = PointTransform::make(a, ctx);
  const PointTransformBrackets b = point_transform_brackets(t, ctx);
  Json params;
  params["a"] = a.get_str();
  params["root_denominator"] = ctx.root_denominator;
  params["bracket"] = "q-poisson";
  const SymbolPoly one = mono(0, 0);

  CheckOutcome out;
  ConformanceReport asserted("point_transform/canonical_pair", params);
  asserted.record_strings(b.p_x == one, "{p,x}", "1", to_string(b.p_x));
  asserted.record_strings(b.pu_u == one, "{p_u,u}", "1", to_string(b.pu_u));
  out.require_all(asserted);

  ConformanceReport printed("point_transform/printed_values", params);
  const SymbolPoly printed_x_p = mono(0, 0, Coefficient(-q_power(1, ctx)));
  const SymbolPoly printed_u_pu = mono(0, 0, Coefficient(-q_power(a, ctx)));
  printed.record_strings(b.x_p == printed_x_p, "{x,p}", to_string(printed_x_p), to_string(b.x_p));
  printed.record_strings(b.u_pu == printed_u_pu, "{u,p_u}", to_string(printed_u_pu), to_string(b.u_pu));
  if (!printed.all_match()) {
    printed.derived_correction = "{x,p} = " + to_string(b.x_p) + ", {u,p_u} = " + to_string(b.u_pu) +
                                 " under the pairwise weight q^{x-deg f * p-deg g}";
  }
  out.record(printed);

  out.notes.push_back("point transform a = " + a.get_str() + ": u = " + to_string(t.u) +
                      ", p_u = " + to_string(t.p_u));
  if (a == make_rational(1, 2)) {
    out.notes.push_back(
        "context: the same map is q-canonical at operator level when p x - q x p = h and "
        "p_u u - q^(1/2) u p_u = h");
  }
  return out;
}

// Equations of motion --------------------------------------------------------

std::string to_string(BracketFlavor f) {
  switch (f) {
    case BracketFlavor::poisson: return "q-poisson";
    case BracketFlavor::moyal_standard: return "q-moyal-standard";
    case BracketFlavor::moyal_anti: return "q-moyal-anti";
  }
  throw std::logic_error("unknown bracket flavor");
}

SymbolPoly tau_q(const SymbolPoly& hamiltonian, const SymbolPoly& f, BracketFlavor flavor,
                 const QContext& ctx) {
  switch (flavor) {
    case BracketFlavor::poisson: return q_poisson_bracket(hamiltonian, f, ctx);
    case BracketFlavor::moyal_standard:
      return q_moyal_bracket(StarProductId::QStandard, hamiltonian, f, ctx);
    case BracketFlavor::moyal_anti: return q_moyal_bracket(StarProductId::QAnti, hamiltonian, f, ctx);
  }
  throw std::logic_error("unknown bracket flavor");
}

LeibnizWitness leibniz_witness(const SymbolPoly& hamiltonian, const SymbolPoly& f, const SymbolPoly& g,
                               BracketFlavor flavor, const QContext& ctx) {
  LeibnizWitness w;
  w.lhs = tau_q(hamiltonian, f * g, flavor, ctx);
  w.rhs = tau_q(hamiltonian, f, flavor, ctx) * g + f * tau_q(hamiltonian, g, flavor, ctx);
  w.equal_at_generic_q = w.lhs == w.rhs;
  w.equal_at_q1 = eval_q1(w.lhs) == eval_q1(w.rhs);
  return w;
}

CheckOutcome leibniz_report(const QContext& ctx) {
  const SymbolPoly p = mono(1, 0), x = mono(0, 1);
  Json params;
  params["root_denominator"] = ctx.root_denominator;
  params["bracket"] = to_string(BracketFlavor::poisson);
  CheckOutcome out;

  const LeibnizWitness main = leibniz_witness(p * p, x, x, BracketFlavor::poisson, ctx);
  out.require(!main.equal_at_generic_q, "leibniz: H = p^2, f = g = x should violate Leibniz at generic q");
  out.require(main.equal_at_q1, "leibniz: H = p^2, f = g = x should satisfy Leibniz at q = 1");
  out.notes.push_back("leibniz H = p^2, f = g = x: tau(fg) = " + to_string(main.lhs) +
                      ", tau(f) g + f tau(g) = " + to_string(main.rhs));

  const LeibnizWitness constant_f = leibniz_witness(p * p, mono(0, 0, 2), x, BracketFlavor::poisson, ctx);
  out.require(constant_f.equal_at_generic_q, "leibniz: constant f must satisfy Leibniz");
  const LeibnizWitness constant_h = leibniz_witness(mono(0, 0, 5), x, p, BracketFlavor::poisson, ctx);
  out.require(constant_h.lhs.is_zero() && constant_h.rhs.is_zero(),
              "leibniz: constant H must give zero on both sides");

  const std::vector<std::pair<std::string, SymbolPoly>> hamiltonians = {
      {"p^2", p * p}, {"p x", p * x}, {"p^2 x + x", p * p * x + x}};
  const std::vector<std::pair<std::string, SymbolPoly>> observables = {
      {"x", x}, {"p", p}, {"p x", p * x}, {"x^2", x * x}, {"2", mono(0, 0, 2)}};
  ConformanceReport q1("leibniz/q1_limit", params);
  ConformanceReport generic("leibniz/generic_q", params);
  for (const auto& [hn, h] : hamiltonians) {
    for (const auto& [fn, f] : observables) {
      for (const auto& [gn, g] : observables) {
        const LeibnizWitness w = leibniz_witness(h, f, g, BracketFlavor::poisson, ctx);
        const std::string label = "H=" + hn + " f=" + fn + " g=" + gn;
        q1.record(w.equal_at_q1, label, [&] { return to_string(eval_q1(w.rhs)); },
                  [&] { return to_string(eval_q1(w.lhs)); });
        generic.record(w.equal_at_generic_q, label, [&] { return to_string(w.rhs); },
                       [&] { return to_string(w.lhs); });
      }
    }
  }
  out.require_all(q1);
  out.record(generic);
  return out;
}

// Kinetic term ---------------------------------------------------------------

std::vector<SymbolPoly> kinetic_factors(const Rational& a, const QContext& ctx) {
  const Scalar qa = q_integer(a, ctx);
  if (qa.is_zero()) throw std::invalid_argument("kinetic transform needs a nonzero exponent");
  const Scalar kappa = Scalar::kappa(qa.rational_part());
  const SymbolPoly root_inv = mono(0, (1 - a) / 2, Coefficient(kappa / qa));
  const SymbolPoly p = mono(1, 0);
  const SymbolPoly inv_sq = mono(0, 2 * (1 - a), Coefficient((qa * qa).inverse()));
  const SymbolPoly deriv = mono(0, a - 1, Coefficient(qa));
  for (const SymbolPoly* f : {&root_inv, &inv_sq, &deriv}) {
    for (const auto& [m, c] : f->terms()) require_representable(m.x, ctx);
  }
  return {root_inv, p, inv_sq, deriv, p, root_inv};
}

SymbolPoly kinetic_transform(const Rational& a, Association assoc, const QContext& ctx) {
  return star_fold(StarProductId::QStandard, kinetic_factors(a, ctx), assoc, ctx);
}

CheckOutcome kinetic_report(const Rational& a, const QContext& ctx) {
  Json params;
  params["a"] = a.get_str();
  params["root_denominator"] = ctx.root_denominator;
  params["product"] = to_string(StarProductId::QStandard);
  CheckOutcome out;
  std::map<Association, SymbolPoly> results;
  for (auto assoc : {Association::left, Association::right, Association::balanced}) {
    results[assoc] = kinetic_transform(a, assoc, ctx);
    out.require(!results[assoc].has_kappa(),
                "kinetic a=" + a.get_str() + ": " + to_string(assoc) + " fold left a kappa behind");
    out.notes.push_back("kinetic a = " + a.get_str() + " (" + to_string(assoc) +
                        "): " + to_string(results[assoc]));
  }
  ConformanceReport agree("kinetic/association_independence", params);
  const SymbolPoly& left = results[Association::left];
  for (auto assoc : {Association::right, Association::balanced}) {
    const SymbolPoly& other = results[assoc];
    agree.record(other == left, "left vs " + to_string(assoc), [&] { return to_string(left); },
                 [&] { return to_string(other); });
    if (other != left) {
      out.notes.push_back("kinetic a = " + a.get_str() + ": left - " + to_string(assoc) + " = " +
                          to_string(left - other));
    }
  }
  out.record(agree);
  if (a == 1) {
    for (const auto& [assoc, r] : results) {
      out.require(r == mono(2, 0), "kinetic a=1 (" + to_string(assoc) + ") is not p^2");
    }
  }
  return out;
}

// Path integral --------------------------------------------------------------

TruncatedSeries evolution_symbol(const SymbolPoly& hamiltonian, int n_slices, int order,
                                 StarProductId id, Association assoc, const QContext& ctx) {
  if (n_slices < 1) throw std::invalid_argument("need at least one time slice");
  TruncatedSeries u(order);
  Rational scale = 1;
  for (int j = 0; j <= order; ++j) {
    const std::vector<SymbolPoly> factors(static_cast<std::size_t>(j), hamiltonian);
    u.set(j, star_fold(id, factors, assoc, ctx) * Coefficient(Scalar(scale)));
    scale *= make_rational(-1, n_slices) / (j + 1);
  }
  return u;
}

TruncatedSeries path_integral_compose(const SymbolPoly& hamiltonian, int n_slices, int order,
                                      StarProductId id, Association assoc, const QContext& ctx) {
  const TruncatedSeries u = evolution_symbol(hamiltonian, n_slices, order, id, assoc, ctx);
  return star_power(id, u, n_slices, assoc, ctx);
}

CheckOutcome path_integral_report(int order, Association assoc, const QContext& ctx) {
  const auto id = StarProductId::QStandard;
  const SymbolPoly p = mono(1, 0), x = mono(0, 1);
  Json params;
  params["truncation"] = order;
  params["association"] = to_string(assoc);
  params["product"] = to_string(id);
  params["variable"] = "t' = t/h";
  CheckOutcome out;

  const TruncatedSeries zero = path_integral_compose(SymbolPoly(), 3, order, id, assoc, ctx);
  out.require(zero == TruncatedSeries(order, {mono(0, 0)}), "path integral: H = 0 must give 1");

  const Rational c = 3;
  TruncatedSeries expo(order);
  Rational term = 1;
  for (int j = 0; j <= order; ++j) {
    expo.set(j, mono(0, 0, Coefficient(Scalar(term))));
    term *= -c / (j + 1);
  }
  const TruncatedSeries constant = path_integral_compose(mono(0, 0, 3), 2, order, id, assoc, ctx);
  out.require(constant == expo, "path integral: constant H must give the exponential series");

  const TruncatedSeries p1 = path_integral_compose(p, 1, order, id, assoc, ctx);
  const TruncatedSeries p2 = path_integral_compose(p, 2, order, id, assoc, ctx);
  out.require(p1 == p2, "path integral: H = p must not depend on the slicing");

  const SymbolPoly px = p * x;
  const TruncatedSeries n1 = path_integral_compose(px, 1, order, id, assoc, ctx);
  const TruncatedSeries n2 = path_integral_compose(px, 2, order, id, assoc, ctx);
  ConformanceReport slicing("path_integral/slicing_H=px", params);
  for (int k = 1; k <= order; ++k) {
    slicing.record(n1[k] == n2[k], "t'^" + std::to_string(k) + " N=1 vs N=2",
                   [&] { return to_string(n1[k]); }, [&] { return to_string(n2[k]); });
  }
  out.record(slicing);
  out.notes.push_back("path integral (finite N, truncated; N -> infinity is not taken), H = p x:");
  out.notes.push_back("  N = 1: " + to_string(n1, "t'"));
  out.notes.push_back("  N = 2: " + to_string(n2, "t'"));

  // The Weyl-type product is not associative, so the slicing can matter there.
  if (ctx.root_denominator % 2 == 0) {
    const auto gf = StarProductId::QWeylGF;
    const TruncatedSeries g1 = path_integral_compose(px, 1, order, gf, assoc, ctx);
    const TruncatedSeries g2 = path_integral_compose(px, 2, order, gf, assoc, ctx);
    ConformanceReport gf_slicing("path_integral/slicing_H=px", with_product(params, gf));
    for (int k = 1; k <= order; ++k) {
      gf_slicing.record(g1[k] == g2[k], "t'^" + std::to_string(k) + " N=1 vs N=2",
                        [&] { return to_string(g1[k]); }, [&] { return to_string(g2[k]); });
    }
    out.record(gf_slicing);
  }
  return out;
}

}  // namespace qmoyal
