#include "qmoyal/conformance.h"

#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qmoyal/applications.h"
#include "qmoyal/errors.h"

namespace qmoyal {

std::string to_string(StructureConstantFormula f) {
  switch (f) {
    case StructureConstantFormula::SAL: return "SAL";
    case StructureConstantFormula::AAL: return "AAL";
    case StructureConstantFormula::LA1_B: return "LA1_B";
    case StructureConstantFormula::QSAL: return "QSAL";
    case StructureConstantFormula::QAAL: return "QAAL";
    case StructureConstantFormula::GFP: return "GFP";
  }
  throw std::logic_error("unknown formula");
}

std::string to_string(QsalReading r) {
  return r == QsalReading::verbatim ? "verbatim" : "exponents_transposed";
}

std::string to_string(BReading r) { return r == BReading::printed ? "printed" : "corrected"; }

namespace {

std::string case_label(int a, int b, int c, int d) {
  std::ostringstream s;
  s << "(" << a << "," << b << "," << c << "," << d << ")";
  return s.str();
}

Json base_params(const CheckOptions& opt) {
  Json j;
  j["grid"] = opt.grid;
  j["root_denominator"] = opt.ctx.root_denominator;
  return j;
}

Json with(Json j, const std::string& key, const Json& value) {
  j[key] = value;
  return j;
}

template <typename F>
void for_grid(int grid, F&& f) {
  for (int a = 0; a <= grid; ++a)
    for (int b = 0; b <= grid; ++b)
      for (int c = 0; c <= grid; ++c)
        for (int d = 0; d <= grid; ++d) f(a, b, c, d);
}

SymbolPoly mono(int p, int x) { return SymbolPoly::monomial(p, x); }

std::vector<SymbolPoly> monomials_up_to(int grid) {
  std::vector<SymbolPoly> out;
  for (int m = 0; m <= grid; ++m)
    for (int n = 0; n <= grid; ++n) out.push_back(mono(m, n));
  return out;
}

std::string mono_label(const SymbolPoly& f) {
  const std::string s = to_string(f);
  return s;
}

void add_constant(StructureConstants& sc, int r, const Scalar& s) {
  if (!s.is_zero()) sc[r] = Coefficient(s);
}

int max_r(int a, int b, int c, int d) { return std::max(std::max(a, b), std::max(c, d)); }

std::string to_string(const WeylExpansion& e) {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    append_terms(parts, it->second,
                 "T_{" + std::to_string(it->first.first) + "," + std::to_string(it->first.second) + "}");
  }
  return render_sum(parts);
}

Rational floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

// Printed formulas -----------------------------------------------------------

StructureConstants sal_constants(int a, int b, int c, int d) {
  StructureConstants sc;
  for (int r = 1; r <= max_r(a, b, c, d); ++r) {
    add_constant(sc, r, Scalar(factorial(r) * (binomial(c, r) * binomial(b, r) - binomial(a, r) * binomial(d, r))));
  }
  return sc;
}

StructureConstants aal_constants(int a, int b, int c, int d) {
  StructureConstants sc;
  for (int r = 1; r <= max_r(a, b, c, d); ++r) {
    Rational v = factorial(r) * (binomial(c, r) * binomial(b, r) - binomial(a, r) * binomial(d, r));
    if (r % 2 == 1) v = -v;
    add_constant(sc, r, Scalar(v));
  }
  return sc;
}

StructureConstants qsal_constants(int a, int b, int c, int d, QsalReading reading,
                                  const QContext& ctx) {
  // Printed symbols: n = a, m = b, k = c, l = d.
  const int n = a, m = b, k = c, l = d;
  StructureConstants sc;
  for (int r = 1; r <= max_r(a, b, c, d); ++r) {
    long e1, e2;
    if (reading == QsalReading::verbatim) {
      e1 = static_cast<long>(k - r) * (n - r) + static_cast<long>(m) * l;
      e2 = static_cast<long>(m - r) * (l - r) + static_cast<long>(n) * k;
    } else {
      e1 = static_cast<long>(k - r) * (m - r) + static_cast<long>(n) * l;
      e2 = static_cast<long>(n - r) * (l - r) + static_cast<long>(m) * k;
    }
    const Scalar first = q_power(e1, ctx) * q_binomial(k, r) * q_binomial(m, r);
    const Scalar second = q_power(e2, ctx) * q_binomial(n, r) * q_binomial(l, r);
    add_constant(sc, r, q_factorial(r) * (first - second));
  }
  return sc;
}

StructureConstants qaal_constants(int a, int b, int c, int d, const QContext& ctx) {
  const int n = a, m = b, k = c, l = d;
  StructureConstants sc;
  for (int r = 1; r <= max_r(a, b, c, d); ++r) {
    Scalar v = q_power(make_rational(static_cast<long>(r) * (r - 1), 2), ctx) * q_factorial(r) *
               (q_binomial(k, r) * q_binomial(m, r) - q_binomial(n, r) * q_binomial(l, r));
    if (r % 2 == 1) v = -v;
    add_constant(sc, r, v);
  }
  return sc;
}

int la1_upper_limit(int m, int n, int k, int l) {
  return static_cast<int>(to_long(std::min(floor_div2(m + k - 1), floor_div2(n + l - 1))));
}

Rational la1_b(int m, int n, int k, int l, int a, BReading reading) {
  if ((m == 0 && n == 0) || (k == 0 && l == 0)) return 0;
  const int b = la1_upper_limit(m, n, k, l);
  const Rational top = factorial(m) * factorial(n) * factorial(k) * factorial(l);
  Rational sum = 0;
  for (int c = 0; c <= 2 * a + 1; ++c) {
    Rational term = top;
    if (reading == BReading::printed) {
      term *= recip_factorial(2 * a + 1 - b) * recip_factorial(b);
    } else {
      term *= recip_factorial(2 * a + 1 - c) * recip_factorial(c);
    }
    term *= recip_factorial(m + c - 2 * a - 1) * recip_factorial(n - c) * recip_factorial(k - c) *
            recip_factorial(l + c - 2 * a - 1);
    sum += c % 2 == 0 ? term : Rational(-term);
  }
  if (reading == BReading::corrected) {
    for (int i = 0; i < a; ++i) sum /= 4;
  }
  return sum;
}

Scalar gfp_coefficient(int m, int n, int k, int l, int a, const QContext& ctx) {
  (void)ctx;
  if ((m == 0 && n == 0) || (k == 0 && l == 0)) return Scalar();
  const int b = la1_upper_limit(m, n, k, l);
  const Scalar top = q_factorial(m) * q_factorial(n) * q_factorial(k) * q_factorial(l);
  Scalar sum;
  for (int c = 0; c <= 2 * a + 1; ++c) {
    Scalar term = recip_q_factorial(2 * a + 1 - b) * recip_q_factorial(b) *
                  recip_q_factorial(m + c - 2 * a - 1) * recip_q_factorial(n - c) *
                  recip_q_factorial(k - c) * recip_q_factorial(l + c - 2 * a - 1);
    if (term.is_zero()) continue;
    sum += c % 2 == 0 ? term : -term;
  }
  return top * sum;
}

NormalForm bracket_from_constants(Ordering ordering, int a, int b, int c, int d,
                                  const StructureConstants& sc) {
  NormalForm nf{ordering, {}};
  for (const auto& [r, coeff] : sc) nf.add({a + c - r, b + d - r}, coeff.multiply_h(r));
  return nf;
}

// Weyl sector ----------------------------------------------------------------

WeylExpansion weyl_commutator_by_symmetrization(int m, int n, int k, int l) {
  const NormalForm A = weyl_symmetrize(m, n, QRegime::unity);
  const NormalForm B = weyl_symmetrize(k, l, QRegime::unity);
  NormalForm c = multiply(A, B, QRegime::unity);
  c -= multiply(B, A, QRegime::unity);
  return to_weyl_basis(c, QRegime::unity);
}

WeylExpansion weyl_commutator_by_moyal(int m, int n, int k, int l) {
  const SymbolPoly br = q_moyal_bracket(StarProductId::HbarWeyl, mono(m, n), mono(k, l));
  WeylExpansion out;
  for (const auto& [mono_key, c] : br.terms()) {
    out[{static_cast<int>(to_long(mono_key.p)), static_cast<int>(to_long(mono_key.x))}] = c.multiply_h();
  }
  return out;
}

WeylExpansion weyl_commutator_by_formula(int m, int n, int k, int l, BReading reading) {
  WeylExpansion out;
  for (int a = 0; a <= la1_upper_limit(m, n, k, l); ++a) {
    const Rational B = la1_b(m, n, k, l, a, reading);
    if (B == 0) continue;
    out[{m + k - 2 * a - 1, n + l - 2 * a - 1}] = Coefficient(Scalar(B), 2 * a + 1);
  }
  return out;
}

// Checks ---------------------------------------------------------------------

CheckOutcome verify_oracle_integrity(const CheckOptions& opt) {
  CheckOutcome out;
  Json params;
  params["words"] = 200;
  params["max_length"] = 8;
  params["seed"] = 20240517;
  ConformanceReport confluence("oracle_integrity/confluence", params);
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> len(0, 8), bit(0, 1);
  for (int i = 0; i < 200; ++i) {
    std::string letters;
    const int n = len(rng);
    for (int j = 0; j < n; ++j) letters += bit(rng) ? 'P' : 'X';
    const OperatorExpr w(OperatorWord::from_letters(letters));
    for (auto o : {Ordering::standard, Ordering::antistandard}) {
      const NormalForm leftmost = normal_order(w, o);
      std::mt19937 pick(rng());
      const SiteChooser chooser = [&pick](std::size_t sites) {
        return std::uniform_int_distribution<std::size_t>(0, sites - 1)(pick);
      };
      const NormalForm shuffled = normal_order(w, o, QRegime::generic, chooser);
      confluence.record(shuffled == leftmost, (letters.empty() ? "1" : letters) + " " + to_string(o),
                        [&] { return to_string(leftmost); }, [&] { return to_string(shuffled); });
    }
  }
  out.require_all(confluence);

  ConformanceReport closed("oracle_integrity/closed_form", with(Json::object(), "max_index", 6));
  for (int b = 0; b <= 6; ++b) {
    for (int c = 0; c <= 6; ++c) {
      const OperatorExpr w = OperatorExpr(OperatorWord::letter(Letter::P, b)) *
                             OperatorExpr(OperatorWord::letter(Letter::X, c));
      const NormalForm expected = normal_order(w, Ordering::standard);
      const NormalForm actual = normal_order_closed_form(b, c);
      closed.record(expected == actual, "P^" + std::to_string(b) + " X^" + std::to_string(c),
                    [&] { return to_string(expected); }, [&] { return to_string(actual); });
    }
  }
  out.require_all(closed);
  (void)opt;
  return out;
}

CheckOutcome obstruction_report(const CheckOptions& opt) {
  (void)opt;
  const auto S = Ordering::standard;
  auto w = [](const std::string& letters, const Scalar& s = Scalar(1), int hp = 0) {
    return OperatorExpr(OperatorWord::from_letters(letters), Coefficient(s, hp));
  };
  auto q = [](long e) { return q_power(e); };
  const Scalar two = q_integer(2), three = q_integer(3);
  CheckOutcome out;
  ConformanceReport rep("obstruction", Json::object());

  // (i) P^2 X^2 - q^4 X^2 P^2 = h [2] (P X + q^2 X P)
  const NormalForm e1_lhs = normal_order(w("PPXX") - w("XXPP", q(4)), S);
  const OperatorExpr t11_from_e1 = w("PX") + w("XP", q(2));
  const NormalForm e1_rhs = normal_order(t11_from_e1 * Coefficient(two, 1), S);
  const bool e1 = rep.record(e1_lhs == e1_rhs, "P^2 X^2 - q^4 X^2 P^2 = h [2] (P X + q^2 X P)",
                             [&] { return to_string(e1_rhs); }, [&] { return to_string(e1_lhs); });
  out.require(e1, "obstruction: P^2 X^2 identity fails");

  // (ii) P^2 X^3 - q^6 X^3 P^2 against [2] (P X^2 + q^4 X^2 P + q^2 X P X), with and without h.
  const OperatorExpr t12 = w("PXX") + w("XXP", q(4)) + w("XPX", q(2));
  const NormalForm e2_lhs = normal_order(w("PPXXX") - w("XXXPP", q(6)), S);
  const NormalForm e2_printed = normal_order(t12 * Coefficient(two), S);
  const NormalForm e2_restored = normal_order(t12 * Coefficient(two, 1), S);
  rep.record(e2_lhs == e2_printed, "P^2 X^3 - q^6 X^3 P^2 = [2] (P X^2 + q^4 X^2 P + q^2 X P X)",
             [&] { return to_string(e2_printed); }, [&] { return to_string(e2_lhs); });
  const bool e2 = rep.record(e2_lhs == e2_restored,
                             "P^2 X^3 - q^6 X^3 P^2 = h [2] (P X^2 + q^4 X^2 P + q^2 X P X)",
                             [&] { return to_string(e2_restored); }, [&] { return to_string(e2_lhs); });
  out.require(e2, "obstruction: P^2 X^3 identity fails even with h restored");
  out.require(e2_lhs != e2_printed, "obstruction: P^2 X^3 identity unexpectedly holds without h");

  // (iii) [P, T12 candidate]_q with labels (x=2, p=1) = h [3] (P X + q^3 X P)
  const LabeledOperator P = LabeledOperator::monomial(OperatorWord::from_letters("P"));
  const LabeledOperator T12{t12, 2, 1};
  const NormalForm e3_lhs = q_commutator(P, T12, S);
  const OperatorExpr t11_from_e3 = w("PX") + w("XP", q(3));
  const NormalForm e3_rhs = normal_order(t11_from_e3 * Coefficient(three, 1), S);
  const bool e3 = rep.record(e3_lhs == e3_rhs, "[P, P X^2 + q^4 X^2 P + q^2 X P X]_q = h [3] (P X + q^3 X P)",
                             [&] { return to_string(e3_rhs); }, [&] { return to_string(e3_lhs); });
  out.require(e3, "obstruction: [P, T12] identity fails");

  // (iv) the two T11 candidates
  const NormalForm cand1 = normal_order(t11_from_e1, S);
  const NormalForm cand2 = normal_order(t11_from_e3, S);
  rep.record(cand1 == cand2, "T11 candidates at generic q", [&] { return "P X + q^2 X P"; },
             [&] { return std::string("P X + q^3 X P"); });
  const bool q1_equal = eval_q1(cand1) == eval_q1(cand2);
  rep.record(q1_equal, "T11 candidates at q = 1", [&] { return to_string(eval_q1(cand1)); },
             [&] { return to_string(eval_q1(cand2)); });
  out.require(cand1 != cand2, "obstruction: T11 candidates unexpectedly agree at generic q");
  out.require(q1_equal, "obstruction: T11 candidates differ at q = 1");
  rep.derived_correction =
      "P^2 X^3 - q^6 X^3 P^2 = h [2] (P X^2 + q^4 X^2 P + q^2 X P X); T11 carries inner weight q^2 "
      "from the P^2 X^2 relation and q^3 from [P, T12]_q, which agree only at q = 1";
  out.record(rep);
  return out;
}

CheckOutcome verify_standard_qW(const CheckOptions& opt) {
  const auto S = Ordering::standard;
  CheckOutcome out;
  Json params = with(base_params(opt), "ordering", "standard");
  ConformanceReport degree("standard_qW/degree_language", with(params, "reading", "exponents_transposed"));
  ConformanceReport verbatim("standard_qW/verbatim", with(params, "reading", "verbatim"));
  for_grid(opt.grid, [&](int a, int b, int c, int d) {
    const auto A = LabeledOperator::monomial(OperatorWord::ordered(S, a, b));
    const auto B = LabeledOperator::monomial(OperatorWord::ordered(S, c, d));
    const NormalForm oracle = q_commutator(A, B, S);
    const std::string label = case_label(a, b, c, d);
    for (auto [rep, reading] : {std::pair{&degree, QsalReading::exponents_transposed},
                                std::pair{&verbatim, QsalReading::verbatim}}) {
      const NormalForm formula = bracket_from_constants(S, a, b, c, d, qsal_constants(a, b, c, d, reading, opt.ctx));
      rep->record(formula == oracle, label, [&] { return to_string(oracle); },
                  [&] { return to_string(formula); });
    }
  });
  verbatim.derived_correction =
      "sum_r h^r [r]! (q^{(k-r)(m-r)+nl} [k,r][m,r] - q^{(n-r)(l-r)+mk} [n,r][l,r]) X^{n+k-r} P^{l+m-r}: "
      "the printed q-exponents with m and n exchanged, binomials unchanged";
  out.require_all(degree);
  out.record(verbatim);
  out.notes.push_back(
      "standard ordering: the oracle confirms the display with m and n exchanged in the q-exponents, "
      "i.e. weights q^{ad+(b-r)(c-r)} and q^{bc+(d-r)(a-r)} for X^a P^b, X^c P^d");
  return out;
}

CheckOutcome verify_antistandard_qW(const CheckOptions& opt) {
  const auto A = Ordering::antistandard;
  CheckOutcome out;
  ConformanceReport rep("antistandard_qW/verbatim",
                        with(with(base_params(opt), "ordering", "antistandard"), "reading", "verbatim"));
  for_grid(opt.grid, [&](int a, int b, int c, int d) {
    const auto L = LabeledOperator::monomial(OperatorWord::ordered(A, a, b));
    const auto R = LabeledOperator::monomial(OperatorWord::ordered(A, c, d));
    const NormalForm oracle = q_commutator(L, R, A);
    const NormalForm formula = bracket_from_constants(A, a, b, c, d, qaal_constants(a, b, c, d, opt.ctx));
    rep.record(formula == oracle, case_label(a, b, c, d), [&] { return to_string(oracle); },
               [&] { return to_string(formula); });
  });
  out.require_all(rep);
  return out;
}

CheckOutcome verify_ordinary_Winf(const CheckOptions& opt) {
  CheckOutcome out;
  const Json params = with(base_params(opt), "q", 1);
  ConformanceReport sal("ordinary_Winf/sal", with(params, "ordering", "standard"));
  ConformanceReport aal("ordinary_Winf/aal", with(params, "ordering", "antistandard"));
  for_grid(opt.grid, [&](int a, int b, int c, int d) {
    for (auto [rep, o] : {std::pair{&sal, Ordering::standard}, std::pair{&aal, Ordering::antistandard}}) {
      const auto L = LabeledOperator::monomial(OperatorWord::ordered(o, a, b));
      const auto R = LabeledOperator::monomial(OperatorWord::ordered(o, c, d));
      const NormalForm oracle = q_commutator(L, R, o, QRegime::unity);
      const StructureConstants sc =
          o == Ordering::standard ? sal_constants(a, b, c, d) : aal_constants(a, b, c, d);
      const NormalForm formula = bracket_from_constants(o, a, b, c, d, sc);
      rep->record(formula == oracle, case_label(a, b, c, d), [&] { return to_string(oracle); },
                  [&] { return to_string(formula); });
    }
  });
  out.require_all(sal);
  out.require_all(aal);

  ConformanceReport agree("ordinary_Winf/la1_oracle_agreement", params);
  ConformanceReport printed("ordinary_Winf/la1_printed_B", with(params, "reading", "printed"));
  ConformanceReport corrected("ordinary_Winf/la1_corrected_B", with(params, "reading", "corrected"));
  for_grid(opt.grid, [&](int m, int n, int k, int l) {
    const WeylExpansion sym = weyl_commutator_by_symmetrization(m, n, k, l);
    const WeylExpansion moy = weyl_commutator_by_moyal(m, n, k, l);
    const std::string label = case_label(m, n, k, l);
    agree.record(sym == moy, label, [&] { return to_string(sym); }, [&] { return to_string(moy); });
    for (auto [rep, reading] : {std::pair{&printed, BReading::printed}, std::pair{&corrected, BReading::corrected}}) {
      const WeylExpansion formula = weyl_commutator_by_formula(m, n, k, l, reading);
      rep->record(formula == sym, label, [&] { return to_string(sym); }, [&] { return to_string(formula); });
    }
  });
  printed.derived_correction =
      "B^a = sum_{c=0}^{2a+1} (-1)^c m! n! k! l! / (4^a (2a+1-c)! c! (m+c-2a-1)! (n-c)! (k-c)! (l+c-2a-1)!)";
  out.require_all(agree);
  out.record(printed);
  out.require_all(corrected);
  return out;
}

CheckOutcome verify_gf_star(const CheckOptions& opt) {
  CheckOutcome out;
  if (opt.ctx.root_denominator % 2 != 0) {
    out.require(false, "gf_star: the Weyl-type q-star product needs an even root denominator");
    return out;
  }
  const Json params = with(base_params(opt), "product", to_string(StarProductId::QWeylGF));
  ConformanceReport q1("gf_star/q1_reduction", with(params, "q", 1));
  ConformanceReport generic("gf_star/printed_gfp", with(params, "q", "generic"));
  ConformanceReport printed_q1("gf_star/printed_gfp_at_q1", with(params, "q", 1));
  for_grid(opt.grid, [&](int m, int n, int k, int l) {
    const SymbolPoly f = mono(m, n), g = mono(k, l);
    const SymbolPoly gf = q_moyal_bracket(StarProductId::QWeylGF, f, g, opt.ctx);
    const SymbolPoly weyl = q_moyal_bracket(StarProductId::HbarWeyl, f, g, opt.ctx);
    const std::string label = case_label(m, n, k, l);
    const SymbolPoly gf1 = eval_q1(gf);
    q1.record(gf1 == weyl, label, [&] { return to_string(weyl); }, [&] { return to_string(gf1); });

    SymbolPoly formula;
    for (int a = 0; a <= la1_upper_limit(m, n, k, l); ++a) {
      formula += SymbolPoly::monomial(m + k - 2 * a - 1, n + l - 2 * a - 1,
                                      Coefficient(gfp_coefficient(m, n, k, l, a, opt.ctx), 2 * a));
    }
    generic.record(formula == gf, label, [&] { return to_string(gf); }, [&] { return to_string(formula); });
    const SymbolPoly formula1 = eval_q1(formula);
    printed_q1.record(formula1 == weyl, label, [&] { return to_string(weyl); },
                      [&] { return to_string(formula1); });
  });
  out.require_all(q1);
  out.record(generic);
  out.record(printed_q1);
  return out;
}

CheckOutcome verify_homomorphism(StarProductId id, const CheckOptions& opt) {
  if (id != StarProductId::QStandard && id != StarProductId::QAnti) {
    throw std::invalid_argument("homomorphism check needs q-standard or q-anti");
  }
  const Ordering o = id == StarProductId::QStandard ? Ordering::standard : Ordering::antistandard;
  CheckOutcome out;
  const Json params = with(with(base_params(opt), "product", to_string(id)), "ordering", to_string(o));
  ConformanceReport star_rep("homomorphism/star/" + to_string(id), params);
  ConformanceReport bracket_rep("homomorphism/bracket/" + to_string(id), params);
  for_grid(opt.grid, [&](int m, int n, int k, int l) {
    const SymbolPoly f = mono(m, n), g = mono(k, l);
    const OperatorExpr F = to_expr(quantize(o, f)), G = to_expr(quantize(o, g));
    const std::string label = case_label(m, n, k, l);
    const SymbolPoly product = star(id, f, g, opt.ctx);
    const SymbolPoly expected = symbol_of(normal_order(F * G, o));
    star_rep.record(product == expected, label, [&] { return to_string(expected); },
                    [&] { return to_string(product); });
    const SymbolPoly bracket = q_moyal_bracket(id, f, g, opt.ctx);
    const SymbolPoly commutator = divide_exact_h(
        symbol_of(q_commutator(LabeledOperator::homogeneous(F), LabeledOperator::homogeneous(G), o)));
    bracket_rep.record(bracket == commutator, label, [&] { return to_string(commutator); },
                       [&] { return to_string(bracket); });
  });
  out.require_all(star_rep);
  out.require_all(bracket_rep);
  return out;
}

CheckOutcome verify_q1_reductions(const CheckOptions& opt) {
  CheckOutcome out;
  const Json params = base_params(opt);
  ConformanceReport qsal("q1_reductions/qsal_to_sal", with(params, "ordering", "standard"));
  ConformanceReport qaal("q1_reductions/qaal_to_aal", with(params, "ordering", "antistandard"));
  for_grid(opt.grid, [&](int a, int b, int c, int d) {
    const std::string label = case_label(a, b, c, d);
    const NormalForm sal = bracket_from_constants(Ordering::standard, a, b, c, d, sal_constants(a, b, c, d));
    for (auto reading : {QsalReading::exponents_transposed, QsalReading::verbatim}) {
      const NormalForm q = eval_q1(bracket_from_constants(Ordering::standard, a, b, c, d,
                                                          qsal_constants(a, b, c, d, reading, opt.ctx)));
      qsal.record(q == sal, label + " " + to_string(reading), [&] { return to_string(sal); },
                  [&] { return to_string(q); });
    }
    const NormalForm aal = bracket_from_constants(Ordering::antistandard, a, b, c, d, aal_constants(a, b, c, d));
    const NormalForm qa = eval_q1(bracket_from_constants(Ordering::antistandard, a, b, c, d,
                                                         qaal_constants(a, b, c, d, opt.ctx)));
    qaal.record(qa == aal, label, [&] { return to_string(aal); }, [&] { return to_string(qa); });
  });
  out.require_all(qsal);
  out.require_all(qaal);

  const auto grid = monomials_up_to(opt.grid);
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF,
                  StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti,
                  StarProductId::ClassicalQWeyl}) {
    const bool classical = hbar_counterpart(id) == id;
    ConformanceReport rep("q1_reductions/star/" + to_string(id),
                          with(with(params, "product", to_string(id)), "reduces_to",
                               classical ? std::string("pointwise product") : to_string(hbar_counterpart(id))));
    for (const auto& f : grid) {
      for (const auto& g : grid) {
        const SymbolPoly reduced = eval_q1(star(id, f, g, opt.ctx));
        const SymbolPoly expected = classical ? f * g : star(hbar_counterpart(id), f, g, opt.ctx);
        rep.record(reduced == expected, mono_label(f) + " * " + mono_label(g),
                   [&] { return to_string(expected); }, [&] { return to_string(reduced); });
      }
    }
    out.require_all(rep);
  }
  return out;
}

CheckOutcome verify_classical_identity(const CheckOptions& opt) {
  CheckOutcome out;
  constexpr int max_index = 4;
  for (auto id : {StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti,
                  StarProductId::ClassicalQWeyl}) {
    ConformanceReport rep("classical_identity/" + to_string(id),
                          with(with(with(Json::object(), "max_index", max_index), "root_denominator",
                                    opt.ctx.root_denominator),
                               "product", to_string(id)));
    for_grid(max_index, [&](int m, int n, int k, int l) {
      const SymbolPoly f = mono(m, n), g = mono(k, l);
      const SymbolPoly lhs = star(id, f, g, opt.ctx) * Coefficient(q_power(n * k, opt.ctx)) -
                             star(id, g, f, opt.ctx) * Coefficient(q_power(m * l, opt.ctx));
      rep.record(lhs.is_zero(), case_label(m, n, k, l), [] { return std::string("0"); },
                 [&] { return to_string(lhs); });
    });
    out.require_all(rep);
  }

  // The displayed weight q^{alpha(f,g)} = q^{(x-deg f)(p-deg g)} for the classical product.
  const Json params = with(with(Json::object(), "max_index", max_index), "product",
                           to_string(StarProductId::ClassicalQStandard));
  ConformanceReport weight("classical_identity/printed_weight", with(params, "weight", "q^(n k)"));
  ConformanceReport identity("classical_identity/printed_weight_identity", with(params, "weight", "q^(n k)"));
  for_grid(max_index, [&](int m, int n, int k, int l) {
    const SymbolPoly fg = mono(m + k, n + l);
    const SymbolPoly actual = star(StarProductId::ClassicalQStandard, mono(m, n), mono(k, l), opt.ctx);
    const SymbolPoly printed = fg * Coefficient(q_power(n * k, opt.ctx));
    weight.record(actual == printed, case_label(m, n, k, l), [&] { return to_string(printed); },
                  [&] { return to_string(actual); });
    // q^{nk} f*g - q^{ml} g*f with f*g = q^{nk} fg and g*f = q^{lm} fg.
    const SymbolPoly lhs = fg * Coefficient(q_power(2 * n * k, opt.ctx) - q_power(2 * m * l, opt.ctx));
    identity.record(lhs.is_zero(), case_label(m, n, k, l), [] { return std::string("0"); },
                    [&] { return to_string(lhs); });
  });
  weight.derived_correction = "p^m x^n * p^k x^l = q^{m l} p^{m+k} x^{n+l}, weight (p-deg f)(x-deg g)";
  identity.derived_correction = weight.derived_correction;
  out.record(weight);
  out.record(identity);
  return out;
}

CheckOutcome verify_h0_cancellation(const CheckOptions& opt) {
  CheckOutcome out;
  const Json params = base_params(opt);
  for (auto o : {Ordering::standard, Ordering::antistandard}) {
    ConformanceReport rep("h0_cancellation/q_commutator/" + to_string(o), with(params, "ordering", to_string(o)));
    for_grid(opt.grid, [&](int a, int b, int c, int d) {
      const auto L = LabeledOperator::monomial(OperatorWord::ordered(o, a, b));
      const auto R = LabeledOperator::monomial(OperatorWord::ordered(o, c, d));
      Coefficient h0;
      for (const auto& [key, coeff] : q_commutator(L, R, o).terms) h0 += Coefficient(eval_h0(coeff));
      rep.record(h0.is_zero(), case_label(a, b, c, d), [] { return std::string("0"); },
                 [&] { return to_string(h0); });
    });
    out.require_all(rep);
  }
  const auto grid = monomials_up_to(opt.grid);
  for (auto id : all_star_products()) {
    ConformanceReport rep("h0_cancellation/moyal_numerator/" + to_string(id),
                          with(params, "product", to_string(id)));
    for (const auto& f : grid) {
      for (const auto& g : grid) {
        std::string failure;
        try {
          (void)q_moyal_bracket(id, f, g, opt.ctx);
        } catch (const NotDivisibleByH& e) {
          failure = e.what();
        }
        rep.record(failure.empty(), mono_label(f) + ", " + mono_label(g),
                   [] { return std::string("divisible by h"); }, [&] { return failure; });
      }
    }
    out.require_all(rep);
  }
  return out;
}

CheckOutcome verify_poisson_consistency(const CheckOptions& opt) {
  CheckOutcome out;
  ConformanceReport rep("poisson_consistency", base_params(opt));
  std::vector<SymbolPoly> inputs = monomials_up_to(opt.grid);
  const SymbolPoly p = mono(1, 0), x = mono(0, 1);
  inputs.push_back(p * p + x);
  inputs.push_back(p * x * Coefficient(q_power(1, opt.ctx)) + x * x * Coefficient(3));
  for (const auto& f : inputs) {
    for (const auto& g : inputs) {
      const SymbolPoly direct = q_poisson_bracket(f, g, opt.ctx);
      const SymbolPoly limit = eval_h0(q_moyal_bracket(StarProductId::QStandard, f, g, opt.ctx));
      rep.record(direct == limit, "{" + mono_label(f) + ", " + mono_label(g) + "}",
                 [&] { return to_string(limit); }, [&] { return to_string(direct); });
    }
  }
  out.require_all(rep);
  return out;
}

CheckOutcome probe_associativity(StarProductId id, const std::vector<SymbolTriple>& corpus,
                                 const std::string& corpus_name, bool hard, const CheckOptions& opt) {
  CheckOutcome out;
  ConformanceReport rep("associativity/" + to_string(id) + "/" + corpus_name,
                        with(with(with(Json::object(), "product", to_string(id)), "corpus", corpus_name),
                             "root_denominator", opt.ctx.root_denominator));
  for (const auto& [f, g, k] : corpus) {
    const SymbolPoly left = star(id, star(id, f, g, opt.ctx), k, opt.ctx);
    const SymbolPoly right = star(id, f, star(id, g, k, opt.ctx), opt.ctx);
    rep.record(left == right, "(" + mono_label(f) + ", " + mono_label(g) + ", " + mono_label(k) + ")",
               [&] { return to_string(left); }, [&] { return to_string(right); });
  }
  if (!rep.all_match()) rep.derived_correction = "expected = (f*g)*k, actual = f*(g*k)";
  if (hard) {
    out.require_all(rep);
  } else {
    out.record(rep);
  }
  return out;
}

namespace {

std::vector<SymbolTriple> triples_of(const std::vector<SymbolPoly>& items) {
  std::vector<SymbolTriple> out;
  for (const auto& f : items)
    for (const auto& g : items)
      for (const auto& k : items) out.push_back({f, g, k});
  return out;
}

}  // namespace

CheckOutcome verify_associativity(const CheckOptions& opt) {
  CheckOutcome out;
  const auto integer = triples_of(monomials_up_to(opt.grid));
  const std::string integer_name = "monomials_index_le_" + std::to_string(opt.grid);
  out += probe_associativity(StarProductId::QStandard, integer, integer_name, true, opt);
  out += probe_associativity(StarProductId::QAnti, integer, integer_name, true, opt);

  const int small = std::min(opt.grid, 2);
  const auto small_triples = triples_of(monomials_up_to(small));
  const std::string small_name = "monomials_index_le_" + std::to_string(small);
  for (auto id : {StarProductId::HbarStandard, StarProductId::HbarAnti, StarProductId::HbarWeyl}) {
    out += probe_associativity(id, small_triples, small_name, true, opt);
  }
  for (auto id : {StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti,
                  StarProductId::ClassicalQWeyl}) {
    out += probe_associativity(id, small_triples, small_name, false, opt);
  }

  std::vector<SymbolTriple> gf = triples_of(monomials_up_to(std::min(opt.grid, 1)));
  out += probe_associativity(StarProductId::QWeylGF, gf, "monomials_index_le_" + std::to_string(std::min(opt.grid, 1)),
                             false, opt);

  // Half-integer x-powers keep every series finite because all p-powers are integers.
  const std::vector<SymbolPoly> fractional = {
      SymbolPoly::monomial(0, make_rational(1, 2)), mono(1, 0), mono(2, 0), mono(0, 1),
      SymbolPoly::monomial(1, make_rational(1, 2))};
  if (opt.ctx.root_denominator % 2 == 0) {
    for (auto id : {StarProductId::QStandard, StarProductId::QAnti}) {
      out += probe_associativity(id, triples_of(fractional), "half_integer_x", false, opt);
    }
  }
  return out;
}

CheckOutcome probe_jacobiator(const CheckOptions& opt) {
  CheckOutcome out;
  std::vector<SymbolPoly> items;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; m + n <= 2; ++n) items.push_back(mono(m, n));
  for (auto id : {StarProductId::QStandard, StarProductId::QAnti, StarProductId::QWeylGF,
                  StarProductId::HbarWeyl}) {
    if (id == StarProductId::QWeylGF && opt.ctx.root_denominator % 2 != 0) continue;
    const Json params = with(with(with(Json::object(), "product", to_string(id)), "total_degree_max", 2),
                             "root_denominator", opt.ctx.root_denominator);
    ConformanceReport generic("jacobiator/" + to_string(id), params);
    ConformanceReport at_q1("jacobiator/" + to_string(id) + "/q1", with(params, "q", 1));
    auto br = [&](const SymbolPoly& a, const SymbolPoly& b) { return q_moyal_bracket(id, a, b, opt.ctx); };
    for (const auto& f : items)
      for (const auto& g : items)
        for (const auto& k : items) {
          const SymbolPoly jac = br(f, br(g, k)) + br(g, br(k, f)) + br(k, br(f, g));
          const std::string label = "(" + mono_label(f) + ", " + mono_label(g) + ", " + mono_label(k) + ")";
          generic.record(jac.is_zero(), label, [] { return std::string("0"); }, [&] { return to_string(jac); });
          const SymbolPoly j1 = eval_q1(jac);
          at_q1.record(j1.is_zero(), label, [] { return std::string("0"); }, [&] { return to_string(j1); });
        }
    out.record(generic);
    out.require_all(at_q1);
  }
  return out;
}

CheckOutcome verify_applications(const CheckOptions& opt) {
  CheckOutcome out;
  for (const Rational& a : {make_rational(-1), make_rational(1, 3), make_rational(1, 2), make_rational(1),
                            make_rational(2), make_rational(3)}) {
    QContext ctx = opt.ctx;
    const long den = a.get_den().get_si();
    ctx.root_denominator = static_cast<int>(std::lcm(static_cast<long>(ctx.root_denominator), den));
    out += point_transform_bracket_report(a, ctx);
  }
  out += leibniz_report(opt.ctx);
  out += kinetic_report(1, opt.ctx);
  QContext quarter = opt.ctx;
  quarter.root_denominator = std::lcm(quarter.root_denominator, 4);
  out += kinetic_report(make_rational(1, 2), quarter);
  out += path_integral_report(std::min(opt.truncation, 6), opt.assoc, opt.ctx);
  return out;
}

const std::vector<NamedCheck>& conformance_checks() {
  static const std::vector<NamedCheck> checks = {
      {"oracle-integrity", verify_oracle_integrity},
      {"obstruction", obstruction_report},
      {"standard-qw", verify_standard_qW},
      {"antistandard-qw", verify_antistandard_qW},
      {"ordinary-winf", verify_ordinary_Winf},
      {"gf-star", verify_gf_star},
      {"homomorphism",
       [](const CheckOptions& o) {
         CheckOutcome out = verify_homomorphism(StarProductId::QStandard, o);
         out += verify_homomorphism(StarProductId::QAnti, o);
         return out;
       }},
      {"q1-reductions", verify_q1_reductions},
      {"classical-identity", verify_classical_identity},
      {"h0-cancellation", verify_h0_cancellation},
      {"poisson-consistency", verify_poisson_consistency},
      {"associativity", verify_associativity},
      {"jacobiator", probe_jacobiator},
      {"applications", verify_applications},
  };
  return checks;
}

CheckOutcome run_check(const std::string& name, const CheckOptions& opt) {
  for (const auto& c : conformance_checks()) {
    if (c.name == name) return c.run(opt);
  }
  throw std::invalid_argument("unknown check: " + name);
}

CheckOutcome verify_all(const CheckOptions& opt) {
  CheckOutcome out;
  for (const auto& c : conformance_checks()) out += c.run(opt);
  return out;
}

}  // namespace qmoyal
