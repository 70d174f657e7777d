#pragma once

// Dynamics on q-deformed phase space: equations of motion, the Leibniz
// defect, point transformations, the transformed kinetic term and finite-N
// composition of evolution symbols.

#include <map>
#include <string>
#include <vector>

#include "qmoyal/report.h"
#include "qmoyal/star_calculus.h"

namespace qmoyal {

/// u = x^a, p_u = (D_x u)^{-1} p = [a]^{-1} x^{1-a} p.
struct PointTransform {
  Rational a;
  SymbolPoly u;
  SymbolPoly p_u;

  static PointTransform make(const Rational& a, const QContext& ctx = {});
};

struct PointTransformBrackets {
  SymbolPoly u_pu;
  SymbolPoly pu_u;
  SymbolPoly x_p;
  SymbolPoly p_x;
};

PointTransformBrackets point_transform_brackets(const PointTransform& t, const QContext& ctx = {});

/// Asserts {p,x} = 1 and {p_u,u} = 1; records {u,p_u} and {x,p} against -q^a and -q.
CheckOutcome point_transform_bracket_report(const Rational& a, const QContext& ctx = {});

enum class BracketFlavor { poisson, moyal_standard, moyal_anti };
std::string to_string(BracketFlavor f);

/// tau_q(f) = {H, f} in the chosen bracket, pairwise over monomials.
SymbolPoly tau_q(const SymbolPoly& hamiltonian, const SymbolPoly& f, BracketFlavor flavor,
                 const QContext& ctx = {});

struct LeibnizWitness {
  SymbolPoly lhs;  // tau(fg)
  SymbolPoly rhs;  // tau(f) g + f tau(g)
  bool equal_at_generic_q = false;
  bool equal_at_q1 = false;
};

LeibnizWitness leibniz_witness(const SymbolPoly& hamiltonian, const SymbolPoly& f, const SymbolPoly& g,
                               BracketFlavor flavor = BracketFlavor::poisson, const QContext& ctx = {});

CheckOutcome leibniz_report(const QContext& ctx = {});

/// The six factors (D_x f)^{-1/2}, p, (D_x f)^{-2}, D_x f, p, (D_x f)^{-1/2} for
/// f = x^a, with [a]^{1/2} carried by the formal kappa.
std::vector<SymbolPoly> kinetic_factors(const Rational& a, const QContext& ctx = {});
SymbolPoly kinetic_transform(const Rational& a, Association assoc, const QContext& ctx = {});
CheckOutcome kinetic_report(const Rational& a, const QContext& ctx = {});

/// U(t/N) = sum_{j<=K} (-t'/N)^j H^{*j} / j! with t' = t/h, i.e. exp(i t H / hbar).
TruncatedSeries evolution_symbol(const SymbolPoly& hamiltonian, int n_slices, int order,
                                 StarProductId id, Association assoc, const QContext& ctx = {});
/// U(t/N) * ... * U(t/N), N factors, truncated at t'-order K.
TruncatedSeries path_integral_compose(const SymbolPoly& hamiltonian, int n_slices, int order,
                                      StarProductId id, Association assoc, const QContext& ctx = {});
CheckOutcome path_integral_report(int order, Association assoc, const QContext& ctx = {});

}  // namespace qmoyal
