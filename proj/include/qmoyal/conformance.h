#pragma once

// Grid sweeps comparing the printed structure-constant formulas and the star
// calculus against the rewrite engine.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmoyal/operator_algebra.h"
#include "qmoyal/report.h"
#include "qmoyal/star_calculus.h"

namespace qmoyal {

enum class StructureConstantFormula { SAL, AAL, LA1_B, QSAL, QAAL, GFP };
std::string to_string(StructureConstantFormula f);

/// Index readings of the standard q-algebra display. `verbatim` takes the
/// exponents as printed with n, m, k, l = a, b, c, d; `exponents_transposed`
/// swaps m and n inside the q-exponents only.
enum class QsalReading { verbatim, exponents_transposed };
std::string to_string(QsalReading r);

/// Printed B coefficient (upper summation limit in the place of the summation
/// index, no 4^-a), or the form derived from the two q = 1 oracles.
enum class BReading { printed, corrected };
std::string to_string(BReading r);

/// r -> coefficient of h^r X^{a+c-r} P^{b+d-r} (standard) or h^r P^{a+c-r} X^{b+d-r}
/// (antistandard) in the bracket of the basis monomials (a, b) and (c, d).
using StructureConstants = std::map<int, Coefficient>;

StructureConstants sal_constants(int a, int b, int c, int d);
StructureConstants aal_constants(int a, int b, int c, int d);
StructureConstants qsal_constants(int a, int b, int c, int d, QsalReading reading,
                                  const QContext& ctx = {});
StructureConstants qaal_constants(int a, int b, int c, int d, const QContext& ctx = {});

/// Upper limit of the Weyl-basis sum, min(floor((m+k-1)/2), floor((n+l-1)/2)).
int la1_upper_limit(int m, int n, int k, int l);
Rational la1_b(int m, int n, int k, int l, int a, BReading reading);
Scalar gfp_coefficient(int m, int n, int k, int l, int a, const QContext& ctx = {});

/// Bracket of two basis monomials rebuilt from structure constants.
NormalForm bracket_from_constants(Ordering ordering, int a, int b, int c, int d,
                                  const StructureConstants& sc);

/// Weyl-basis expansion, keys (m, n) of T_{m,n}, values carrying their h-powers.
using WeylExpansion = std::map<std::pair<int, int>, Coefficient>;
/// [T_mn, T_kl] from symmetrized operators.
WeylExpansion weyl_commutator_by_symmetrization(int m, int n, int k, int l);
/// h {p^m x^n, p^k x^l} in the ordinary Weyl star product, read in the T basis.
WeylExpansion weyl_commutator_by_moyal(int m, int n, int k, int l);
/// sum_a h^{2a+1} B^a T_{m+k-2a-1, n+l-2a-1}.
WeylExpansion weyl_commutator_by_formula(int m, int n, int k, int l, BReading reading);

struct CheckOptions {
  int grid = 3;
  QContext ctx;
  int truncation = 4;
  Association assoc = Association::left;
};

CheckOutcome verify_oracle_integrity(const CheckOptions& opt);
CheckOutcome obstruction_report(const CheckOptions& opt);
CheckOutcome verify_standard_qW(const CheckOptions& opt);
CheckOutcome verify_antistandard_qW(const CheckOptions& opt);
CheckOutcome verify_ordinary_Winf(const CheckOptions& opt);
CheckOutcome verify_gf_star(const CheckOptions& opt);
CheckOutcome verify_homomorphism(StarProductId id, const CheckOptions& opt);
CheckOutcome verify_q1_reductions(const CheckOptions& opt);
CheckOutcome verify_classical_identity(const CheckOptions& opt);
CheckOutcome verify_h0_cancellation(const CheckOptions& opt);
CheckOutcome verify_poisson_consistency(const CheckOptions& opt);

using SymbolTriple = std::array<SymbolPoly, 3>;
/// (f*g)*k - f*(g*k) per triple; `hard` makes any nonzero result a failure.
CheckOutcome probe_associativity(StarProductId id, const std::vector<SymbolTriple>& corpus,
                                 const std::string& corpus_name, bool hard, const CheckOptions& opt);
CheckOutcome verify_associativity(const CheckOptions& opt);
CheckOutcome probe_jacobiator(const CheckOptions& opt);
CheckOutcome verify_applications(const CheckOptions& opt);

struct NamedCheck {
  std::string name;
  std::function<CheckOutcome(const CheckOptions&)> run;
};

/// Every check in verify-all order.
const std::vector<NamedCheck>& conformance_checks();
/// Throws std::invalid_argument for an unknown name.
CheckOutcome run_check(const std::string& name, const CheckOptions& opt);
CheckOutcome verify_all(const CheckOptions& opt);

}  // namespace qmoyal
