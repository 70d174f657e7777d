#pragma once

// Commuting symbols p^a x^b, Jackson derivatives, the star products and the
// q-Moyal / q-Poisson brackets, and the symbol <-> operator maps.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qmoyal/operator_algebra.h"
#include "qmoyal/scalar.h"

namespace qmoyal {

struct SymbolMonomial {
  Rational p;
  Rational x;

  friend bool operator==(const SymbolMonomial&, const SymbolMonomial&) = default;
  friend bool operator<(const SymbolMonomial& a, const SymbolMonomial& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.x < b.x;
  }
};

class SymbolPoly {
 public:
  using Terms = std::map<SymbolMonomial, Coefficient>;

  SymbolPoly() = default;
  SymbolPoly(const Coefficient& c);  // NOLINT(google-explicit-constructor)
  SymbolPoly(const SymbolMonomial& m, const Coefficient& c = Coefficient(1));
  static SymbolPoly monomial(const Rational& p_exp, const Rational& x_exp,
                             const Coefficient& c = Coefficient(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_kappa() const;
  void add(const SymbolMonomial& m, const Coefficient& c);
  /// Splits into single-monomial pieces, the unit the brackets pair over.
  std::vector<SymbolPoly> monomials() const;

  SymbolPoly operator-() const;
  SymbolPoly& operator+=(const SymbolPoly& o);
  SymbolPoly& operator-=(const SymbolPoly& o);
  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  /// Commutative pointwise product.
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b);
  friend SymbolPoly operator*(const SymbolPoly& a, const Coefficient& c);
  friend SymbolPoly operator*(const Coefficient& c, const SymbolPoly& a) { return a * c; }
  friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Sorted by (p, x) exponent, highest first.
std::string to_string(const SymbolPoly& f);
SymbolPoly eval_q1(const SymbolPoly& f);
SymbolPoly eval_h0(const SymbolPoly& f);
SymbolPoly divide_exact_h(const SymbolPoly& f);

enum class StarProductId {
  HbarStandard,
  HbarAnti,
  HbarWeyl,
  ClassicalQStandard,
  ClassicalQAnti,
  ClassicalQWeyl,
  QStandard,
  QAnti,
  QWeylGF,
};

/// Every id, in declaration order.
const std::vector<StarProductId>& all_star_products();
/// CLI spelling: hbar-standard, classical-q-anti, q-weyl-gf, ...
std::string to_string(StarProductId id);
StarProductId star_product_from_string(const std::string& name);
/// The q = 1 product a q-deformed one must reduce to (identity for Hbar ids).
StarProductId hbar_counterpart(StarProductId id);
bool is_hbar_product(StarProductId id);

enum class Variable { p, x };

/// Jackson derivative, monomial-wise D z^a = [a] z^(a-1).
SymbolPoly q_derivative(Variable var, const SymbolPoly& f, const QContext& ctx = {});

SymbolPoly star(StarProductId id, const SymbolPoly& f, const SymbolPoly& g, const QContext& ctx = {});

/// Symbol with explicit bracket labels (defaults to the monomial's own degrees).
struct LabeledSymbol {
  SymbolPoly expr;
  Rational x_label;
  Rational p_label;
};

/// Pairwise over monomials: (1/h) sum (q^{x(f_i) p(g_j)} f_i*g_j - q^{x(g_j) p(f_i)} g_j*f_i).
/// The Hbar ids use the unweighted commutator.
SymbolPoly q_moyal_bracket(StarProductId id, const SymbolPoly& f, const SymbolPoly& g,
                           const QContext& ctx = {});
/// Single bracket with caller-supplied labels.
SymbolPoly q_moyal_bracket(StarProductId id, const LabeledSymbol& f, const LabeledSymbol& g,
                           const QContext& ctx = {});

/// Direct q-Poisson formula (the h -> 0 part of the QStandard bracket).
SymbolPoly q_poisson_bracket(const SymbolPoly& f, const SymbolPoly& g, const QContext& ctx = {});

/// Standard X^a P^b -> x^a p^b, antistandard P^a X^b -> p^a x^b.
SymbolPoly symbol_of(const NormalForm& nf);
/// Inverse of symbol_of; throws NonQuantizableExponent off the integer lattice.
NormalForm quantize(Ordering ordering, const SymbolPoly& f);

enum class Association { left, right, balanced };
std::string to_string(Association a);
Association association_from_string(const std::string& name);

/// Star product of a list of factors under the given bracketing.
SymbolPoly star_fold(StarProductId id, const std::vector<SymbolPoly>& factors, Association assoc,
                     const QContext& ctx = {});

/// Polynomial in a formal parameter t truncated at order K.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int order);
  TruncatedSeries(int order, std::vector<SymbolPoly> coeffs);

  int order() const { return order_; }
  const std::vector<SymbolPoly>& coeffs() const { return coeffs_; }
  const SymbolPoly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  void set(int k, SymbolPoly value);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries scaled(const Coefficient& c) const;
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int order_;
  std::vector<SymbolPoly> coeffs_;  // size order_ + 1
};

std::string to_string(const TruncatedSeries& s, const std::string& variable = "t");

TruncatedSeries star(StarProductId id, const TruncatedSeries& f, const TruncatedSeries& g,
                     const QContext& ctx = {});
/// N-fold star product of f with itself.
TruncatedSeries star_power(StarProductId id, const TruncatedSeries& f, int n, Association assoc,
                           const QContext& ctx = {});

}  // namespace qmoyal
