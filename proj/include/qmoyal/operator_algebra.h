#pragma once

// Words in P and X under PX - qXP = h, normal ordering by rewriting, weighted
// q-commutators and the q = 1 Weyl symmetrization. The rewrite engine here is
// the ground truth every closed formula is checked against.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmoyal/scalar.h"

namespace qmoyal {

enum class Letter : std::uint8_t { P, X };

/// Standard puts every X on the left (X^a P^b), antistandard every P (P^a X^b).
enum class Ordering : std::uint8_t { standard, antistandard };

/// Generic q, or the undeformed point q = 1 where PX - XP = h.
enum class QRegime : std::uint8_t { generic, unity };

std::string to_string(Ordering o);

class OperatorWord {
 public:
  struct Factor {
    Letter letter;
    int power;
    auto operator<=>(const Factor&) const = default;
  };

  OperatorWord() = default;
  explicit OperatorWord(const std::vector<Factor>& factors);
  static OperatorWord letter(Letter l, int power = 1);
  /// X^a P^b for standard, P^a X^b for antistandard.
  static OperatorWord ordered(Ordering o, int a, int b);
  /// One letter per character, e.g. "PXX".
  static OperatorWord from_letters(const std::string& letters);

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  int x_degree() const;
  int p_degree() const;
  int length() const { return x_degree() + p_degree(); }
  std::string letters() const;

  OperatorWord operator*(const OperatorWord& o) const;
  auto operator<=>(const OperatorWord&) const = default;

 private:
  void push(Letter l, int power);

  std::vector<Factor> factors_;
};

std::string to_string(const OperatorWord& w);

class OperatorExpr {
 public:
  using Terms = std::map<OperatorWord, Coefficient>;

  OperatorExpr() = default;
  OperatorExpr(const OperatorWord& w, const Coefficient& c = Coefficient(1));  // NOLINT
  OperatorExpr(const Coefficient& c);  // NOLINT(google-explicit-constructor)

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const OperatorWord& w, const Coefficient& c);

  OperatorExpr operator-() const;
  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  /// Noncommutative product (concatenation of words).
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const OperatorExpr& a, const Coefficient& c);
  friend OperatorExpr operator*(const Coefficient& c, const OperatorExpr& a) { return a * c; }
  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

std::string to_string(const OperatorExpr& e);

/// Expansion over the ordered basis; keys are (a, b) of X^a P^b (standard)
/// or P^a X^b (antistandard).
struct NormalForm {
  using Key = std::pair<int, int>;

  Ordering ordering = Ordering::standard;
  std::map<Key, Coefficient> terms;

  bool is_zero() const { return terms.empty(); }
  Coefficient at(int a, int b) const;
  void add(Key k, const Coefficient& c);
  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator-=(const NormalForm& o);
  NormalForm scaled(const Coefficient& c) const;
  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.ordering == b.ordering && a.terms == b.terms;
  }
};

std::string to_string(const NormalForm& nf);
OperatorExpr to_expr(const NormalForm& nf);
NormalForm eval_q1(const NormalForm& nf);

/// Operator together with the bi-degree labels its q-commutator weights use.
struct LabeledOperator {
  OperatorExpr expr;
  int x_label = 0;
  int p_label = 0;

  /// Labels taken from the word's own degrees.
  static LabeledOperator monomial(const OperatorWord& w);
  /// Labels are the common bi-degree of every word; throws if they differ.
  static LabeledOperator homogeneous(const OperatorExpr& e);
};

/// Picks which of n_sites (> 0) out-of-order adjacent pairs to rewrite next.
using SiteChooser = std::function<std::size_t(std::size_t n_sites)>;

/// Rewrites PX -> qXP + h (standard) or XP -> q^-1 PX - q^-1 h (antistandard)
/// until no out-of-order pair is left. The default chooser takes the leftmost site.
NormalForm normal_order(const OperatorExpr& expr, Ordering ordering,
                        QRegime regime = QRegime::generic, const SiteChooser& chooser = {});

/// P^b X^c = sum_r q^{(b-r)(c-r)} [b,r] [c,r] [r]! h^r X^{c-r} P^{b-r}.
NormalForm normal_order_closed_form(int b, int c);

/// Normal-ordered product of two normal forms of the same ordering.
NormalForm multiply(const NormalForm& a, const NormalForm& b, QRegime regime = QRegime::generic);

/// q^{x(A) p(B)} AB - q^{p(A) x(B)} BA, normal ordered.
NormalForm q_commutator(const LabeledOperator& a, const LabeledOperator& b, Ordering ordering,
                        QRegime regime = QRegime::generic);

/// T_{m,n}: average of all interleavings of m P's and n X's, in standard form.
NormalForm weyl_symmetrize(int m, int n, QRegime regime);

/// Expansion of a q = 1 standard normal form over T_{m,n}; keys are (m, n).
std::map<std::pair<int, int>, Coefficient> to_weyl_basis(const NormalForm& nf, QRegime regime);

/// Coefficient of the r-th diagonal output of the weighted commutator of the
/// two basis monomials (a, b) and (c, d), with h^r stripped; keyed by r.
std::map<int, Coefficient> structure_constants_oracle(Ordering ordering, int a, int b, int c,
                                                      int d, QRegime regime = QRegime::generic);

}  // namespace qmoyal
