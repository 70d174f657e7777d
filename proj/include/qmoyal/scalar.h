#pragma once

// Exact coefficient tower: rationals, rational functions in a formal root of
// q, an optional quadratic extension, and polynomials in the central h = i*hbar.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qmoyal {

/// Arbitrary-precision rational, always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
bool is_integer(const Rational& r);
/// The integer value of r; r must be integral and fit in a long.
long to_long(const Rational& r);
std::string to_string(const Rational& r);

/// Configuration shared by everything that creates q-powers: q = s^D with
/// s = q^(1/D). Exponents that are not multiples of 1/D are rejected.
struct QContext {
  int root_denominator = 2;
  /// Highest h-order kept by a non-terminating star-product series; negative
  /// means such a series is an error.
  int h_order_limit = -1;
};

void require_representable(const Rational& q_exponent, const QContext& ctx);

/// Laurent polynomial in q with rational exponents, stored over the smallest
/// root q^(1/root) that makes every exponent integral.
class QPolynomial {
 public:
  struct Term {
    std::int64_t exp;  // power of q^(1/root)
    Rational coeff;
  };

  QPolynomial() = default;
  QPolynomial(long c);  // NOLINT(google-explicit-constructor)
  QPolynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  static QPolynomial monomial(const Rational& coeff, const Rational& q_exponent);
  /// Builds from terms over q^(1/root); terms need not be sorted or merged.
  static QPolynomial from_terms(int root, std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  int root() const { return root_; }
  const std::vector<Term>& terms() const { return terms_; }
  Rational exponent_of(const Term& t) const { return make_rational(t.exp, root_); }

  /// Value at q = 1 (sum of coefficients).
  Rational eval_at_one() const;
  /// Same polynomial expressed over q^(1/root); root must be a multiple of root().
  std::vector<Term> lifted_terms(int root) const;

  QPolynomial operator-() const;
  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend bool operator==(const QPolynomial& a, const QPolynomial& b);

 private:
  void normalize();

  int root_ = 1;
  std::vector<Term> terms_;  // ascending exp, nonzero coefficients
};

/// Element of the fraction field Q(q^(1/L)). Canonical form: the denominator
/// is a polynomial with nonzero constant term, monic in its top coefficient,
/// and coprime to the (Laurent) numerator.
class QFraction {
 public:
  QFraction() = default;
  QFraction(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  QFraction(const Rational& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
  QFraction(QPolynomial p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  QFraction(QPolynomial num, QPolynomial den);

  const QPolynomial& numerator() const { return num_; }
  const QPolynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  QFraction inverse() const;
  /// Throws PoleAtQ1 when the reduced denominator vanishes at q = 1.
  Rational eval_at_one() const;

  QFraction operator-() const;
  friend QFraction operator+(const QFraction& a, const QFraction& b);
  friend QFraction operator-(const QFraction& a, const QFraction& b);
  friend QFraction operator*(const QFraction& a, const QFraction& b);
  friend QFraction operator/(const QFraction& a, const QFraction& b);
  friend bool operator==(const QFraction& a, const QFraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  QPolynomial num_;
  QPolynomial den_{1};
};

/// Exact scalar: a + b*kappa with a, b in Q(q^(1/L)) and kappa^2 fixed per value.
/// Values without a kappa part never carry the extension.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : rational_(c) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) : rational_(c) {}  // NOLINT(google-explicit-constructor)
  Scalar(QFraction f) : rational_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  Scalar(QPolynomial p) : rational_(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  /// The formal generator kappa with kappa^2 = square.
  static Scalar kappa(const QFraction& square);

  const QFraction& rational_part() const { return rational_; }
  const QFraction& kappa_part() const { return kappa_coeff_; }
  const QFraction* kappa_square() const { return kappa_sq_.get(); }
  bool has_kappa() const { return !kappa_coeff_.is_zero(); }

  bool is_zero() const { return rational_.is_zero() && kappa_coeff_.is_zero(); }
  bool is_one() const { return rational_.is_one() && kappa_coeff_.is_zero(); }

  Scalar inverse() const;
  Scalar eval_q1() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  Scalar(QFraction a, QFraction b, std::shared_ptr<const QFraction> sq);
  void drop_empty_extension();
  static std::shared_ptr<const QFraction> merge_square(const Scalar& a, const Scalar& b);

  QFraction rational_;
  QFraction kappa_coeff_;
  std::shared_ptr<const QFraction> kappa_sq_;
};

/// Polynomial in h (standing for i*hbar) with Scalar coefficients; no zeros stored.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long c) : Coefficient(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  Coefficient(const Scalar& s, int h_power = 0);  // NOLINT(google-explicit-constructor)

  static Coefficient h(int power = 1) { return Coefficient(Scalar(1), power); }

  const std::map<int, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int h_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  /// Scalar multiplying h^k (zero when absent).
  Scalar at(int k) const;
  /// The part proportional to h^k as a Coefficient.
  Coefficient h_part(int k) const;
  bool has_kappa() const;

  Coefficient multiply_h(int power = 1) const;

  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Scalar& s);
  friend Coefficient operator*(const Scalar& s, const Coefficient& a) { return a * s; }
  friend bool operator==(const Coefficient& a, const Coefficient& b);

 private:
  std::map<int, Scalar> terms_;
};

// q-combinatorics ----------------------------------------------------------

/// q^a; a must be a multiple of 1/D.
Scalar q_power(const Rational& a, const QContext& ctx = {});
/// [a] = (1 - q^a) / (1 - q), reduced.
Scalar q_integer(const Rational& a, const QContext& ctx = {});
Scalar q_factorial(long n);
/// 1/[n]! for n >= 0 and exactly 0 for n < 0.
Scalar recip_q_factorial(long n);
/// [n]! / ([r]! [n-r]!), zero outside 0 <= r <= n.
Scalar q_binomial(long n, long r);

// Plain-integer counterparts used by the q = 1 formulas.
Rational factorial(long n);
Rational recip_factorial(long n);
Rational binomial(long n, long r);

/// Shifts every h exponent down by one; throws NotDivisibleByH when c has an h^0 part.
Coefficient divide_exact_h(const Coefficient& c);
/// Substitutes q = 1 everywhere; throws PoleAtQ1.
Coefficient eval_q1(const Coefficient& c);
/// The h^0 part.
Scalar eval_h0(const Coefficient& c);

// Canonical text rendering -------------------------------------------------

std::string to_string(const QPolynomial& p);
std::string to_string(const QFraction& f);
std::string to_string(const Scalar& s);
std::string to_string(const Coefficient& c);

/// Renders a scalar as a multiplicative prefix: "" for 1, "-" for -1, bare
/// for a single signed term, parenthesized otherwise.
struct ScalarPrefix {
  bool negative = false;
  std::string body;
};
ScalarPrefix scalar_prefix(const Scalar& s);

/// Joins "scalar suffix" terms with " + " / " - "; suffix may be empty.
std::string render_sum(const std::vector<std::pair<Scalar, std::string>>& terms);
/// Appends one render_sum entry per h-power of c, each followed by tail.
void append_terms(std::vector<std::pair<Scalar, std::string>>& out, const Coefficient& c,
                  const std::string& tail);

}  // namespace qmoyal
