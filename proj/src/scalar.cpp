#include "qmoyal/scalar.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qmoyal/errors.h"

namespace qmoyal {

ParseError::ParseError(std::size_t offset_, std::vector<std::string> expected_,
                       const std::string& message)
    : Error(message), offset(offset_), expected(std::move(expected_)) {}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

long to_long(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p()) {
    throw std::domain_error("rational " + r.get_str() + " is not a machine integer");
  }
  return r.get_num().get_si();
}

std::string to_string(const Rational& r) { return r.get_str(); }

void require_representable(const Rational& q_exponent, const QContext& ctx) {
  if (ctx.root_denominator < 1) {
    throw std::invalid_argument("root denominator must be positive");
  }
  Rational scaled = q_exponent * ctx.root_denominator;
  if (!is_integer(scaled)) {
    throw NonRepresentableExponent("exponent " + q_exponent.get_str() +
                                   " is not a multiple of 1/" +
                                   std::to_string(ctx.root_denominator));
  }
}

// QPolynomial ----------------------------------------------------------------

QPolynomial::QPolynomial(long c) {
  if (c != 0) terms_.push_back({0, Rational(c)});
}

QPolynomial::QPolynomial(const Rational& c) {
  if (c != 0) terms_.push_back({0, c});
}

QPolynomial QPolynomial::monomial(const Rational& coeff, const Rational& q_exponent) {
  if (!q_exponent.get_den().fits_sint_p() || !q_exponent.get_num().fits_slong_p()) {
    throw std::overflow_error("q exponent out of range");
  }
  QPolynomial p;
  if (coeff == 0) return p;
  p.root_ = static_cast<int>(q_exponent.get_den().get_si());
  p.terms_.push_back({q_exponent.get_num().get_si(), coeff});
  return p;
}

QPolynomial QPolynomial::from_terms(int root, std::vector<Term> terms) {
  QPolynomial p;
  p.root_ = root;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

bool QPolynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].exp == 0 && terms_[0].coeff == 1;
}

bool QPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0);
}

Rational QPolynomial::eval_at_one() const {
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coeff;
  return sum;
}

std::vector<QPolynomial::Term> QPolynomial::lifted_terms(int root) const {
  if (root % root_ != 0) throw std::logic_error("lifted_terms: incompatible root");
  const std::int64_t factor = root / root_;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.exp * factor, t.coeff});
  return out;
}

void QPolynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
  if (terms_.empty()) {
    root_ = 1;
    return;
  }
  std::int64_t g = root_;
  for (const auto& t : terms_) g = std::gcd(g, t.exp);
  if (g > 1) {
    root_ = static_cast<int>(root_ / g);
    for (auto& t : terms_) t.exp /= g;
  }
}

QPolynomial QPolynomial::operator-() const {
  QPolynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int root = std::lcm(a.root_, b.root_);
  auto terms = a.lifted_terms(root);
  auto more = b.lifted_terms(root);
  terms.insert(terms.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
  return QPolynomial::from_terms(root, std::move(terms));
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) { return a + (-b); }

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int root = std::lcm(a.root_, b.root_);
  const auto ta = a.lifted_terms(root);
  const auto tb = b.lifted_terms(root);
  std::vector<QPolynomial::Term> terms;
  terms.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) terms.push_back({x.exp + y.exp, x.coeff * y.coeff});
  }
  return QPolynomial::from_terms(root, std::move(terms));
}

bool operator==(const QPolynomial& a, const QPolynomial& b) {
  if (a.root_ != b.root_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

// Dense univariate helpers over Q, used only for gcd reduction.
namespace {

using Dense = std::vector<Rational>;  // index = power of t, top entry nonzero

struct Shifted {
  std::int64_t shift = 0;
  Dense coeffs;
};

Shifted to_dense(const QPolynomial& p, int root) {
  const auto terms = p.lifted_terms(root);
  Shifted s;
  s.shift = terms.front().exp;
  s.coeffs.assign(static_cast<std::size_t>(terms.back().exp - s.shift + 1), Rational(0));
  for (const auto& t : terms) s.coeffs[static_cast<std::size_t>(t.exp - s.shift)] = t.coeff;
  return s;
}

QPolynomial from_dense(const Dense& d, std::int64_t shift, int root) {
  std::vector<QPolynomial::Term> terms;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0) terms.push_back({shift + static_cast<std::int64_t>(i), d[i]});
  }
  return QPolynomial::from_terms(root, std::move(terms));
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// a = quotient * b + remainder; returns the remainder, writes the quotient.
Dense divide(Dense a, const Dense& b, Dense* quotient) {
  trim(a);
  if (quotient) quotient->clear();
  if (a.size() < b.size()) return a;
  if (quotient) quotient->assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational factor = a.back() / lead;
    if (quotient) (*quotient)[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  return a;
}

Dense monic_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Dense r = divide(a, b, nullptr);
    a = std::move(b);
    b = std::move(r);
  }
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

}  // namespace

// QFraction ----------------------------------------------------------------

QFraction::QFraction(QPolynomial num, QPolynomial den) {
  if (den.is_zero()) throw std::domain_error("division by zero in Q(q)");
  if (num.is_zero()) return;
  if (den.is_monomial()) {
    const auto& t = den.terms().front();
    num_ = num * QPolynomial::monomial(1 / t.coeff, -den.exponent_of(t));
    return;
  }
  const int root = std::lcm(num.root(), den.root());
  Shifted n = to_dense(num, root);
  Shifted d = to_dense(den, root);
  const Dense g = monic_gcd(n.coeffs, d.coeffs);
  if (g.size() > 1) {
    Dense qn, qd;
    divide(n.coeffs, g, &qn);
    divide(d.coeffs, g, &qd);
    n.coeffs = std::move(qn);
    d.coeffs = std::move(qd);
  }
  const Rational lead = d.coeffs.back();
  for (auto& c : d.coeffs) c /= lead;
  for (auto& c : n.coeffs) c /= lead;
  num_ = from_dense(n.coeffs, n.shift - d.shift, root);
  den_ = from_dense(d.coeffs, 0, root);
}

QFraction QFraction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return QFraction(den_, num_);
}

Rational QFraction::eval_at_one() const {
  const Rational d = den_.eval_at_one();
  if (d == 0) throw PoleAtQ1("denominator " + to_string(den_) + " vanishes at q = 1");
  return num_.eval_at_one() / d;
}

QFraction QFraction::operator-() const {
  QFraction f = *this;
  f.num_ = -f.num_;
  return f;
}

QFraction operator+(const QFraction& a, const QFraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_polynomial() && b.is_polynomial()) return QFraction(a.num_ + b.num_);
  if (a.den_ == b.den_) return QFraction(a.num_ + b.num_, a.den_);
  if (b.is_polynomial()) return QFraction(a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return QFraction(a.num_ * b.den_ + b.num_, b.den_);
  return QFraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QFraction operator-(const QFraction& a, const QFraction& b) { return a + (-b); }

QFraction operator*(const QFraction& a, const QFraction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) return QFraction(a.num_ * b.num_);
  return QFraction(a.num_ * b.num_, a.den_ * b.den_);
}

QFraction operator/(const QFraction& a, const QFraction& b) { return a * b.inverse(); }

// Scalar -------------------------------------------------------------------

Scalar::Scalar(QFraction a, QFraction b, std::shared_ptr<const QFraction> sq)
    : rational_(std::move(a)), kappa_coeff_(std::move(b)), kappa_sq_(std::move(sq)) {
  drop_empty_extension();
}

Scalar Scalar::kappa(const QFraction& square) {
  if (square.is_zero()) throw std::invalid_argument("kappa^2 must be nonzero");
  return Scalar(QFraction(), QFraction(1), std::make_shared<const QFraction>(square));
}

void Scalar::drop_empty_extension() {
  if (kappa_coeff_.is_zero()) kappa_sq_.reset();
}

std::shared_ptr<const QFraction> Scalar::merge_square(const Scalar& a, const Scalar& b) {
  if (a.kappa_sq_ && b.kappa_sq_) {
    if (a.kappa_sq_ != b.kappa_sq_ && !(*a.kappa_sq_ == *b.kappa_sq_)) {
      throw std::invalid_argument("scalars from different quadratic extensions");
    }
    return a.kappa_sq_;
  }
  return a.kappa_sq_ ? a.kappa_sq_ : b.kappa_sq_;
}

Scalar Scalar::operator-() const {
  return Scalar(-rational_, -kappa_coeff_, kappa_sq_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!kappa_sq_ && !o.kappa_sq_) {
    rational_ = rational_ + o.rational_;
    return *this;
  }
  auto sq = merge_square(*this, o);
  rational_ = rational_ + o.rational_;
  kappa_coeff_ = kappa_coeff_ + o.kappa_coeff_;
  kappa_sq_ = std::move(sq);
  drop_empty_extension();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!kappa_sq_ && !o.kappa_sq_) {
    rational_ = rational_ * o.rational_;
    return *this;
  }
  auto sq = merge_square(*this, o);
  const QFraction a = rational_ * o.rational_ + kappa_coeff_ * o.kappa_coeff_ * *sq;
  const QFraction b = rational_ * o.kappa_coeff_ + kappa_coeff_ * o.rational_;
  rational_ = a;
  kappa_coeff_ = b;
  kappa_sq_ = std::move(sq);
  drop_empty_extension();
  return *this;
}

Scalar Scalar::inverse() const {
  if (!kappa_sq_) return Scalar(rational_.inverse());
  // (a + b k)^-1 = (a - b k) / (a^2 - b^2 k^2)
  const QFraction norm = rational_ * rational_ - kappa_coeff_ * kappa_coeff_ * *kappa_sq_;
  if (norm.is_zero()) throw std::domain_error("zero divisor in quadratic extension");
  const QFraction inv = norm.inverse();
  return Scalar(rational_ * inv, -kappa_coeff_ * inv, kappa_sq_);
}

Scalar Scalar::eval_q1() const {
  if (!kappa_sq_) return Scalar(rational_.eval_at_one());
  return Scalar(QFraction(rational_.eval_at_one()), QFraction(kappa_coeff_.eval_at_one()),
                std::make_shared<const QFraction>(kappa_sq_->eval_at_one()));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.rational_ == b.rational_) || !(a.kappa_coeff_ == b.kappa_coeff_)) return false;
  if (a.kappa_sq_ && b.kappa_sq_) return *a.kappa_sq_ == *b.kappa_sq_;
  return !a.kappa_sq_ && !b.kappa_sq_;
}

// Coefficient --------------------------------------------------------------

Coefficient::Coefficient(const Scalar& s, int h_power) {
  if (h_power < 0) throw std::invalid_argument("negative h power");
  if (!s.is_zero()) terms_.emplace(h_power, s);
}

bool Coefficient::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one();
}

Scalar Coefficient::at(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar() : it->second;
}

Coefficient Coefficient::h_part(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Coefficient() : Coefficient(it->second, k);
}

bool Coefficient::has_kappa() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.second.has_kappa(); });
}

Coefficient Coefficient::multiply_h(int power) const {
  Coefficient c;
  for (const auto& [k, s] : terms_) c.terms_.emplace(k + power, s);
  return c;
}

Coefficient Coefficient::operator-() const {
  Coefficient c = *this;
  for (auto& [k, s] : c.terms_) s = -s;
  return c;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  for (const auto& [k, s] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, s);
    if (!inserted) {
      it->second += s;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) { return *this += -o; }

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  Coefficient c;
  for (const auto& [ka, sa] : a.terms_) {
    for (const auto& [kb, sb] : b.terms_) c += Coefficient(sa * sb, ka + kb);
  }
  return c;
}

Coefficient operator*(const Coefficient& a, const Scalar& s) {
  Coefficient c;
  if (s.is_zero()) return c;
  for (const auto& [k, v] : a.terms_) {
    Scalar prod = v * s;
    if (!prod.is_zero()) c.terms_.emplace(k, std::move(prod));
  }
  return c;
}

bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }

// q-combinatorics ----------------------------------------------------------

Scalar q_power(const Rational& a, const QContext& ctx) {
  require_representable(a, ctx);
  return Scalar(QPolynomial::monomial(1, a));
}

namespace {

QPolynomial q_integer_poly(long n) {
  std::vector<QPolynomial::Term> terms;
  for (long i = 0; i < n; ++i) terms.push_back({i, Rational(1)});
  return QPolynomial::from_terms(1, std::move(terms));
}

}  // namespace

Scalar q_integer(const Rational& a, const QContext& ctx) {
  require_representable(a, ctx);
  if (a == 0) return Scalar();
  if (is_integer(a) && a > 0) return Scalar(q_integer_poly(to_long(a)));
  if (is_integer(a)) {
    // [-n] = -q^-n [n]
    const long n = -to_long(a);
    return Scalar(-QPolynomial::monomial(1, Rational(-n)) * q_integer_poly(n));
  }
  return Scalar(QFraction(QPolynomial(1) - QPolynomial::monomial(1, a),
                          QPolynomial(1) - QPolynomial::monomial(1, 1)));
}

Scalar q_factorial(long n) {
  if (n < 0) throw std::invalid_argument("q_factorial of a negative integer");
  QPolynomial p(1);
  for (long i = 2; i <= n; ++i) p = p * q_integer_poly(i);
  return Scalar(p);
}

Scalar recip_q_factorial(long n) {
  if (n < 0) return Scalar();
  return q_factorial(n).inverse();
}

Scalar q_binomial(long n, long r) {
  if (n < 0) throw std::invalid_argument("q_binomial with negative n");
  if (r < 0 || r > n) return Scalar();
  // Pascal rule [n, r] = [n-1, r-1] + q^r [n-1, r], built row by row.
  std::vector<QPolynomial> row{QPolynomial(1)};
  for (long m = 1; m <= n; ++m) {
    std::vector<QPolynomial> next(static_cast<std::size_t>(m + 1));
    next[0] = QPolynomial(1);
    next[static_cast<std::size_t>(m)] = QPolynomial(1);
    for (long j = 1; j < m; ++j) {
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] +
          QPolynomial::monomial(1, Rational(j)) * row[static_cast<std::size_t>(j)];
    }
    row = std::move(next);
  }
  return Scalar(row[static_cast<std::size_t>(r)]);
}

Rational factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational recip_factorial(long n) {
  if (n < 0) return 0;
  return 1 / factorial(n);
}

Rational binomial(long n, long r) {
  if (n < 0 || r < 0 || r > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(b);
}

Coefficient divide_exact_h(const Coefficient& c) {
  if (!c.at(0).is_zero()) {
    throw NotDivisibleByH("coefficient " + to_string(c) + " has a nonzero h^0 part");
  }
  Coefficient out;
  for (const auto& [k, s] : c.terms()) out += Coefficient(s, k - 1);
  return out;
}

Coefficient eval_q1(const Coefficient& c) {
  Coefficient out;
  for (const auto& [k, s] : c.terms()) out += Coefficient(s.eval_q1(), k);
  return out;
}

Scalar eval_h0(const Coefficient& c) { return c.at(0); }

// Rendering ----------------------------------------------------------------

namespace {

std::string q_exponent_suffix(const Rational& e) {
  if (e == 1) return "q";
  if (is_integer(e)) return "q^" + e.get_str();
  return "q^(" + e.get_str() + ")";
}

// A single term without its sign.
std::string unsigned_term(const Rational& coeff, const Rational& exponent) {
  const Rational mag = abs(coeff);
  if (exponent == 0) return mag.get_str();
  const std::string prefix = mag == 1 ? "" : mag.get_str();
  return prefix + q_exponent_suffix(exponent);
}

}  // namespace

std::string to_string(const QPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coeff < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? '-' : '+';
    }
    out += unsigned_term(t.coeff, p.exponent_of(t));
    first = false;
  }
  return out;
}

std::string to_string(const QFraction& f) {
  if (f.is_polynomial()) return to_string(f.numerator());
  std::string num = to_string(f.numerator());
  if (f.numerator().terms().size() > 1) num = "(" + num + ")";
  return num + "/(" + to_string(f.denominator()) + ")";
}

std::string to_string(const Scalar& s) {
  if (!s.has_kappa()) return to_string(s.rational_part());
  std::string out;
  if (!s.rational_part().is_zero()) out = to_string(s.rational_part());
  const ScalarPrefix k = scalar_prefix(Scalar(s.kappa_part()));
  if (!out.empty() || k.negative) out += k.negative ? "-" : "+";
  if (!k.body.empty()) out += k.body + " ";
  out += "kappa";
  return out;
}

ScalarPrefix scalar_prefix(const Scalar& s) {
  if (s.is_one()) return {false, ""};
  if (s == Scalar(-1)) return {true, ""};
  const QFraction& f = s.rational_part();
  if (!s.has_kappa() && f.is_polynomial() && f.numerator().is_monomial()) {
    const auto& t = f.numerator().terms().front();
    return {t.coeff < 0, unsigned_term(t.coeff, f.numerator().exponent_of(t))};
  }
  return {false, "(" + to_string(s) + ")"};
}

std::string render_sum(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::string out;
  bool first = true;
  for (const auto& [scalar, suffix] : terms) {
    if (scalar.is_zero()) continue;
    ScalarPrefix pre = scalar_prefix(scalar);
    std::string piece = pre.body;
    if (!piece.empty() && !suffix.empty()) piece += ' ';
    piece += suffix;
    if (piece.empty()) piece = "1";
    if (first) {
      out += pre.negative ? "-" + piece : piece;
    } else {
      out += (pre.negative ? " - " : " + ") + piece;
    }
    first = false;
  }
  return first ? "0" : out;
}

void append_terms(std::vector<std::pair<Scalar, std::string>>& out, const Coefficient& c,
                  const std::string& tail) {
  for (const auto& [k, s] : c.terms()) {
    std::string suffix = k == 0 ? "" : (k == 1 ? "h" : "h^" + std::to_string(k));
    if (!suffix.empty() && !tail.empty()) suffix += ' ';
    suffix += tail;
    out.emplace_back(s, std::move(suffix));
  }
}

std::string to_string(const Coefficient& c) {
  std::vector<std::pair<Scalar, std::string>> terms;
  append_terms(terms, c, "");
  return render_sum(terms);
}

}  // namespace qmoyal
