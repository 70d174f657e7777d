#include "qmoyal/star_calculus.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

#include "qmoyal/errors.h"

namespace qmoyal {

// SymbolPoly ---------------------------------------------------------------

SymbolPoly::SymbolPoly(const Coefficient& c) { add({0, 0}, c); }

SymbolPoly::SymbolPoly(const SymbolMonomial& m, const Coefficient& c) { add(m, c); }

SymbolPoly SymbolPoly::monomial(const Rational& p_exp, const Rational& x_exp, const Coefficient& c) {
  return SymbolPoly(SymbolMonomial{p_exp, x_exp}, c);
}

bool SymbolPoly::has_kappa() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.has_kappa(); });
}

void SymbolPoly::add(const SymbolMonomial& m, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<SymbolPoly> SymbolPoly::monomials() const {
  std::vector<SymbolPoly> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(m, c);
  return out;
}

SymbolPoly SymbolPoly::operator-() const {
  SymbolPoly f = *this;
  for (auto& [m, c] : f.terms_) c = -c;
  return f;
}

SymbolPoly& SymbolPoly::operator+=(const SymbolPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

SymbolPoly& SymbolPoly::operator-=(const SymbolPoly& o) { return *this += -o; }

SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
  SymbolPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add({ma.p + mb.p, ma.x + mb.x}, ca * cb);
  }
  return out;
}

SymbolPoly operator*(const SymbolPoly& a, const Coefficient& c) {
  SymbolPoly out;
  for (const auto& [m, cm] : a.terms_) out.add(m, cm * c);
  return out;
}

namespace {

std::string power_suffix(char var, const Rational& e) {
  if (e == 0) return "";
  std::string s(1, var);
  if (e == 1) return s;
  if (is_integer(e)) return s + "^" + e.get_str();
  return s + "^(" + e.get_str() + ")";
}

std::string join_words(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + " " + b;
}

std::string monomial_suffix(const SymbolMonomial& m) {
  return join_words(power_suffix('p', m.p), power_suffix('x', m.x));
}

void append_symbol_terms(std::vector<std::pair<Scalar, std::string>>& parts, const SymbolPoly& f,
                         const std::string& lead) {
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    append_terms(parts, it->second, join_words(lead, monomial_suffix(it->first)));
  }
}

}  // namespace

std::string to_string(const SymbolPoly& f) {
  std::vector<std::pair<Scalar, std::string>> parts;
  append_symbol_terms(parts, f, "");
  return render_sum(parts);
}

SymbolPoly eval_q1(const SymbolPoly& f) {
  SymbolPoly out;
  for (const auto& [m, c] : f.terms()) out.add(m, eval_q1(c));
  return out;
}

SymbolPoly eval_h0(const SymbolPoly& f) {
  SymbolPoly out;
  for (const auto& [m, c] : f.terms()) out.add(m, Coefficient(eval_h0(c)));
  return out;
}

SymbolPoly divide_exact_h(const SymbolPoly& f) {
  SymbolPoly out;
  for (const auto& [m, c] : f.terms()) out.add(m, divide_exact_h(c));
  return out;
}

// Product ids --------------------------------------------------------------

const std::vector<StarProductId>& all_star_products() {
  static const std::vector<StarProductId> ids = {
      StarProductId::HbarStandard,       StarProductId::HbarAnti,       StarProductId::HbarWeyl,
      StarProductId::ClassicalQStandard, StarProductId::ClassicalQAnti, StarProductId::ClassicalQWeyl,
      StarProductId::QStandard,          StarProductId::QAnti,          StarProductId::QWeylGF,
  };
  return ids;
}

std::string to_string(StarProductId id) {
  switch (id) {
    case StarProductId::HbarStandard: return "hbar-standard";
    case StarProductId::HbarAnti: return "hbar-anti";
    case StarProductId::HbarWeyl: return "hbar-weyl";
    case StarProductId::ClassicalQStandard: return "classical-q-standard";
    case StarProductId::ClassicalQAnti: return "classical-q-anti";
    case StarProductId::ClassicalQWeyl: return "classical-q-weyl";
    case StarProductId::QStandard: return "q-standard";
    case StarProductId::QAnti: return "q-anti";
    case StarProductId::QWeylGF: return "q-weyl-gf";
  }
  throw std::logic_error("unknown star product id");
}

StarProductId star_product_from_string(const std::string& name) {
  for (auto id : all_star_products()) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown star product: " + name);
}

StarProductId hbar_counterpart(StarProductId id) {
  switch (id) {
    case StarProductId::QStandard: return StarProductId::HbarStandard;
    case StarProductId::QAnti: return StarProductId::HbarAnti;
    case StarProductId::QWeylGF: return StarProductId::HbarWeyl;
    default: return id;
  }
}

bool is_hbar_product(StarProductId id) {
  return id == StarProductId::HbarStandard || id == StarProductId::HbarAnti ||
         id == StarProductId::HbarWeyl;
}

// Derivatives --------------------------------------------------------------

namespace {

// Order at which repeated differentiation of z^e vanishes, if it ever does.
std::optional<long> vanishing_order(const Rational& e) {
  if (is_integer(e) && e >= 0) return to_long(e) + 1;
  return std::nullopt;
}

// D^r z^a = [a][a-1]...[a-r+1] z^(a-r)
Scalar jackson_falling(const Rational& a, long r, const QContext& ctx) {
  Scalar s(1);
  for (long i = 0; i < r && !s.is_zero(); ++i) s *= q_integer(a - i, ctx);
  return s;
}

Rational falling(const Rational& a, long r) {
  Rational s = 1;
  for (long i = 0; i < r; ++i) s *= a - i;
  return s;
}

Scalar minus_half_power(long k) {
  Rational r = 1;
  for (long i = 0; i < k; ++i) r *= make_rational(-1, 2);
  return Scalar(r);
}

// Largest number of derivatives that can hit a pair of factors before one of
// them is annihilated, or nullopt when neither ever vanishes.
std::optional<long> pair_bound(const Rational& e1, const Rational& e2) {
  auto a = vanishing_order(e1);
  auto b = vanishing_order(e2);
  if (a && b) return std::min(*a, *b) - 1;
  if (a) return *a - 1;
  if (b) return *b - 1;
  return std::nullopt;
}

long series_bound(std::optional<long> bound, const QContext& ctx, StarProductId id) {
  if (bound) return ctx.h_order_limit >= 0 ? std::min<long>(*bound, ctx.h_order_limit) : *bound;
  if (ctx.h_order_limit >= 0) return ctx.h_order_limit;
  throw NonTerminatingSeries("the " + to_string(id) +
                             " series does not terminate on these exponents; set an h-order limit");
}

struct Mono {
  Rational p;
  Rational x;
  const Coefficient* c;
};

void star_monomials(StarProductId id, const Mono& f, const Mono& g, const QContext& ctx,
                    SymbolPoly& out) {
  const Coefficient base = *f.c * *g.c;
  const Rational& m = f.p;
  const Rational& n = f.x;
  const Rational& k = g.p;
  const Rational& l = g.x;
  auto emit = [&](long hpow, const Scalar& s, const Rational& pe, const Rational& xe) {
    if (s.is_zero()) return;
    out.add({pe, xe}, base * Coefficient(s, static_cast<int>(hpow)));
  };

  switch (id) {
    case StarProductId::ClassicalQStandard:
      emit(0, q_power(m * l, ctx), m + k, n + l);
      return;
    case StarProductId::ClassicalQAnti:
      emit(0, q_power(-n * k, ctx), m + k, n + l);
      return;
    case StarProductId::ClassicalQWeyl:
      emit(0, q_power(-(n * k - m * l) / 2, ctx), m + k, n + l);
      return;

    case StarProductId::QStandard: {
      // Derivatives first, then the Euler coupling on the differentiated degrees.
      const long rmax = series_bound(pair_bound(m, l), ctx, id);
      for (long r = 0; r <= rmax; ++r) {
        Scalar s = recip_q_factorial(r) * jackson_falling(m, r, ctx) * jackson_falling(l, r, ctx);
        if (s.is_zero()) continue;
        s *= q_power((m - r) * (l - r), ctx);
        emit(r, s, m + k - r, n + l - r);
      }
      return;
    }
    case StarProductId::HbarStandard: {
      const long rmax = series_bound(pair_bound(m, l), ctx, id);
      for (long r = 0; r <= rmax; ++r) {
        emit(r, Scalar(recip_factorial(r) * falling(m, r) * falling(l, r)), m + k - r, n + l - r);
      }
      return;
    }
    case StarProductId::QAnti: {
      // Euler coupling first, on the undifferentiated degrees.
      const Scalar weight = q_power(-n * k, ctx);
      const long rmax = series_bound(pair_bound(n, k), ctx, id);
      for (long r = 0; r <= rmax; ++r) {
        Scalar s = recip_q_factorial(r) * jackson_falling(n, r, ctx) * jackson_falling(k, r, ctx);
        if (s.is_zero()) continue;
        s *= weight * q_power(make_rational(r * (r - 1), 2), ctx);
        if (r % 2 == 1) s = -s;
        emit(r, s, m + k - r, n + l - r);
      }
      return;
    }
    case StarProductId::HbarAnti: {
      const long rmax = series_bound(pair_bound(n, k), ctx, id);
      for (long r = 0; r <= rmax; ++r) {
        Rational v = recip_factorial(r) * falling(n, r) * falling(k, r);
        if (r % 2 == 1) v = -v;
        emit(r, Scalar(v), m + k - r, n + l - r);
      }
      return;
    }
    case StarProductId::QWeylGF:
    case StarProductId::HbarWeyl: {
      const bool deformed = id == StarProductId::QWeylGF;
      // alpha - beta derivatives hit (x of f, p of g); beta hit (p of f, x of g).
      const auto b1 = pair_bound(n, k);
      const auto b2 = pair_bound(m, l);
      std::optional<long> total;
      if (b1 && b2) total = *b1 + *b2;
      const long amax = series_bound(total, ctx, id);
      const Scalar weight = deformed ? q_power(-(n * k - m * l) / 2, ctx) : Scalar(1);
      for (long alpha = 0; alpha <= amax; ++alpha) {
        Scalar sum;
        for (long beta = 0; beta <= alpha; ++beta) {
          const long gamma = alpha - beta;
          if ((b1 && gamma > *b1) || (b2 && beta > *b2)) continue;
          Scalar s;
          if (deformed) {
            s = recip_q_factorial(gamma) * recip_q_factorial(beta) *
                jackson_falling(n, gamma, ctx) * jackson_falling(m, beta, ctx) *
                jackson_falling(k, gamma, ctx) * jackson_falling(l, beta, ctx);
          } else {
            s = Scalar(recip_factorial(gamma) * recip_factorial(beta) * falling(n, gamma) *
                       falling(m, beta) * falling(k, gamma) * falling(l, beta));
          }
          if (beta % 2 == 1) s = -s;
          sum += s;
        }
        if (sum.is_zero()) continue;
        emit(alpha, sum * minus_half_power(alpha) * weight, m + k - alpha, n + l - alpha);
      }
      return;
    }
  }
  throw std::logic_error("unhandled star product id");
}

}  // namespace

SymbolPoly q_derivative(Variable var, const SymbolPoly& f, const QContext& ctx) {
  SymbolPoly out;
  for (const auto& [m, c] : f.terms()) {
    const Rational& e = var == Variable::p ? m.p : m.x;
    const Scalar s = q_integer(e, ctx);
    if (s.is_zero()) continue;
    SymbolMonomial d = m;
    (var == Variable::p ? d.p : d.x) -= 1;
    out.add(d, c * s);
  }
  return out;
}

SymbolPoly star(StarProductId id, const SymbolPoly& f, const SymbolPoly& g, const QContext& ctx) {
  SymbolPoly out;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      star_monomials(id, Mono{mf.p, mf.x, &cf}, Mono{mg.p, mg.x, &cg}, ctx, out);
    }
  }
  return out;
}

SymbolPoly q_moyal_bracket(StarProductId id, const LabeledSymbol& f, const LabeledSymbol& g,
                           const QContext& ctx) {
  const bool plain = is_hbar_product(id);
  const Scalar w_fg = plain ? Scalar(1) : q_power(f.x_label * g.p_label, ctx);
  const Scalar w_gf = plain ? Scalar(1) : q_power(g.x_label * f.p_label, ctx);
  const SymbolPoly numerator =
      star(id, f.expr, g.expr, ctx) * Coefficient(w_fg) - star(id, g.expr, f.expr, ctx) * Coefficient(w_gf);
  return divide_exact_h(numerator);
}

SymbolPoly q_moyal_bracket(StarProductId id, const SymbolPoly& f, const SymbolPoly& g,
                           const QContext& ctx) {
  SymbolPoly out;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      out += q_moyal_bracket(id, LabeledSymbol{SymbolPoly(mf, cf), mf.x, mf.p},
                             LabeledSymbol{SymbolPoly(mg, cg), mg.x, mg.p}, ctx);
    }
  }
  return out;
}

SymbolPoly q_poisson_bracket(const SymbolPoly& f, const SymbolPoly& g, const QContext& ctx) {
  SymbolPoly out;
  for (const auto& [mf, cf] : f.terms()) {
    const SymbolPoly fi(mf, cf);
    for (const auto& [mg, cg] : g.terms()) {
      const SymbolPoly gj(mg, cg);
      // The Euler coupling between D_p(.) and D_x(.) is the classical standard product.
      const SymbolPoly first = star(StarProductId::ClassicalQStandard, q_derivative(Variable::p, fi, ctx),
                                    q_derivative(Variable::x, gj, ctx), ctx);
      const SymbolPoly second = star(StarProductId::ClassicalQStandard, q_derivative(Variable::p, gj, ctx),
                                     q_derivative(Variable::x, fi, ctx), ctx);
      out += first * Coefficient(q_power(mf.x * mg.p, ctx));
      out -= second * Coefficient(q_power(mg.x * mf.p, ctx));
    }
  }
  return out;
}

SymbolPoly symbol_of(const NormalForm& nf) {
  SymbolPoly out;
  for (const auto& [key, c] : nf.terms) {
    const auto [a, b] = key;
    if (nf.ordering == Ordering::standard) {
      out.add({Rational(b), Rational(a)}, c);
    } else {
      out.add({Rational(a), Rational(b)}, c);
    }
  }
  return out;
}

NormalForm quantize(Ordering ordering, const SymbolPoly& f) {
  NormalForm out{ordering, {}};
  for (const auto& [m, c] : f.terms()) {
    if (!is_integer(m.p) || !is_integer(m.x) || m.p < 0 || m.x < 0) {
      throw NonQuantizableExponent("symbol p^" + m.p.get_str() + " x^" + m.x.get_str() +
                                   " has no ordered operator counterpart");
    }
    const int p = static_cast<int>(to_long(m.p));
    const int x = static_cast<int>(to_long(m.x));
    out.add(ordering == Ordering::standard ? NormalForm::Key{x, p} : NormalForm::Key{p, x}, c);
  }
  return out;
}

std::string to_string(Association a) {
  switch (a) {
    case Association::left: return "left";
    case Association::right: return "right";
    case Association::balanced: return "balanced";
  }
  throw std::logic_error("unknown association");
}

Association association_from_string(const std::string& name) {
  for (auto a : {Association::left, Association::right, Association::balanced}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown association: " + name);
}

namespace {

template <typename T>
T fold(const std::vector<T>& items, std::size_t lo, std::size_t hi, Association assoc,
       const std::function<T(const T&, const T&)>& op) {
  if (hi - lo == 1) return items[lo];
  switch (assoc) {
    case Association::left: {
      T acc = items[lo];
      for (std::size_t i = lo + 1; i < hi; ++i) acc = op(acc, items[i]);
      return acc;
    }
    case Association::right: {
      T acc = items[hi - 1];
      for (std::size_t i = hi - 1; i-- > lo;) acc = op(items[i], acc);
      return acc;
    }
    case Association::balanced: {
      const std::size_t mid = lo + (hi - lo) / 2;
      return op(fold(items, lo, mid, assoc, op), fold(items, mid, hi, assoc, op));
    }
  }
  throw std::logic_error("unknown association");
}

}  // namespace

SymbolPoly star_fold(StarProductId id, const std::vector<SymbolPoly>& factors, Association assoc,
                     const QContext& ctx) {
  if (factors.empty()) return SymbolPoly(Coefficient(1));
  return fold<SymbolPoly>(factors, 0, factors.size(), assoc,
                          [&](const SymbolPoly& a, const SymbolPoly& b) { return star(id, a, b, ctx); });
}

// TruncatedSeries ----------------------------------------------------------

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TruncatedSeries::TruncatedSeries(int order, std::vector<SymbolPoly> coeffs) : TruncatedSeries(order) {
  for (std::size_t k = 0; k < coeffs.size() && k <= static_cast<std::size_t>(order); ++k) {
    coeffs_[k] = std::move(coeffs[k]);
  }
}

void TruncatedSeries::set(int k, SymbolPoly value) {
  if (k < 0) throw std::out_of_range("negative series index");
  if (k > order_) return;
  coeffs_[static_cast<std::size_t>(k)] = std::move(value);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.order_ != order_) throw std::invalid_argument("series truncation orders differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

TruncatedSeries TruncatedSeries::scaled(const Coefficient& c) const {
  TruncatedSeries out(order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] = coeffs_[k] * c;
  return out;
}

std::string to_string(const TruncatedSeries& s, const std::string& variable) {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (int k = 0; k <= s.order(); ++k) {
    const std::string lead = k == 0 ? "" : (k == 1 ? variable : variable + "^" + std::to_string(k));
    append_symbol_terms(parts, s[k], lead);
  }
  return render_sum(parts);
}

TruncatedSeries star(StarProductId id, const TruncatedSeries& f, const TruncatedSeries& g,
                     const QContext& ctx) {
  if (f.order() != g.order()) throw std::invalid_argument("series truncation orders differ");
  TruncatedSeries out(f.order());
  for (int i = 0; i <= f.order(); ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; i + j <= f.order(); ++j) {
      if (g[j].is_zero()) continue;
      SymbolPoly acc = out[i + j];
      acc += star(id, f[i], g[j], ctx);
      out.set(i + j, std::move(acc));
    }
  }
  return out;
}

TruncatedSeries star_power(StarProductId id, const TruncatedSeries& f, int n, Association assoc,
                           const QContext& ctx) {
  if (n < 1) throw std::invalid_argument("star_power needs n >= 1");
  const std::vector<TruncatedSeries> factors(static_cast<std::size_t>(n), f);
  return fold<TruncatedSeries>(factors, 0, factors.size(), assoc,
                               [&](const TruncatedSeries& a, const TruncatedSeries& b) {
                                 return star(id, a, b, ctx);
                               });
}

}  // namespace qmoyal
