#include "qmoyal/operator_algebra.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qmoyal/errors.h"

namespace qmoyal {

std::string to_string(Ordering o) {
  return o == Ordering::standard ? "standard" : "antistandard";
}

// OperatorWord -------------------------------------------------------------

OperatorWord::OperatorWord(const std::vector<Factor>& factors) {
  for (const auto& f : factors) push(f.letter, f.power);
}

OperatorWord OperatorWord::letter(Letter l, int power) {
  OperatorWord w;
  w.push(l, power);
  return w;
}

OperatorWord OperatorWord::ordered(Ordering o, int a, int b) {
  const Letter first = o == Ordering::standard ? Letter::X : Letter::P;
  const Letter second = o == Ordering::standard ? Letter::P : Letter::X;
  OperatorWord w;
  w.push(first, a);
  w.push(second, b);
  return w;
}

OperatorWord OperatorWord::from_letters(const std::string& letters) {
  OperatorWord w;
  for (char c : letters) {
    if (c == 'P') {
      w.push(Letter::P, 1);
    } else if (c == 'X') {
      w.push(Letter::X, 1);
    } else {
      throw std::invalid_argument(std::string("not an operator letter: ") + c);
    }
  }
  return w;
}

void OperatorWord::push(Letter l, int power) {
  if (power < 0) throw std::invalid_argument("negative operator power");
  if (power == 0) return;
  if (!factors_.empty() && factors_.back().letter == l) {
    factors_.back().power += power;
  } else {
    factors_.push_back({l, power});
  }
}

int OperatorWord::x_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.letter == Letter::X ? f.power : 0;
  return d;
}

int OperatorWord::p_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.letter == Letter::P ? f.power : 0;
  return d;
}

std::string OperatorWord::letters() const {
  std::string s;
  for (const auto& f : factors_) s.append(static_cast<std::size_t>(f.power), f.letter == Letter::P ? 'P' : 'X');
  return s;
}

OperatorWord OperatorWord::operator*(const OperatorWord& o) const {
  OperatorWord w = *this;
  for (const auto& f : o.factors_) w.push(f.letter, f.power);
  return w;
}

namespace {

std::string word_suffix(const OperatorWord& w) {
  std::string s;
  for (const auto& f : w.factors()) {
    if (!s.empty()) s += ' ';
    s += f.letter == Letter::P ? 'P' : 'X';
    if (f.power != 1) s += "^" + std::to_string(f.power);
  }
  return s;
}

}  // namespace

std::string to_string(const OperatorWord& w) { return w.empty() ? "1" : word_suffix(w); }

// OperatorExpr -------------------------------------------------------------

OperatorExpr::OperatorExpr(const OperatorWord& w, const Coefficient& c) { add(w, c); }

OperatorExpr::OperatorExpr(const Coefficient& c) { add(OperatorWord(), c); }

void OperatorExpr::add(const OperatorWord& w, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr e = *this;
  for (auto& [w, c] : e.terms_) c = -c;
  return e;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) { return *this += -o; }

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  OperatorExpr out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
  }
  return out;
}

OperatorExpr operator*(const OperatorExpr& a, const Coefficient& c) {
  OperatorExpr out;
  for (const auto& [w, cw] : a.terms_) out.add(w, cw * c);
  return out;
}

std::string to_string(const OperatorExpr& e) {
  std::vector<const OperatorExpr::Terms::value_type*> order;
  for (const auto& kv : e.terms()) order.push_back(&kv);
  std::stable_sort(order.begin(), order.end(), [](const auto* l, const auto* r) {
    return l->first.length() > r->first.length();
  });
  std::vector<std::pair<Scalar, std::string>> parts;
  for (const auto* kv : order) append_terms(parts, kv->second, word_suffix(kv->first));
  return render_sum(parts);
}

// NormalForm ---------------------------------------------------------------

Coefficient NormalForm::at(int a, int b) const {
  auto it = terms.find({a, b});
  return it == terms.end() ? Coefficient() : it->second;
}

void NormalForm::add(Key k, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  if (o.ordering != ordering && !o.is_zero()) {
    throw std::invalid_argument("adding normal forms of different orderings");
  }
  for (const auto& [k, c] : o.terms) add(k, c);
  return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& o) { return *this += o.scaled(Coefficient(-1)); }

NormalForm NormalForm::scaled(const Coefficient& c) const {
  NormalForm out{ordering, {}};
  for (const auto& [k, v] : terms) out.add(k, v * c);
  return out;
}

std::string to_string(const NormalForm& nf) {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (auto it = nf.terms.rbegin(); it != nf.terms.rend(); ++it) {
    const auto& [key, c] = *it;
    append_terms(parts, c, word_suffix(OperatorWord::ordered(nf.ordering, key.first, key.second)));
  }
  return render_sum(parts);
}

OperatorExpr to_expr(const NormalForm& nf) {
  OperatorExpr e;
  for (const auto& [k, c] : nf.terms) e.add(OperatorWord::ordered(nf.ordering, k.first, k.second), c);
  return e;
}

NormalForm eval_q1(const NormalForm& nf) {
  NormalForm out{nf.ordering, {}};
  for (const auto& [k, c] : nf.terms) out.add(k, eval_q1(c));
  return out;
}

// LabeledOperator ----------------------------------------------------------

LabeledOperator LabeledOperator::monomial(const OperatorWord& w) {
  return {OperatorExpr(w), w.x_degree(), w.p_degree()};
}

LabeledOperator LabeledOperator::homogeneous(const OperatorExpr& e) {
  LabeledOperator out{e, 0, 0};
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    if (first) {
      out.x_label = w.x_degree();
      out.p_label = w.p_degree();
      first = false;
    } else if (w.x_degree() != out.x_label || w.p_degree() != out.p_label) {
      throw std::invalid_argument("operator is not homogeneous; explicit labels are required");
    }
  }
  return out;
}

// Rewriting ----------------------------------------------------------------

namespace {

void accumulate(std::map<std::string, Coefficient>& pending, std::string word,
                const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = pending.try_emplace(std::move(word), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) pending.erase(it);
  }
}

}  // namespace

NormalForm normal_order(const OperatorExpr& expr, Ordering ordering, QRegime regime,
                        const SiteChooser& chooser) {
  const bool standard = ordering == Ordering::standard;
  const char left = standard ? 'X' : 'P';
  const char right = standard ? 'P' : 'X';
  const bool unity = regime == QRegime::unity;
  // standard: PX = q XP + h;  antistandard: XP = q^-1 PX - q^-1 h
  const Scalar swap_weight = unity ? Scalar(1) : q_power(standard ? 1 : -1);
  const Coefficient contraction = standard ? Coefficient::h() : Coefficient(-swap_weight, 1);

  std::map<std::string, Coefficient> pending;
  for (const auto& [w, c] : expr.terms()) accumulate(pending, w.letters(), c);

  NormalForm out{ordering, {}};
  std::vector<std::size_t> sites;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const std::string& word = node.key();
    const Coefficient& c = node.mapped();
    sites.clear();
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] == right && word[i + 1] == left) sites.push_back(i);
    }
    if (sites.empty()) {
      const auto n_left = static_cast<int>(std::count(word.begin(), word.end(), left));
      out.add({n_left, static_cast<int>(word.size()) - n_left}, c);
      continue;
    }
    std::size_t pick = chooser ? chooser(sites.size()) : 0;
    if (pick >= sites.size()) throw std::out_of_range("site chooser returned an invalid index");
    const std::size_t i = sites[pick];
    std::string swapped = word;
    std::swap(swapped[i], swapped[i + 1]);
    std::string contracted = word;
    contracted.erase(i, 2);
    accumulate(pending, std::move(swapped), c * swap_weight);
    accumulate(pending, std::move(contracted), c * contraction);
  }
  return out;
}

NormalForm normal_order_closed_form(int b, int c) {
  NormalForm out{Ordering::standard, {}};
  for (int r = 0; r <= std::min(b, c); ++r) {
    Scalar s = q_power((b - r) * (c - r)) * q_binomial(b, r) * q_binomial(c, r) * q_factorial(r);
    out.add({c - r, b - r}, Coefficient(s, r));
  }
  return out;
}

NormalForm multiply(const NormalForm& a, const NormalForm& b, QRegime regime) {
  if (a.ordering != b.ordering) throw std::invalid_argument("multiply: orderings differ");
  return normal_order(to_expr(a) * to_expr(b), a.ordering, regime);
}

NormalForm q_commutator(const LabeledOperator& a, const LabeledOperator& b, Ordering ordering,
                        QRegime regime) {
  const bool unity = regime == QRegime::unity;
  const Scalar w_ab = unity ? Scalar(1) : q_power(a.x_label * b.p_label);
  const Scalar w_ba = unity ? Scalar(1) : q_power(a.p_label * b.x_label);
  const OperatorExpr expr =
      a.expr * b.expr * Coefficient(w_ab) - b.expr * a.expr * Coefficient(w_ba);
  return normal_order(expr, ordering, regime);
}

NormalForm weyl_symmetrize(int m, int n, QRegime regime) {
  if (regime != QRegime::unity) {
    throw RequiresQ1("Weyl symmetrization is only defined at q = 1");
  }
  if (m < 0 || n < 0) throw std::invalid_argument("negative Weyl index");
  const int len = m + n;
  if (len > 24) throw std::invalid_argument("Weyl index too large");
  const Scalar weight(1 / binomial(len, m));
  OperatorExpr sum;
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    if (std::popcount(mask) != m) continue;
    std::string letters;
    for (int i = 0; i < len; ++i) letters += (mask >> i) & 1u ? 'P' : 'X';
    sum.add(OperatorWord::from_letters(letters), Coefficient(weight));
  }
  return normal_order(sum, Ordering::standard, QRegime::unity);
}

std::map<std::pair<int, int>, Coefficient> to_weyl_basis(const NormalForm& nf, QRegime regime) {
  if (regime != QRegime::unity) throw RequiresQ1("the Weyl basis exists only at q = 1");
  if (nf.ordering != Ordering::standard) {
    throw std::invalid_argument("to_weyl_basis expects a standard normal form");
  }
  std::map<std::pair<int, int>, Coefficient> out;
  std::map<std::pair<int, int>, NormalForm> cache;
  NormalForm rest = nf;
  while (!rest.is_zero()) {
    // The highest total degree term is the leading X^a P^b of T_{b,a}.
    auto top = std::max_element(rest.terms.begin(), rest.terms.end(), [](const auto& l, const auto& r) {
      const int dl = l.first.first + l.first.second;
      const int dr = r.first.first + r.first.second;
      return dl != dr ? dl < dr : l.first < r.first;
    });
    const auto [a, b] = top->first;
    const Coefficient c = top->second;
    auto it = cache.find({b, a});
    if (it == cache.end()) it = cache.emplace(std::pair{b, a}, weyl_symmetrize(b, a, regime)).first;
    out[{b, a}] += c;
    rest -= it->second.scaled(c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::map<int, Coefficient> structure_constants_oracle(Ordering ordering, int a, int b, int c,
                                                      int d, QRegime regime) {
  const auto lhs = LabeledOperator::monomial(OperatorWord::ordered(ordering, a, b));
  const auto rhs = LabeledOperator::monomial(OperatorWord::ordered(ordering, c, d));
  const NormalForm nf = q_commutator(lhs, rhs, ordering, regime);
  std::map<int, Coefficient> out;
  for (const auto& [key, coeff] : nf.terms) {
    const int r = a + c - key.first;
    if (key.second != b + d - r || !(coeff == Coefficient(coeff.at(r), r))) {
      throw std::logic_error("commutator term off the structure-constant diagonal");
    }
    out.emplace(r, Coefficient(coeff.at(r)));
  }
  return out;
}

}  // namespace qmoyal
