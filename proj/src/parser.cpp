#include "qmoyal/parser.h"

#include <cctype>
#include <cstdlib>
#include <optional>

#include "qmoyal/errors.h"

namespace qmoyal {
namespace {

enum class Tok { number, ident, caret, lparen, rparen, plus, minus, star, slash, end };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  Rational value;  // for numbers
  bool integral = true;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
    return j;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = digits(i);
      Token t{Tok::number, i, src.substr(i, j - i), Rational(src.substr(i, j - i)), true};
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        const std::size_t k = digits(j + 1);
        const Rational den(src.substr(j + 1, k - j - 1));
        if (den == 0) throw ParseError(j + 1, {"nonzero denominator"}, "division by zero");
        t.value = Rational(mpz_class(src.substr(i, j - i)), den.get_num());
        t.value.canonicalize();
        t.integral = false;
        t.text = src.substr(i, k - i);
        j = k;
      }
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      default:
        if (std::isalpha(static_cast<unsigned char>(c))) {
          kind = Tok::ident;
        } else {
          throw ParseError(i, {"expression"}, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back(Token{kind, i, std::string(1, c), Rational(0), true});
    ++i;
  }
  out.push_back(Token{Tok::end, src.size(), "", Rational(0), true});
  return out;
}

// Operator mode: values are OperatorExpr, letters P, X.
struct OperatorMode {
  using Value = OperatorExpr;
  static constexpr const char* letters = "PX";
  static std::vector<std::string> atom_names() { return {"number", "q", "h", "P", "X", "("}; }

  static Value scalar(const Coefficient& c) { return Value(c); }
  static Value multiply(const Value& a, const Value& b) { return a * b; }
  static std::optional<Coefficient> as_scalar(const Value& v) {
    if (v.is_zero()) return Coefficient();
    if (v.terms().size() != 1 || !v.terms().begin()->first.empty()) return std::nullopt;
    return v.terms().begin()->second;
  }
  static Value letter(char l, const Rational& e, std::size_t offset, const QContext&) {
    if (!is_integer(e) || e < 0) {
      throw ParseError(offset, {"non-negative integer exponent"},
                       "operator exponents are non-negative integers");
    }
    return Value(OperatorWord::letter(l == 'P' ? Letter::P : Letter::X, static_cast<int>(to_long(e))));
  }
};

// Symbol mode: values are SymbolPoly, letters p, x with exponents in (1/D)Z.
struct SymbolMode {
  using Value = SymbolPoly;
  static constexpr const char* letters = "px";
  static std::vector<std::string> atom_names() { return {"number", "q", "h", "p", "x", "("}; }

  static Value scalar(const Coefficient& c) { return Value(c); }
  static Value multiply(const Value& a, const Value& b) { return a * b; }
  static std::optional<Coefficient> as_scalar(const Value& v) {
    if (v.is_zero()) return Coefficient();
    if (v.terms().size() != 1) return std::nullopt;
    const auto& [m, c] = *v.terms().begin();
    if (m.p != 0 || m.x != 0) return std::nullopt;
    return c;
  }
  static Value letter(char l, const Rational& e, std::size_t, const QContext& ctx) {
    require_representable(e, ctx);
    return l == 'p' ? SymbolPoly::monomial(e, 0) : SymbolPoly::monomial(0, e);
  }
};

template <typename Mode>
class Parser {
 public:
  using Value = typename Mode::Value;

  Parser(const std::string& src, const QContext& ctx) : toks_(lex(src)), ctx_(ctx) {}

  Value parse() {
    Value v = expr();
    if (peek().kind != Tok::end) fail({"+", "-", "end of input"});
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.offset, std::move(expected), "unexpected " + found);
  }

  void expect(Tok kind, const char* name) {
    if (peek().kind != kind) fail({name});
    ++pos_;
  }

  bool starts_atom() const {
    const Token& t = peek();
    return t.kind == Tok::number || t.kind == Tok::ident || t.kind == Tok::lparen;
  }

  Value expr() {
    bool negate = false;
    if (peek().kind == Tok::minus) {
      ++pos_;
      negate = true;
    }
    Value v = term();
    if (negate) v = -v;
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = take().kind == Tok::minus;
      if (minus) {
        v -= term();
      } else {
        v += term();
      }
    }
    return v;
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (peek().kind == Tok::star) {
        ++pos_;
        v = Mode::multiply(v, factor());
      } else if (peek().kind == Tok::slash) {
        ++pos_;
        const std::size_t at = peek().offset;
        const auto divisor = Mode::as_scalar(factor());
        if (!divisor || divisor->terms().size() != 1 || divisor->terms().begin()->first != 0) {
          throw ParseError(at, {"scalar divisor"}, "division is only by a nonzero scalar without h");
        }
        v = Mode::multiply(v, Mode::scalar(Coefficient(divisor->at(0).inverse())));
      } else if (starts_atom()) {
        v = Mode::multiply(v, factor());
      } else {
        return v;
      }
    }
  }

  // Returns the exponent and whether it was written at all.
  std::optional<Rational> exponent() {
    if (peek().kind != Tok::caret) return std::nullopt;
    ++pos_;
    if (peek().kind == Tok::lparen) {
      ++pos_;
      bool negative = false;
      if (peek().kind == Tok::minus) {
        ++pos_;
        negative = true;
      }
      if (peek().kind != Tok::number) fail({"number"});
      Rational e = take().value;
      expect(Tok::rparen, ")");
      return negative ? Rational(-e) : e;
    }
    bool negative = false;
    if (peek().kind == Tok::minus) {
      ++pos_;
      negative = true;
    }
    if (peek().kind != Tok::number) fail({"integer", "-", "("});
    if (!peek().integral) {
      throw ParseError(peek().offset, {"integer", "("}, "fractional exponents need parentheses");
    }
    Rational e = take().value;
    return negative ? Rational(-e) : e;
  }

  Value factor() {
    const Token t = peek();
    if (t.kind == Tok::number) {
      ++pos_;
      Scalar s(t.value);
      if (const auto e = exponent()) {
        if (!is_integer(*e)) throw ParseError(t.offset, {"integer exponent"}, "rational power of a number");
        if (*e < 0 && t.value == 0) throw ParseError(t.offset, {"nonzero base"}, "division by zero");
        Scalar base = *e < 0 ? s.inverse() : s;
        s = Scalar(1);
        for (long k = 0; k < std::abs(to_long(*e)); ++k) s *= base;
      }
      return Mode::scalar(Coefficient(s));
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      const Rational e = exponent().value_or(Rational(1));
      const char c = t.text[0];
      if (c == 'q') return Mode::scalar(Coefficient(q_power(e, ctx_)));
      if (c == 'h') {
        if (!is_integer(e) || e < 0) {
          throw ParseError(t.offset, {"non-negative integer exponent"}, "h takes non-negative integer powers");
        }
        return Mode::scalar(Coefficient::h(static_cast<int>(to_long(e))));
      }
      if (c == Mode::letters[0] || c == Mode::letters[1]) return Mode::letter(c, e, t.offset, ctx_);
      pos_--;
      fail(Mode::atom_names());
    }
    if (t.kind == Tok::lparen) {
      ++pos_;
      Value inner = expr();
      expect(Tok::rparen, ")");
      if (const auto e = exponent()) {
        if (!is_integer(*e) || *e < 0) {
          throw ParseError(t.offset, {"non-negative integer exponent"},
                           "parenthesized groups take non-negative integer powers");
        }
        Value out = Mode::scalar(Coefficient(1));
        for (long k = 0; k < to_long(*e); ++k) out = Mode::multiply(out, inner);
        return out;
      }
      return inner;
    }
    fail(Mode::atom_names());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  QContext ctx_;
};

}  // namespace

OperatorExpr parse_operator_expr(const std::string& src, const QContext& ctx) {
  return Parser<OperatorMode>(src, ctx).parse();
}

SymbolPoly parse_symbol_expr(const std::string& src, const QContext& ctx) {
  return Parser<SymbolMode>(src, ctx).parse();
}

}  // namespace qmoyal
