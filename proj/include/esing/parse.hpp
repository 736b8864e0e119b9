#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "esing/efunc.hpp"
#include "esing/matrix.hpp"

namespace esing {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Recursive-descent parser for rational-function expressions:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' uint)?
///   base   := int | var | '(' expr ')'
/// A leading sign on an expression is accepted so printed output reparses.
class ExprParser {
 public:
  ExprParser(std::string_view text, char var = 'z', int line = 1, int column0 = 1)
      : s_(text), var_(var), line_(line), col0_(column0) {}

  RatFun parse() {
    RatFun r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + static_cast<int>(pos_)); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  RatFun expr() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    RatFun acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }
  RatFun term() {
    RatFun acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RatFun d = factor();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by the zero polynomial");
        }
        acc /= d;
      } else {
        return acc;
      }
    }
  }
  RatFun factor() {
    RatFun b = base();
    if (accept('^')) {
      const Int e = integer();
      if (e > 4096) fail("exponent too large");
      RatFun out(1);
      for (long i = 0; i < e.get_si(); ++i) out *= b;
      return out;
    }
    return b;
  }
  RatFun base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (c == var_) {
      ++pos_;
      return RatFun(Poly::z());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return RatFun(Rat(integer()));
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  char var_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

inline RatFun parse_ratfun(std::string_view text, char var = 'z', int line = 1, int column0 = 1) {
  return ExprParser(text, var, line, column0).parse();
}

inline Poly parse_poly(std::string_view text, char var = 'z', int line = 1, int column0 = 1) {
  RatFun f = parse_ratfun(text, var, line, column0);
  if (!f.is_polynomial()) throw ParseError("expected a polynomial", line, column0);
  return f.num();
}

inline Rat parse_rat(std::string_view text, int line = 1, int column0 = 1) {
  RatFun f = parse_ratfun(text, 'z', line, column0);
  if (!f.is_polynomial() || f.num().degree() > 0) throw ParseError("expected a rational constant", line, column0);
  return f.num().coeff(0);
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

/// Splits on a separator; fields keep their column offsets.
inline std::vector<std::pair<std::string, int>> split_fields(std::string_view s, char sep) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(std::string(s.substr(start, i - start)), static_cast<int>(start) + 1);
      start = i + 1;
    }
  }
  return out;
}

/// One matrix row: semicolon-separated expressions.
inline std::vector<RatFun> parse_row(std::string_view line, int line_no = 1) {
  std::vector<RatFun> row;
  for (const auto& [field, col] : split_fields(line, ';')) {
    if (trim(field).empty()) throw ParseError("empty matrix entry", line_no, col);
    row.push_back(parse_ratfun(field, 'z', line_no, col));
  }
  return row;
}

/// E-function specs:
///   exp(c)
///   poly(p)*exp(c)
///   rec: a[k+r]=q_{r-1}(k)*a[k+r-1]+...+q_0(k)*a[k]; init: a0, ..., a_{r-1}
inline EFunction parse_efunction(std::string_view text, int line_no = 1) {
  const std::string s = trim(text);
  auto paren_arg = [&](std::size_t open) -> std::pair<std::string, std::size_t> {
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) return {s.substr(open + 1, i - open - 1), i};
    }
    throw ParseError("unbalanced parentheses", line_no, static_cast<int>(open) + 1);
  };
  if (s.rfind("exp(", 0) == 0) {
    auto [arg, close] = paren_arg(3);
    if (close + 1 != s.size()) throw ParseError("trailing text after exp(...)", line_no, static_cast<int>(close) + 2);
    return exp_function(parse_rat(arg, line_no, 5));
  }
  if (s.rfind("poly(", 0) == 0) {
    auto [parg, pclose] = paren_arg(4);
    const std::string rest = s.substr(pclose + 1);
    if (rest.rfind("*exp(", 0) != 0) throw ParseError("expected '*exp(c)' after poly(...)", line_no, static_cast<int>(pclose) + 2);
    auto [carg, cclose] = paren_arg(pclose + 5);
    if (cclose + 1 != s.size()) throw ParseError("trailing text after exp(...)", line_no, static_cast<int>(cclose) + 2);
    return poly_exp(parse_poly(parg, 'z', line_no, 6), parse_rat(carg, line_no, static_cast<int>(pclose) + 7));
  }
  if (s.rfind("rec:", 0) == 0) {
    const std::size_t semi = s.find(';');
    if (semi == std::string::npos) throw ParseError("recurrence needs '; init:'", line_no, static_cast<int>(s.size()));
    const std::string rel = s.substr(4, semi - 4);
    std::string init = trim(std::string_view(s).substr(semi + 1));
    if (init.rfind("init:", 0) != 0) throw ParseError("expected 'init:'", line_no, static_cast<int>(semi) + 2);
    init = init.substr(5);
    const std::size_t eq = rel.find('=');
    if (eq == std::string::npos) throw ParseError("recurrence needs '='", line_no, 5);
    auto shift_of = [&](const std::string& ref, int col) -> int {
      // a[k] or a[k+i]
      const std::string t = trim(ref);
      if (t == "a[k]") return 0;
      if (t.rfind("a[k+", 0) == 0 && t.back() == ']') return static_cast<int>(parse_rat(t.substr(4, t.size() - 5), line_no, col).get_num().get_si());
      throw ParseError("expected a[k+i], got '" + t + "'", line_no, col);
    };
    const int r = shift_of(rel.substr(0, eq), 5);
    if (r < 1) throw ParseError("recurrence order must be positive", line_no, 5);
    std::vector<RatFun> q(static_cast<std::size_t>(r));
    const std::string rhs = rel.substr(eq + 1);
    const int rhs_col = static_cast<int>(4 + eq + 2);
    std::size_t pos = 0;
    while (pos < rhs.size()) {
      const std::size_t at = rhs.find("a[", pos);
      if (at == std::string::npos) {
        if (!trim(rhs.substr(pos)).empty()) throw ParseError("trailing text in recurrence", line_no, rhs_col + static_cast<int>(pos));
        break;
      }
      const std::size_t close = rhs.find(']', at);
      if (close == std::string::npos) throw ParseError("unterminated a[", line_no, rhs_col + static_cast<int>(at));
      const int i = shift_of(rhs.substr(at, close - at + 1), rhs_col + static_cast<int>(at));
      if (i < 0 || i >= r) throw ParseError("recurrence term out of range", line_no, rhs_col + static_cast<int>(at));
      std::string coef = trim(rhs.substr(pos, at - pos));
      if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
      RatFun c;
      if (coef.empty() || coef == "+")
        c = RatFun(1);
      else if (coef == "-")
        c = RatFun(-1);
      else
        c = parse_ratfun(coef, 'k', line_no, rhs_col + static_cast<int>(pos));
      q[static_cast<std::size_t>(i)] += c;
      pos = close + 1;
    }
    std::vector<Rat> init_vals;
    for (const auto& [field, col] : split_fields(init, ','))
      init_vals.push_back(parse_rat(field, line_no, col));
    if (static_cast<int>(init_vals.size()) != r)
      throw ParseError("recurrence of order " + std::to_string(r) + " needs " + std::to_string(r) + " initial values",
                       line_no, static_cast<int>(semi) + 2);
    return recurrence_function(s, std::move(q), std::move(init_vals));
  }
  throw ParseError("unknown E-function spec '" + s + "'", line_no, 1);
}

}  // namespace esing
