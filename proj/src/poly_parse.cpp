// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <cctype>

#include "lexer.hpp"

namespace salp {
namespace detail {

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  static const char* kTwoChar[] = {"..", "+=", "==", "!=", ">=", "<=", "&&", "||"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, cc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      while (j < src.size() && src[j] == '\'') ++j;
      out.push_back(Token{Tok::Ident, src.substr(i, j - i), l, cc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back(Token{Tok::Number, src.substr(i, j - i), l, cc});
      advance(j - i);
      continue;
    }
    bool two = false;
    if (i + 1 < src.size()) {
      for (const char* s : kTwoChar) {
        if (src[i] == s[0] && src[i + 1] == s[1]) {
          out.push_back(Token{Tok::Symbol, s, l, cc});
          advance(2);
          two = true;
          break;
        }
      }
    }
    if (two) continue;
    static const std::string kSingle = "+-*/^()[],;:=<>{}";
    if (kSingle.find(c) != std::string::npos) {
      out.push_back(Token{Tok::Symbol, std::string(1, c), l, cc});
      advance(1);
      continue;
    }
    throw SyntaxError(l, cc, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

const Token& TokenStream::expect(const char* sym) {
  if (!is(sym)) fail(std::string("expected '") + sym + "'");
  return next();
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Tok::Ident) fail("expected identifier");
  return next().text;
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& t, const std::string& message) const {
  std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw SyntaxError(t.line, t.col, message + " (found " + found + ")");
}

namespace {

class ExprParser {
 public:
  ExprParser(TokenStream& ts, const VarOrder& order, const IdentResolver& resolve)
      : ts_(ts), order_(order), resolve_(resolve) {}

  Polynomial sum() {
    Polynomial acc = product();
    while (ts_.is("+") || ts_.is("-")) {
      bool minus = ts_.next().text == "-";
      Polynomial rhs = product();
      if (minus) acc -= rhs;
      else acc += rhs;
    }
    return acc;
  }

 private:
  Polynomial product() {
    Polynomial acc = unary();
    while (ts_.is("*") || ts_.is("/")) {
      const Token& op = ts_.next();
      Token at = ts_.peek();
      Polynomial rhs = unary();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) {
          ts_.fail_at(at, "division only by a nonzero constant");
        }
        acc *= Rational(1) / rhs.constant_value();
      }
    }
    return acc;
  }

  Polynomial unary() {
    if (ts_.accept("-")) return -unary();
    if (ts_.accept("+")) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (ts_.accept("^")) {
      if (ts_.peek().kind != Tok::Number) ts_.fail("expected integer exponent");
      const Token& t = ts_.next();
      if (t.text.size() > 4) ts_.fail_at(t, "exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  Polynomial primary() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Number) {
      ts_.next();
      return Polynomial::constant(order_, Rational(Integer(t.text)));
    }
    if (t.kind == Tok::Ident) {
      Token copy = t;
      ts_.next();
      auto p = resolve_(copy);
      if (!p) ts_.fail_at(copy, "unknown identifier '" + copy.text + "'");
      return *p;
    }
    if (ts_.accept("(")) {
      Polynomial inner = sum();
      ts_.expect(")");
      return inner;
    }
    ts_.fail("expected expression");
  }

  TokenStream& ts_;
  const VarOrder& order_;
  const IdentResolver& resolve_;
};

}  // namespace

Polynomial parse_expr(TokenStream& ts, const VarOrder& order, const IdentResolver& resolve) {
  ExprParser p(ts, order, resolve);
  return p.sum();
}

}  // namespace detail

Polynomial parse_polynomial(const std::string& text, const VarOrder& order) {
  detail::TokenStream ts(detail::tokenize(text));
  detail::IdentResolver resolve = [&order](const detail::Token& t) -> std::optional<Polynomial> {
    auto i = order.index_of(t.text);
    if (!i) return std::nullopt;
    return Polynomial::variable(order, *i);
  };
  Polynomial p = detail::parse_expr(ts, order, resolve);
  if (!ts.at_end()) ts.fail("trailing input after polynomial");
  return p;
}

Polynomial parse_polynomial(const std::string& text) {
  std::vector<std::string> names;
  for (const auto& t : detail::tokenize(text)) {
    if (t.kind == detail::Tok::Ident &&
        std::find(names.begin(), names.end(), t.text) == names.end()) {
      names.push_back(t.text);
    }
  }
  return parse_polynomial(text, VarOrder(names));
}

}  // namespace salp
