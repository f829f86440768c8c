// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "salp/poly.hpp"
#include "salp/sas.hpp"

namespace salp::detail {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(const std::string& src);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(const char* sym) const { return peek().kind == Tok::Symbol && peek().text == sym; }
  bool is_ident(const char* word) const { return peek().kind == Tok::Ident && peek().text == word; }
  bool accept(const char* sym) {
    if (!is(sym)) return false;
    next();
    return true;
  }
  const Token& expect(const char* sym);
  std::string expect_ident();
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;
  std::size_t position() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Resolves identifiers to polynomials (usually variables of a fixed order).
// Returning std::nullopt makes the parser report an unknown identifier.
using IdentResolver = std::function<std::optional<Polynomial>(const Token&)>;

Polynomial parse_expr(TokenStream& ts, const VarOrder& order, const IdentResolver& resolve);

// cond ("&&" cond)* ("||" ...)*, with "true"/"false" literals. Stops at the
// first token that cannot continue the system.
SemiAlgebraicSystem parse_sas_expr(TokenStream& ts, const VarOrder& order, const IdentResolver& resolve);

}  // namespace salp::detail
