// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <functional>
#include <set>

#include "lexer.hpp"
#include "salp/error.hpp"
#include "salp/loopir.hpp"

namespace salp {

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

[[noreturn]] void semantic_at(const Token& t, const std::string& msg) {
  throw Error(ErrorCode::Semantic, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
}

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : ts_(detail::tokenize(text)) {}

  LoopProgram parse() {
    LoopProgram prog;
    if (ts_.at_end()) ts_.fail("expected 'param'");
    while (!ts_.at_end()) prog.regions.push_back(parse_region());
    return prog;
  }

 private:
  enum class Role { Param, Loop, Let };

  // ---- names ----
  void declare(const Token& at, const std::string& name, Role role) {
    auto it = roles_.find(name);
    if (it != roles_.end()) {
      if (it->second != role || role == Role::Param) semantic_at(at, "'" + name + "' is declared twice");
    } else {
      roles_[name] = role;
      names_.push_back(name);
      order_ = VarOrder(names_);
    }
    if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) {
      semantic_at(at, "'" + name + "' is already bound on this path");
    }
  }

  Polynomial expr(const std::vector<std::string>& extra = {}) {
    detail::IdentResolver resolve = [&](const Token& t) -> std::optional<Polynomial> {
      bool visible = std::find(scope_.begin(), scope_.end(), t.text) != scope_.end() ||
                     std::find(extra.begin(), extra.end(), t.text) != extra.end();
      if (!visible) {
        if (roles_.count(t.text)) semantic_at(t, "variable '" + t.text + "' is not in scope here");
        semantic_at(t, "unknown variable '" + t.text + "'");
      }
      return Polynomial::variable(order_, *order_.index_of(t.text));
    };
    return detail::parse_expr(ts_, order_, resolve);
  }

  unsigned number() {
    if (ts_.peek().kind != Tok::Number) ts_.fail("expected a root index");
    const Token& t = ts_.next();
    if (t.text.size() > 6 || std::stoul(t.text) == 0) semantic_at(t, "root index must be a small positive integer");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  // Bound for variable `self`; `self` is visible only inside root(...).
  Bound bound(const std::string& self) {
    if (ts_.is("-") && ts_.peek(1).kind == Tok::Ident && ts_.peek(1).text == "inf") {
      ts_.next();
      ts_.next();
      return Bound::neg_inf();
    }
    if (ts_.is("+") && ts_.peek(1).kind == Tok::Ident && ts_.peek(1).text == "inf") {
      ts_.next();
      ts_.next();
      return Bound::pos_inf();
    }
    if (ts_.is_ident("inf")) {
      ts_.next();
      return Bound::pos_inf();
    }
    if (ts_.is_ident("root") && ts_.peek(1).kind == Tok::Symbol && ts_.peek(1).text == "(") {
      ts_.next();
      ts_.next();
      Token at = ts_.peek();
      Polynomial p = expr({self});
      std::size_t idx = *order_.index_of(self);
      if (p.degree(idx) == 0) semantic_at(at, "root(...) polynomial must mention '" + self + "'");
      ts_.expect(",");
      unsigned k = number();
      ts_.expect(")");
      return Bound::root(p, k);
    }
    return Bound::of(expr());
  }

  AccessFunction access() {
    Token at = ts_.peek();
    AccessFunction a;
    a.array = ts_.expect_ident();
    ts_.expect("[");
    a.indices.push_back(expr());
    ts_.expect("]");
    while (ts_.accept("[")) {
      a.indices.push_back(expr());
      ts_.expect("]");
    }
    auto it = arity_.find(a.array);
    if (it == arity_.end()) {
      arity_[a.array] = a.indices.size();
    } else if (it->second != a.indices.size()) {
      semantic_at(at, "array '" + a.array + "' used with " + std::to_string(a.indices.size()) +
                          " indices, earlier with " + std::to_string(it->second));
    }
    return a;
  }

  Statement statement() {
    ts_.expect(":");
    Statement s;
    s.write = access();
    if (ts_.accept("=")) {
      s.reduction = Reduction::Assign;
    } else if (ts_.accept("+=")) {
      s.reduction = Reduction::Sum;
    } else if (ts_.peek().kind == Tok::Ident && ts_.peek(1).kind == Tok::Symbol && ts_.peek(1).text == "=") {
      std::string name = ts_.next().text;
      ts_.next();
      if (name == "max") {
        s.reduction = Reduction::Max;
      } else if (name == "min") {
        s.reduction = Reduction::Min;
      } else {
        s.reduction = Reduction::Other;
        s.reduction_name = name;
      }
    } else {
      ts_.fail("expected '=', '+=', 'max=', 'min=' or 'name='");
    }
    s.combinator = ts_.expect_ident();
    ts_.expect("(");
    if (!ts_.is(")")) {
      s.reads.push_back(access());
      while (ts_.accept(",")) s.reads.push_back(access());
    }
    ts_.expect(")");
    ts_.expect(";");
    return s;
  }

  Body body() {
    Body b;
    std::size_t mark = scope_.size();
    while (ts_.is_ident("let")) {
      ts_.next();
      Token at = ts_.peek();
      Let l;
      l.var = ts_.expect_ident();
      declare(at, l.var, Role::Let);
      ts_.expect("=");
      l.value = bound(l.var);
      if (l.value.is_infinite()) semantic_at(at, "let value cannot be infinite");
      ts_.expect(";");
      scope_.push_back(l.var);
      b.lets.push_back(std::move(l));
    }
    if (!ts_.is_ident("stmt")) ts_.fail("expected 'loop', 'let' or 'stmt'");
    ts_.next();
    b.stmt = statement();
    scope_.resize(mark);
    return b;
  }

  bool at_loop() const { return ts_.is_ident("loop") || ts_.is_ident("parallel"); }

  LoopNode loop_header() {
    LoopNode n;
    if (ts_.is_ident("parallel")) {
      ts_.next();
      n.loop.parallel = true;
    }
    if (!ts_.is_ident("loop")) ts_.fail("expected 'loop'");
    ts_.next();
    Token at = ts_.peek();
    n.loop.var = ts_.expect_ident();
    declare(at, n.loop.var, Role::Loop);
    ts_.expect(":");
    n.loop.lower = bound(n.loop.var);
    ts_.expect("..");
    n.loop.upper = bound(n.loop.var);
    if (ts_.is_ident("open")) {
      ts_.next();
      if (ts_.is_ident("left")) {
        n.loop.lower_closed = false;
      } else if (ts_.is_ident("right")) {
        n.loop.upper_closed = false;
      } else if (ts_.is_ident("both")) {
        n.loop.lower_closed = n.loop.upper_closed = false;
      } else {
        ts_.fail("expected 'left', 'right' or 'both'");
      }
      ts_.next();
    }
    if (n.loop.lower.kind == Bound::PosInf || n.loop.upper.kind == Bound::NegInf) {
      semantic_at(at, "loop '" + n.loop.var + "' has an empty infinite range");
    }
    return n;
  }

  // Loops (siblings) or a body, up to the end of the enclosing block.
  void items(std::vector<LoopNode>& loops, std::optional<Body>& out_body) {
    if (!at_loop()) {
      out_body = body();
      return;
    }
    while (at_loop()) {
      Token at = ts_.peek();
      LoopNode n = loop_header();
      scope_.push_back(n.loop.var);
      bool block = !ts_.accept(";");
      if (block) ts_.expect("{");
      if (!at_loop() && !ts_.is_ident("let") && !ts_.is_ident("stmt")) semantic_at(at, "loop '" + n.loop.var + "' has no body");
      items(n.children, n.body);
      if (block) ts_.expect("}");
      scope_.pop_back();
      loops.push_back(std::move(n));
      if (!block) return;
    }
    if (ts_.is_ident("let") || ts_.is_ident("stmt")) ts_.fail("statement after a loop block");
  }

  Region parse_region() {
    roles_.clear();
    names_.clear();
    scope_.clear();
    order_ = VarOrder();
    if (!ts_.is_ident("param")) ts_.fail("expected 'param'");
    ts_.next();
    std::vector<std::string> params;
    while (ts_.peek().kind == Tok::Ident) {
      Token at = ts_.peek();
      std::string name = ts_.next().text;
      declare(at, name, Role::Param);
      scope_.push_back(name);
      params.push_back(name);
      if (!ts_.accept(",")) break;
    }
    ts_.expect(":");
    VarOrder porder(params);
    detail::IdentResolver presolve = [&](const Token& t) -> std::optional<Polynomial> {
      auto i = porder.index_of(t.text);
      if (!i) semantic_at(t, "unknown parameter '" + t.text + "'");
      return Polynomial::variable(porder, *i);
    };
    SemiAlgebraicSystem constraint = detail::parse_sas_expr(ts_, porder, presolve);
    ts_.expect(";");
    if (!at_loop()) ts_.fail("expected 'loop'");
    Region r;
    std::optional<Body> top_body;
    items(r.loops, top_body);
    if (!ts_.at_end() && !ts_.is_ident("param")) ts_.fail("expected 'param' or end of input");

    // Final order: parameters, loop variables, let variables.
    std::vector<std::string> ordered = params;
    for (Role role : {Role::Loop, Role::Let}) {
      for (const auto& n : names_) {
        if (roles_[n] == role) ordered.push_back(n);
      }
    }
    r.order = VarOrder(ordered);
    r.num_params = params.size();
    r.constraint = constraint.embed(r.order);
    std::function<void(LoopNode&)> fix = [&](LoopNode& n) {
      auto fb = [&](Bound& b) {
        if (!b.is_infinite()) b.poly = b.poly.embed(r.order);
      };
      fb(n.loop.lower);
      fb(n.loop.upper);
      for (auto& c : n.children) fix(c);
      if (n.body) {
        for (auto& l : n.body->lets) fb(l.value);
        auto fa = [&](AccessFunction& a) {
          for (auto& g : a.indices) g = g.embed(r.order);
        };
        fa(n.body->stmt.write);
        for (auto& a : n.body->stmt.reads) fa(a);
      }
    };
    for (auto& n : r.loops) fix(n);
    return r;
  }

  TokenStream ts_;
  std::map<std::string, std::size_t> arity_;
  std::map<std::string, Role> roles_;
  std::vector<std::string> names_;
  std::vector<std::string> scope_;
  VarOrder order_;
};

}  // namespace

LoopProgram parse_program(const std::string& text) { return ProgramParser(text).parse(); }

}  // namespace salp
