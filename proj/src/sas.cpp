// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/sas.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "salp/algebraic_context.hpp"

namespace salp {

unsigned rel_mask(Rel r) {
  switch (r) {
    case Rel::EQ0: return kSignZero;
    case Rel::GT0: return kSignPos;
    case Rel::LT0: return kSignNeg;
    case Rel::GE0: return kSignZero | kSignPos;
    case Rel::LE0: return kSignZero | kSignNeg;
    case Rel::NE0: return kSignNeg | kSignPos;
  }
  return 0;
}

Rel mask_rel(unsigned mask) {
  switch (mask) {
    case kSignZero: return Rel::EQ0;
    case kSignPos: return Rel::GT0;
    case kSignNeg: return Rel::LT0;
    case kSignZero | kSignPos: return Rel::GE0;
    case kSignZero | kSignNeg: return Rel::LE0;
    case kSignNeg | kSignPos: return Rel::NE0;
    default: structural("sign mask is not a relation");
  }
}

unsigned sign_bit(int s) { return s < 0 ? kSignNeg : (s == 0 ? kSignZero : kSignPos); }

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::EQ0: return "=";
    case Rel::GT0: return ">";
    case Rel::LT0: return "<";
    case Rel::GE0: return ">=";
    case Rel::LE0: return "<=";
    case Rel::NE0: return "!=";
  }
  return "?";
}

Rel negate_rel(Rel r) { return mask_rel(kSignAll & ~rel_mask(r)); }

namespace {

unsigned flip_mask(unsigned m) {
  unsigned out = m & kSignZero;
  if (m & kSignNeg) out |= kSignPos;
  if (m & kSignPos) out |= kSignNeg;
  return out;
}

}  // namespace

bool PolyKeyLess::operator()(const Polynomial& a, const Polynomial& b) const {
  if (a.level() != b.level()) return a.level() < b.level();
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------- BasicSystem

BasicSystem BasicSystem::make_false(VarOrder order) {
  BasicSystem b(std::move(order));
  b.false_ = true;
  return b;
}

void BasicSystem::add_mask(const Polynomial& p, unsigned mask) {
  if (p.order() != order_) structural("condition over a different variable order");
  if (false_) return;
  mask &= kSignAll;
  if (p.is_constant()) {
    if (!(mask & sign_bit(sgn(p.constant_value())))) {
      false_ = true;
      conds_.clear();
    }
    return;
  }
  int s = 0;
  Polynomial n = normalize(p, &s);
  if (s < 0) mask = flip_mask(mask);
  auto it = conds_.find(n);
  if (it != conds_.end()) mask &= it->second;
  if (mask == 0) {
    false_ = true;
    conds_.clear();
    return;
  }
  if (mask == kSignAll) {
    if (it != conds_.end()) conds_.erase(it);
    return;
  }
  conds_[n] = mask;
}

void BasicSystem::add_all(const BasicSystem& other) {
  if (other.false_) {
    false_ = true;
    conds_.clear();
    return;
  }
  for (const auto& [p, m] : other.conds_) add_mask(p, m);
}

std::vector<SignCondition> BasicSystem::conditions() const {
  std::vector<SignCondition> out;
  for (const auto& [p, m] : conds_) out.push_back(SignCondition{p, mask_rel(m)});
  return out;
}

bool BasicSystem::operator==(const BasicSystem& o) const {
  if (false_ != o.false_ || conds_.size() != o.conds_.size()) return false;
  auto i = conds_.begin();
  auto j = o.conds_.begin();
  for (; i != conds_.end(); ++i, ++j) {
    if (i->second != j->second || !(i->first == j->first)) return false;
  }
  return true;
}

bool BasicSystem::operator<(const BasicSystem& o) const {
  if (false_ != o.false_) return false_ < o.false_;
  if (conds_.size() != o.conds_.size()) return conds_.size() < o.conds_.size();
  PolyKeyLess less;
  auto i = conds_.begin();
  auto j = o.conds_.begin();
  for (; i != conds_.end(); ++i, ++j) {
    if (less(i->first, j->first)) return true;
    if (less(j->first, i->first)) return false;
    if (i->second != j->second) return i->second < j->second;
  }
  return false;
}

std::string BasicSystem::to_string() const {
  if (false_) return "false";
  if (conds_.empty()) return "true";
  std::string s;
  for (const auto& [p, m] : conds_) {
    if (!s.empty()) s += " && ";
    s += p.to_string() + " " + rel_symbol(mask_rel(m)) + " 0";
  }
  return s;
}

BasicSystem embed(const BasicSystem& b, const VarOrder& target) {
  if (b.is_false()) return BasicSystem::make_false(target);
  BasicSystem out(target);
  for (const auto& [p, m] : b.masks()) out.add_mask(p.embed(target), m);
  return out;
}

// ---------------------------------------------------------------- SAS

SemiAlgebraicSystem SemiAlgebraicSystem::universe(VarOrder order) {
  SemiAlgebraicSystem s(order);
  s.disj_.push_back(BasicSystem(std::move(order)));
  return s;
}

SemiAlgebraicSystem SemiAlgebraicSystem::from_basic(const BasicSystem& b) {
  SemiAlgebraicSystem s(b.order());
  s.add_disjunct(b);
  return s;
}

void SemiAlgebraicSystem::add_disjunct(const BasicSystem& b) {
  if (b.order() != order_) structural("disjunct over a different variable order");
  if (b.is_false()) return;
  if (is_true()) return;
  if (b.is_true()) {
    disj_.clear();
    disj_.push_back(b);
    return;
  }
  for (const auto& d : disj_) {
    if (d == b) return;
  }
  disj_.push_back(b);
}

std::vector<Polynomial> SemiAlgebraicSystem::polynomials() const {
  std::set<Polynomial, PolyKeyLess> all;
  for (const auto& d : disj_) {
    for (const auto& [p, m] : d.masks()) all.insert(p);
  }
  return std::vector<Polynomial>(all.begin(), all.end());
}

SemiAlgebraicSystem SemiAlgebraicSystem::embed(const VarOrder& target) const {
  SemiAlgebraicSystem out(target);
  for (const auto& d : disj_) out.add_disjunct(salp::embed(d, target));
  return out;
}

bool SemiAlgebraicSystem::operator==(const SemiAlgebraicSystem& o) const {
  if (!(order_ == o.order_) || disj_.size() != o.disj_.size()) return false;
  for (std::size_t i = 0; i < disj_.size(); ++i) {
    if (!(disj_[i] == o.disj_[i])) return false;
  }
  return true;
}

std::string SemiAlgebraicSystem::to_string() const {
  if (disj_.empty()) return "false";
  std::string s;
  for (const auto& d : disj_) {
    if (!s.empty()) s += " || ";
    s += d.to_string();
  }
  return s;
}

// ---------------------------------------------------------------- operations

namespace {

bool holds_in_context(const BasicSystem& s, AlgebraicContext& ctx,
                      std::map<Polynomial, int, PolyKeyLess>& cache) {
  for (const auto& [p, m] : s.masks()) {
    auto it = cache.find(p);
    int sg;
    if (it != cache.end()) {
      sg = it->second;
    } else {
      if (p.level() > ctx.size()) {
        structural("holds_at: point does not assign '" + p.order().name(p.level() - 1) + "'");
      }
      sg = ctx.sign(ctx.specialize(p));
      cache[p] = sg;
    }
    if (!(m & sign_bit(sg))) return false;
  }
  return true;
}

}  // namespace

bool holds_at(const BasicSystem& s, const SamplePoint& pt, unsigned budget) {
  if (s.is_false()) return false;
  AlgebraicContext ctx(s.order(), budget);
  for (const auto& c : pt) ctx.push(c);
  std::map<Polynomial, int, PolyKeyLess> cache;
  return holds_in_context(s, ctx, cache);
}

bool holds_at(const SemiAlgebraicSystem& s, const SamplePoint& pt, unsigned budget) {
  AlgebraicContext ctx(s.order(), budget);
  for (const auto& c : pt) ctx.push(c);
  std::map<Polynomial, int, PolyKeyLess> cache;
  for (const auto& d : s.disjuncts()) {
    if (holds_in_context(d, ctx, cache)) return true;
  }
  return false;
}

bool holds_at(const BasicSystem& s, const std::vector<Rational>& pt) {
  if (s.is_false()) return false;
  for (const auto& [p, m] : s.masks()) {
    if (!(m & sign_bit(sgn(p.evaluate(pt))))) return false;
  }
  return true;
}

bool holds_at(const SemiAlgebraicSystem& s, const std::vector<Rational>& pt) {
  for (const auto& d : s.disjuncts()) {
    if (holds_at(d, pt)) return true;
  }
  return false;
}

SemiAlgebraicSystem conj(const SemiAlgebraicSystem& a, const SemiAlgebraicSystem& b) {
  if (a.order() != b.order()) structural("conj: systems over different variable orders");
  SemiAlgebraicSystem out(a.order());
  for (const auto& da : a.disjuncts()) {
    for (const auto& db : b.disjuncts()) {
      BasicSystem m = da;
      m.add_all(db);
      out.add_disjunct(m);
    }
  }
  return out;
}

SemiAlgebraicSystem disj(const SemiAlgebraicSystem& a, const SemiAlgebraicSystem& b) {
  if (a.order() != b.order()) structural("disj: systems over different variable orders");
  SemiAlgebraicSystem out = a;
  for (const auto& d : b.disjuncts()) out.add_disjunct(d);
  return out;
}

SemiAlgebraicSystem negate(const SemiAlgebraicSystem& a) {
  SemiAlgebraicSystem acc = SemiAlgebraicSystem::universe(a.order());
  for (const auto& d : a.disjuncts()) {
    SemiAlgebraicSystem nd(a.order());
    for (const auto& [p, m] : d.masks()) {
      BasicSystem c(a.order());
      c.add_mask(p, kSignAll & ~m);
      nd.add_disjunct(c);
    }
    acc = conj(acc, nd);
    if (acc.is_syntactically_empty()) break;
  }
  return acc;
}

BasicSystem specialize(const BasicSystem& b, const std::vector<std::optional<Rational>>& values) {
  if (b.is_false()) return b;
  BasicSystem out(b.order());
  for (const auto& [p, m] : b.masks()) out.add_mask(p.substitute(values), m);
  return out;
}

SemiAlgebraicSystem specialize(const SemiAlgebraicSystem& a, const std::vector<Rational>& prefix) {
  if (prefix.size() > a.order().size()) structural("specialize: too many values");
  std::vector<std::optional<Rational>> vals(prefix.begin(), prefix.end());
  SemiAlgebraicSystem out(a.order());
  for (const auto& d : a.disjuncts()) out.add_disjunct(specialize(d, vals));
  return out;
}

SemiAlgebraicSystem specialize(const SemiAlgebraicSystem& a, const std::map<std::string, Rational>& values) {
  std::vector<Rational> prefix;
  for (std::size_t i = 0; i < a.order().size(); ++i) {
    auto it = values.find(a.order().name(i));
    if (it == values.end()) break;
    prefix.push_back(it->second);
  }
  if (prefix.size() != values.size()) {
    structural("specialize: assigned variables must form a prefix of the order");
  }
  return specialize(a, prefix);
}

// ---------------------------------------------------------------- parsing

namespace detail {

SemiAlgebraicSystem parse_sas_expr(TokenStream& ts, const VarOrder& order, const IdentResolver& resolve) {
  SemiAlgebraicSystem out(order);
  while (true) {
    BasicSystem b(order);
    while (true) {
      if (ts.is_ident("true")) {
        ts.next();
      } else if (ts.is_ident("false")) {
        ts.next();
        b = BasicSystem::make_false(order);
      } else {
        Polynomial lhs = parse_expr(ts, order, resolve);
        const Token& op = ts.peek();
        Rel rel;
        if (ts.is("=") || ts.is("==")) rel = Rel::EQ0;
        else if (ts.is(">")) rel = Rel::GT0;
        else if (ts.is("<")) rel = Rel::LT0;
        else if (ts.is(">=")) rel = Rel::GE0;
        else if (ts.is("<=")) rel = Rel::LE0;
        else if (ts.is("!=")) rel = Rel::NE0;
        else ts.fail_at(op, "expected a relation");
        ts.next();
        Polynomial rhs = parse_expr(ts, order, resolve);
        b.add(lhs - rhs, rel);
      }
      if (!ts.accept("&&")) break;
    }
    out.add_disjunct(b);
    if (!ts.accept("||")) break;
  }
  return out;
}

}  // namespace detail

SemiAlgebraicSystem parse_sas(const std::string& text, const VarOrder& order) {
  detail::TokenStream ts(detail::tokenize(text));
  detail::IdentResolver resolve = [&order](const detail::Token& t) -> std::optional<Polynomial> {
    auto i = order.index_of(t.text);
    if (!i) return std::nullopt;
    return Polynomial::variable(order, *i);
  };
  auto s = detail::parse_sas_expr(ts, order, resolve);
  if (!ts.at_end()) ts.fail("trailing input after system");
  return s;
}

}  // namespace salp
