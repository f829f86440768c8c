// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salp/poly.hpp"
#include "salp/realalg.hpp"

namespace salp {

enum class Rel { EQ0, GT0, LT0, GE0, LE0, NE0 };

// Sign sets as bit masks over {negative, zero, positive}.
constexpr unsigned kSignNeg = 1u;
constexpr unsigned kSignZero = 2u;
constexpr unsigned kSignPos = 4u;
constexpr unsigned kSignAll = 7u;

unsigned rel_mask(Rel r);
Rel mask_rel(unsigned mask);  // mask must be one of the six relations
unsigned sign_bit(int sign);
const char* rel_symbol(Rel r);
Rel negate_rel(Rel r);

struct SignCondition {
  Polynomial poly;
  Rel rel;
};

// Orders polynomials by level, then degree, then structure.
struct PolyKeyLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const;
};

// Conjunction of sign conditions. Each polynomial is stored normalized (up
// to a positive factor, sign flips the relation) and conditions on the same
// polynomial are intersected. Constant conditions fold to TRUE or FALSE.
class BasicSystem {
 public:
  BasicSystem() = default;
  explicit BasicSystem(VarOrder order) : order_(std::move(order)) {}
  static BasicSystem make_false(VarOrder order);

  const VarOrder& order() const { return order_; }
  void add(const Polynomial& p, Rel rel) { add_mask(p, rel_mask(rel)); }
  void add_mask(const Polynomial& p, unsigned mask);
  void add_all(const BasicSystem& other);

  bool is_false() const { return false_; }
  bool is_true() const { return !false_ && conds_.empty(); }
  std::size_t size() const { return conds_.size(); }
  std::vector<SignCondition> conditions() const;
  const std::map<Polynomial, unsigned, PolyKeyLess>& masks() const { return conds_; }

  bool operator==(const BasicSystem& o) const;
  bool operator<(const BasicSystem& o) const;
  std::string to_string() const;

 private:
  VarOrder order_;
  bool false_ = false;
  std::map<Polynomial, unsigned, PolyKeyLess> conds_;
};

// Disjunction of basic systems; no disjuncts means the empty set.
class SemiAlgebraicSystem {
 public:
  SemiAlgebraicSystem() = default;
  explicit SemiAlgebraicSystem(VarOrder order) : order_(std::move(order)) {}
  static SemiAlgebraicSystem empty(VarOrder order) { return SemiAlgebraicSystem(std::move(order)); }
  static SemiAlgebraicSystem universe(VarOrder order);
  static SemiAlgebraicSystem from_basic(const BasicSystem& b);

  const VarOrder& order() const { return order_; }
  void add_disjunct(const BasicSystem& b);
  const std::vector<BasicSystem>& disjuncts() const { return disj_; }
  bool is_syntactically_empty() const { return disj_.empty(); }
  bool is_true() const { return disj_.size() == 1 && disj_[0].is_true(); }
  // All distinct polynomials (normalized) in a deterministic order.
  std::vector<Polynomial> polynomials() const;

  SemiAlgebraicSystem embed(const VarOrder& target) const;
  bool operator==(const SemiAlgebraicSystem& o) const;
  std::string to_string() const;

 private:
  VarOrder order_;
  std::vector<BasicSystem> disj_;
};

using SAS = SemiAlgebraicSystem;

BasicSystem embed(const BasicSystem& b, const VarOrder& target);

bool holds_at(const BasicSystem& s, const SamplePoint& pt, unsigned budget = 64);
bool holds_at(const SemiAlgebraicSystem& s, const SamplePoint& pt, unsigned budget = 64);
// Fast path for rational points.
bool holds_at(const BasicSystem& s, const std::vector<Rational>& pt);
bool holds_at(const SemiAlgebraicSystem& s, const std::vector<Rational>& pt);

SemiAlgebraicSystem conj(const SemiAlgebraicSystem& a, const SemiAlgebraicSystem& b);
SemiAlgebraicSystem disj(const SemiAlgebraicSystem& a, const SemiAlgebraicSystem& b);
SemiAlgebraicSystem negate(const SemiAlgebraicSystem& a);
BasicSystem specialize(const BasicSystem& b, const std::vector<std::optional<Rational>>& values);
// Assigns a prefix of the order; the result keeps the order.
SemiAlgebraicSystem specialize(const SemiAlgebraicSystem& a, const std::vector<Rational>& prefix);
SemiAlgebraicSystem specialize(const SemiAlgebraicSystem& a, const std::map<std::string, Rational>& values);

SemiAlgebraicSystem parse_sas(const std::string& text, const VarOrder& order);

}  // namespace salp
