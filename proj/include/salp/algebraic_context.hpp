// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <memory>
#include <vector>

#include "salp/poly.hpp"
#include "salp/realalg.hpp"

namespace salp {

struct Interval {
  Rational lo, hi;
};

// Univariate polynomial over the field of a point prefix; entry k is the
// coefficient of y^k, itself a polynomial in the algebraic coordinates.
using KPoly = std::vector<Polynomial>;

// A root of a KPoly, either exact or isolated in an open interval where the
// (squarefree) polynomial h has exactly one root and is nonzero at both ends.
struct KRoot {
  bool exact = false;
  Rational value;
  KPoly h;
  Rational lo, hi;
  int sign_lo = 0;
};

// Exact arithmetic at a point prefix (a_1, ..., a_k): coordinate i binds
// variable i of the order. Algebraic coordinates are kept as a triangular
// tower of monic defining polynomials over the previous coordinates.
// Defining polynomials are split (replaced by a factor) whenever a gcd
// computation reveals that they factor, so zero tests are exact.
// Tower levels are shared between copies, and refinements made through one
// copy are visible to the others.
class AlgebraicContext {
 public:
  AlgebraicContext(VarOrder order, unsigned budget = 64);

  const VarOrder& order() const { return order_; }
  std::size_t size() const { return coords_.size(); }
  unsigned budget() const { return budget_; }

  void push_rational(const Rational& r);
  // q is a KPoly in variable size(); squarefree over the current field with
  // exactly one root in (lo, hi). It is made monic here.
  void push_root(const KRoot& root);
  void push(const RealAlgebraicNumber& a);
  void pop();

  bool is_rational(std::size_t coord) const;
  Rational rational_value(std::size_t coord) const;
  Interval interval(std::size_t coord) const;
  bool has_algebraic() const;

  // Substitutes rational coordinates.
  Polynomial specialize(const Polynomial& p) const;
  // Normal form modulo the tower (uses coordinates < upto).
  Polynomial reduce(const Polynomial& e, std::size_t upto) const;
  Polynomial reduce(const Polynomial& e) const { return reduce(e, size()); }

  bool is_zero(const Polynomial& e) { return is_zero(e, size()); }
  int sign(const Polynomial& e) { return sign(e, size()); }
  bool is_zero(const Polynomial& e, std::size_t upto);
  int sign(const Polynomial& e, std::size_t upto);
  int sign_nonzero(const Polynomial& e, std::size_t upto);
  Polynomial inverse(const Polynomial& e, std::size_t upto);
  Interval eval_interval(const Polynomial& e) const;
  void refine_coord(std::size_t coord);

  // ---- polynomials over the field, in a variable y >= upto ----
  KPoly to_kpoly(const Polynomial& p, std::size_t var, std::size_t upto);
  Polynomial from_kpoly(const KPoly& a, std::size_t var) const;
  void ktrim(KPoly& a, std::size_t upto);
  KPoly kderivative(const KPoly& a) const;
  void kdivmod(const KPoly& a, const KPoly& b, KPoly* q, KPoly* r, std::size_t upto);
  KPoly kgcd(KPoly a, KPoly b, std::size_t upto);
  KPoly kmonic(const KPoly& a, std::size_t upto);
  Polynomial keval(const KPoly& a, const Rational& x, std::size_t upto) const;
  int ksign_at(const KPoly& a, const Rational& x, std::size_t upto);
  bool is_rational_kpoly(const KPoly& a) const;

  // Distinct real roots of a (in increasing order) over the full prefix.
  std::vector<KRoot> real_roots(const KPoly& a);
  void refine_root(KRoot& r);
  int compare_roots(KRoot& a, KRoot& b);
  // -1/0/1 comparing a rational with a root.
  int compare_root(const Rational& x, KRoot& r);
  // Q-polynomial representation of a root (via norms when the prefix has
  // algebraic coordinates). Refines r as needed.
  RealAlgebraicNumber to_ran(KRoot& r);

 private:
  struct Level {
    bool exact = false;
    Rational value;     // when exact
    Polynomial q;       // monic in its variable
    Rational lo, hi;
    int sign_lo = 0;
  };

  KPoly kpoly_from(const Polynomial& p, std::size_t var) const;
  void split_level(std::size_t coord, const KPoly& factor);
  std::vector<KPoly> ksturm(const KPoly& a);
  int kvariations(const std::vector<KPoly>& chain, const Rational& x);
  void isolate(const std::vector<KPoly>& chain, const KPoly& sf, Rational a, Rational b, int va,
               int vb, std::vector<KRoot>& out);

  VarOrder order_;
  unsigned budget_;
  std::vector<std::shared_ptr<Level>> coords_;
};

}  // namespace salp
