// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <string>
#include <vector>

#include "salp/poly.hpp"

namespace salp {

// Dense univariate polynomial over Q; c[i] is the coefficient of x^i and the
// vector never ends in a zero.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly from_polynomial(const Polynomial& p);  // p must be univariate
  Polynomial to_polynomial(const VarOrder& order, std::size_t var) const;

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lc() const { return c_.back(); }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }
  QPoly derivative() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly scaled(const Rational& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  // Euclidean division; b nonzero.
  static void divmod(const QPoly& a, const QPoly& b, QPoly* q, QPoly* r);
  static QPoly gcd(QPoly a, QPoly b);  // monic, or zero
  QPoly squarefree_part() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  QPoly primitive() const;
  QPoly monic() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Sturm chain of a squarefree polynomial with positive-rescaled remainders.
std::vector<QPoly> sturm_chain(const QPoly& p);
// Sign variations of a chain at x.
int sign_variations(const std::vector<QPoly>& chain, const Rational& x);
int sign_variations_at_infinity(const std::vector<QPoly>& chain, bool positive);
// Number of distinct roots in the open interval (a, b); a, b not roots.
int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);
// Strict upper bound on the absolute value of every root (Cauchy).
Rational root_bound(const QPoly& p);

// Real algebraic number: either an exact rational (lo == hi) or the unique
// root of a squarefree integer-primitive polynomial in the open interval
// (lo, hi), with the polynomial nonzero at both ends.
class RealAlgebraicNumber {
 public:
  RealAlgebraicNumber() : RealAlgebraicNumber(Rational(0)) {}
  explicit RealAlgebraicNumber(const Rational& r);
  // Trusted constructor; p squarefree, exactly one root in (lo, hi).
  RealAlgebraicNumber(const QPoly& p, const Rational& lo, const Rational& hi);

  bool is_rational() const { return lo_ == hi_; }
  const Rational& rational_value() const;
  const QPoly& polynomial() const { return p_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  // One bisection step. May discover that the value is rational.
  void bisect();
  void refine_to(const Rational& width);
  double approx() const;

  std::string to_string() const;

 private:
  QPoly p_;
  Rational lo_, hi_;
  int sign_lo_ = 0;
};

using SamplePoint = std::vector<RealAlgebraicNumber>;

// Distinct real roots in increasing order; rational roots are returned exactly.
std::vector<RealAlgebraicNumber> isolate_roots(const Polynomial& p);
std::vector<RealAlgebraicNumber> isolate_roots(const QPoly& p);
// Returns a copy with interval width at most `width`.
RealAlgebraicNumber refine(const RealAlgebraicNumber& a, const Rational& width);
// -1, 0, 1.
int compare(const RealAlgebraicNumber& a, const RealAlgebraicNumber& b);
int compare(const RealAlgebraicNumber& a, const Rational& r);

// Exact sign of p at a point whose coordinates are assigned to the first
// pt.size() variables of p's order. Variables beyond the point must not occur.
// Nonzero signs are found by interval refinement; `budget` bisections per
// coordinate bound the work before PrecisionExhausted is raised.
int sign_at(const Polynomial& p, const SamplePoint& pt, unsigned budget = 64);

std::string to_string(const SamplePoint& pt);

}  // namespace salp
