// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salp/error.hpp"
#include "salp/rational.hpp"

namespace salp {

// Ordered list of distinct variable names. Index 0 is the lowest (first
// projected away last); the last variable is the main variable of the CAD.
class VarOrder {
 public:
  VarOrder();
  explicit VarOrder(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  // Prefix of the first k variables.
  VarOrder prefix(std::size_t k) const;
  VarOrder concat(const VarOrder& tail) const;

  bool operator==(const VarOrder& other) const;
  bool operator!=(const VarOrder& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponents = std::vector<unsigned>;

struct Term {
  Exponents exp;
  Rational coef;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted in decreasing
// order where exponents of later variables dominate, and never hold a zero
// coefficient.
class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(VarOrder order);

  static Polynomial constant(VarOrder order, const Rational& c);
  static Polynomial variable(VarOrder order, std::size_t index);
  static Polynomial variable(VarOrder order, std::string_view name);
  static Polynomial monomial(VarOrder order, Exponents exp, const Rational& c);
  static Polynomial from_terms(VarOrder order, std::vector<Term> terms);

  const VarOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_vars() const { return order_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  Rational constant_term() const;
  const Rational& leading_rational() const;  // coefficient of the largest term

  unsigned degree(std::size_t var) const;
  unsigned total_degree() const;
  int main_var() const;  // -1 for constants
  bool depends_on(std::size_t var) const;
  std::vector<bool> support() const;
  // Largest variable index used plus one (0 for constants).
  std::size_t level() const { return static_cast<std::size_t>(main_var() + 1); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial pow(unsigned k) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  // Arbitrary but deterministic total order (used for canonical sets).
  bool operator<(const Polynomial& o) const;

  Polynomial coefficient(std::size_t var, unsigned k) const;
  std::vector<Polynomial> coefficients(std::size_t var) const;
  static Polynomial from_coefficients(const VarOrder& order, std::size_t var,
                                      const std::vector<Polynomial>& coeffs);
  Polynomial leading_coefficient(std::size_t var) const;
  Polynomial derivative(std::size_t var) const;

  Polynomial substitute(std::size_t var, const Rational& value) const;
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  // Partial evaluation; unset entries stay symbolic.
  Polynomial substitute(const std::vector<std::optional<Rational>>& values) const;
  // Full evaluation. Every variable the polynomial uses must be assigned.
  Rational evaluate(const std::vector<Rational>& point) const;
  Rational evaluate(const std::map<std::string, Rational>& values) const;

  // Re-express over another order; mapping[i] is the target index of var i.
  Polynomial rename(const VarOrder& target, const std::vector<std::size_t>& mapping) const;
  // Re-express over another order by variable names.
  Polynomial embed(const VarOrder& target) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void add_scaled(const Polynomial& o, const Rational& scale);
  VarOrder order_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

// Structural check used by binary operations.
void require_same_order(const Polynomial& a, const Polynomial& b, const char* op);

// Parses "2*x^2 - 3*x*y + 1/2" over a fixed order. Unknown identifiers are
// syntax errors.
Polynomial parse_polynomial(const std::string& text, const VarOrder& order);
// Parses and collects variables in order of first appearance.
Polynomial parse_polynomial(const std::string& text);

// ---- algebra over Q[x1..xn] ----

// Rational content (positive): gcd of numerators over lcm of denominators.
Rational rational_content(const Polynomial& p);
// p divided by its rational content, sign chosen so that the leading
// coefficient's leading rational is positive (with respect to var; the
// overall leading term when var is omitted).
Polynomial content_free(const Polynomial& p, std::size_t var);
Polynomial content_free(const Polynomial& p);
// Canonical representative of p up to a nonzero rational factor; returns
// the sign of the factor dropped (p = c * result with sign(c) returned).
Polynomial normalize(const Polynomial& p, int* sign_out = nullptr);

// Exact division; throws Structural if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);
// lc(b)^(deg a - deg b + 1) * a mod b with respect to var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

Polynomial gcd(const Polynomial& a, const Polynomial& b);
// gcd of the coefficients of p viewed in var.
Polynomial content(const Polynomial& p, std::size_t var);
Polynomial primitive_part(const Polynomial& p, std::size_t var);
// Yun decomposition in var of a primitive polynomial: p = c * prod a_i^i,
// returned as (a_i, i) pairs with non-constant a_i.
std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p,
                                                                      std::size_t var);
Polynomial squarefree_part(const Polynomial& p, std::size_t var);

// Sylvester resultant (rows of p first). Degree 0 in var is a structural error.
Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var);
// Principal subresultant coefficient psc_j; requires deg p, deg q >= 1 and
// j <= min(deg p, deg q).
Polynomial principal_subresultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                                  unsigned j);
// Subresultant PRS S_0 = p, S_1 = q, ... ending at the first zero entry
// (included) or a nonzero constant.
std::vector<Polynomial> subresultant_sequence(const Polynomial& p, const Polynomial& q,
                                              std::size_t var);
// Classical Sturm chain p, p', -rem, ... for a univariate polynomial,
// truncated before the first zero remainder.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

// Determinant by fraction-free elimination.
Polynomial determinant(std::vector<std::vector<Polynomial>> m, const VarOrder& order);

}  // namespace salp
