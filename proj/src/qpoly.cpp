// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <sstream>

#include "salp/realalg.hpp"

namespace salp {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

QPoly QPoly::from_polynomial(const Polynomial& p) {
  int mv = p.main_var();
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    if (static_cast<int>(i) != mv && p.depends_on(i)) structural("polynomial is not univariate: " + p.to_string());
  }
  if (mv < 0) return QPoly({p.constant_value()});
  std::vector<Rational> c(p.degree(static_cast<std::size_t>(mv)) + 1);
  for (const auto& t : p.terms()) c[t.exp[static_cast<std::size_t>(mv)]] = t.coef;
  return QPoly(std::move(c));
}

Polynomial QPoly::to_polynomial(const VarOrder& order, std::size_t var) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Exponents e(order.size(), 0);
    e[var] = static_cast<unsigned>(i);
    terms.push_back(Term{std::move(e), c_[i]});
  }
  return Polynomial::from_terms(order, std::move(terms));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

QPoly QPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return QPoly(std::move(d));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(c));
}

QPoly QPoly::scaled(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly* q, QPoly* r) {
  if (b.is_zero()) structural("QPoly division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  std::vector<Rational> quo(a.degree() >= db ? a.degree() - db + 1 : 0);
  Rational inv = 1 / b.lc();
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(rem[k]) == 0) continue;
    Rational f = rem[k] * inv;
    quo[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
  }
  if (q) *q = QPoly(std::move(quo));
  if (r) *r = QPoly(std::move(rem));
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r;
    divmod(a, b, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / lc());
}

QPoly QPoly::squarefree_part() const {
  if (degree() <= 0) return *this;
  QPoly g = gcd(*this, derivative());
  QPoly q;
  divmod(*this, g, &q, nullptr);
  return q;
}

QPoly QPoly::primitive() const {
  if (is_zero()) return *this;
  Integer g = 0, l = 1;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  Rational s(l, g);
  s.canonicalize();
  if (sgn(lc()) < 0) s = -s;
  return scaled(s);
}

std::string QPoly::to_string(const std::string& var) const {
  VarOrder order({var});
  return to_polynomial(order, 0).to_string();
}

namespace {

// Divide by the positive rational content; keeps signs intact.
QPoly positive_primitive(const QPoly& p) {
  QPoly q = p.primitive();
  if (!q.is_zero() && sgn(q.lc()) != sgn(p.lc())) q = q.scaled(-1);
  return q;
}

}  // namespace

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{positive_primitive(p)};
  if (p.degree() <= 0) return chain;
  chain.push_back(positive_primitive(p.derivative()));
  while (chain.back().degree() > 0) {
    QPoly r;
    QPoly::divmod(chain[chain.size() - 2], chain.back(), nullptr, &r);
    if (r.is_zero()) break;
    chain.push_back(positive_primitive(r.scaled(-1)));
  }
  return chain;
}

int sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
  int last = 0, v = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int sign_variations_at_infinity(const std::vector<QPoly>& chain, bool positive) {
  int last = 0, v = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sgn(q.lc());
    if (!positive && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

Rational root_bound(const QPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs_of(p.coeff(i) / p.lc());
    if (r > m) m = r;
  }
  // Round up to an integer to keep bisection points simple.
  return Rational(ceil_of(m) + 1);
}

}  // namespace salp
