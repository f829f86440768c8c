// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "salp/poly.hpp"

namespace salp {

// ---------------------------------------------------------------- VarOrder

VarOrder::VarOrder() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarOrder::VarOrder(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) structural("empty variable name");
    if (!seen.insert(n).second) structural("duplicate variable '" + n + "' in order");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarOrder::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VarOrder::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) structural("variable '" + std::string(name) + "' not in order");
  return *i;
}

VarOrder VarOrder::prefix(std::size_t k) const {
  if (k >= size()) return *this;
  return VarOrder(std::vector<std::string>(names_->begin(), names_->begin() + k));
}

VarOrder VarOrder::concat(const VarOrder& tail) const {
  std::vector<std::string> all = *names_;
  all.insert(all.end(), tail.names().begin(), tail.names().end());
  return VarOrder(std::move(all));
}

bool VarOrder::operator==(const VarOrder& other) const {
  return names_ == other.names_ || *names_ == *other.names_;
}

// ---------------------------------------------------------------- helpers

namespace {

// Later variables dominate.
int cmp_exp(const Exponents& a, const Exponents& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

bool exp_greater(const Term& a, const Term& b) { return cmp_exp(a.exp, b.exp) > 0; }

void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), exp_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  terms.swap(out);
}

}  // namespace

void require_same_order(const Polynomial& a, const Polynomial& b, const char* op) {
  if (a.order() != b.order()) {
    structural(std::string(op) + ": polynomials over different variable orders");
  }
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial() = default;
Polynomial::Polynomial(VarOrder order) : order_(std::move(order)) {}

Polynomial Polynomial::constant(VarOrder order, const Rational& c) {
  Polynomial p(std::move(order));
  if (sgn(c) != 0) p.terms_.push_back(Term{Exponents(p.num_vars(), 0), c});
  return p;
}

Polynomial Polynomial::variable(VarOrder order, std::size_t index) {
  if (index >= order.size()) structural("variable index out of range");
  Polynomial p(std::move(order));
  Exponents e(p.num_vars(), 0);
  e[index] = 1;
  p.terms_.push_back(Term{std::move(e), Rational(1)});
  return p;
}

Polynomial Polynomial::variable(VarOrder order, std::string_view name) {
  std::size_t i = order.require(name);
  return variable(std::move(order), i);
}

Polynomial Polynomial::monomial(VarOrder order, Exponents exp, const Rational& c) {
  if (exp.size() != order.size()) structural("monomial arity mismatch");
  Polynomial p(std::move(order));
  if (sgn(c) != 0) p.terms_.push_back(Term{std::move(exp), c});
  return p;
}

Polynomial Polynomial::from_terms(VarOrder order, std::vector<Term> terms) {
  Polynomial p(std::move(order));
  for (const auto& t : terms) {
    if (t.exp.size() != p.num_vars()) structural("term arity mismatch");
  }
  canonicalize_terms(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_[0].exp.begin(), terms_[0].exp.end(), [](unsigned e) { return e == 0; }));
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) structural("constant_value of a non-constant polynomial");
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  for (unsigned e : last.exp) {
    if (e) return 0;
  }
  return last.coef;
}

const Rational& Polynomial::leading_rational() const {
  static const Rational zero(0);
  return terms_.empty() ? zero : terms_[0].coef;
}

unsigned Polynomial::degree(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp[var]);
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (unsigned e : t.exp) s += e;
    d = std::max(d, s);
  }
  return d;
}

int Polynomial::main_var() const {
  // The first term carries the largest exponent of the highest variable used.
  if (terms_.empty()) return -1;
  const Exponents& e = terms_[0].exp;
  for (std::size_t i = e.size(); i-- > 0;) {
    if (e[i]) return static_cast<int>(i);
  }
  return -1;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.exp[var]) return true;
  }
  return false;
}

std::vector<bool> Polynomial::support() const {
  std::vector<bool> s(num_vars(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i]) s[i] = true;
    }
  }
  return s;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

void Polynomial::add_scaled(const Polynomial& o, const Rational& scale) {
  if (o.terms_.empty() || sgn(scale) == 0) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = cmp_exp(terms_[i].exp, o.terms_[j].exp);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(Term{o.terms_[j].exp, o.terms_[j].coef * scale});
      ++j;
    } else {
      Rational s = terms_[i].coef + o.terms_[j].coef * scale;
      if (sgn(s) != 0) out.push_back(Term{std::move(terms_[i].exp), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_.swap(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_order(*this, o, "add");
  add_scaled(o, Rational(1));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_order(*this, o, "subtract");
  add_scaled(o, Rational(-1));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_order(a, b, "multiply");
  Polynomial r(a.order_);
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  const std::size_t n = a.num_vars();
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Exponents e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = s.exp[k] + t.exp[k];
      out.push_back(Term{std::move(e), s.coef * t.coef});
    }
  }
  canonicalize_terms(out);
  r.terms_ = std::move(out);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(order_, 1);
  Polynomial b = *this;
  while (k) {
    if (k & 1u) out *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (order_ != o.order_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
  }
  return true;
}

bool Polynomial::operator<(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    int c = cmp_exp(terms_[i].exp, o.terms_[i].exp);
    if (c) return c < 0;
    int d = cmp(terms_[i].coef, o.terms_[i].coef);
    if (d) return d < 0;
  }
  return false;
}

Polynomial Polynomial::coefficient(std::size_t var, unsigned k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == k) {
      Term c = t;
      c.exp[var] = 0;
      out.push_back(std::move(c));
    }
  }
  return from_terms(order_, std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients(std::size_t var) const {
  unsigned d = degree(var);
  std::vector<std::vector<Term>> buckets(d + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.exp[var] = 0;
    buckets[t.exp[var]].push_back(std::move(c));
  }
  std::vector<Polynomial> out;
  out.reserve(d + 1);
  for (auto& b : buckets) out.push_back(from_terms(order_, std::move(b)));
  if (terms_.empty()) out[0] = Polynomial(order_);
  return out;
}

Polynomial Polynomial::from_coefficients(const VarOrder& order, std::size_t var,
                                         const std::vector<Polynomial>& coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      if (t.exp[var]) structural("from_coefficients: coefficient depends on the main variable");
      Term c = t;
      c.exp[var] = static_cast<unsigned>(k);
      out.push_back(std::move(c));
    }
  }
  return from_terms(order, std::move(out));
}

Polynomial Polynomial::leading_coefficient(std::size_t var) const {
  return coefficient(var, degree(var));
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coef *= t.exp[var];
    d.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(order_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
  if (!depends_on(var)) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<Rational> powers{Rational(1)};
  for (const auto& t : terms_) {
    while (powers.size() <= t.exp[var]) powers.push_back(powers.back() * value);
    Term c = t;
    c.coef *= powers[t.exp[var]];
    c.exp[var] = 0;
    out.push_back(std::move(c));
  }
  return from_terms(order_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_same_order(*this, value, "substitute");
  if (!depends_on(var)) return *this;
  auto cs = coefficients(var);
  // Horner in the substituted value.
  Polynomial acc(order_);
  for (std::size_t k = cs.size(); k-- > 0;) {
    acc = acc * value;
    acc += cs[k];
  }
  return acc;
}

Polynomial Polynomial::substitute(const std::vector<std::optional<Rational>>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term c = t;
    for (std::size_t i = 0; i < values.size() && i < c.exp.size(); ++i) {
      if (values[i] && c.exp[i]) {
        c.coef *= pow_of(*values[i], c.exp[i]);
        c.exp[i] = 0;
      }
    }
    if (sgn(c.coef) != 0) out.push_back(std::move(c));
  }
  return from_terms(order_, std::move(out));
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (!t.exp[i]) continue;
      if (i >= point.size()) {
        structural("evaluate: variable '" + order_.name(i) + "' is not assigned");
      }
      v *= pow_of(point[i], t.exp[i]);
    }
    sum += v;
  }
  return sum;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
  auto s = support();
  std::vector<std::optional<Rational>> pt(num_vars());
  for (std::size_t i = 0; i < num_vars(); ++i) {
    auto it = values.find(order_.name(i));
    if (it != values.end()) pt[i] = it->second;
    else if (s[i]) structural("evaluate: variable '" + order_.name(i) + "' is not assigned");
  }
  return substitute(pt).constant_value();
}

Polynomial Polynomial::rename(const VarOrder& target, const std::vector<std::size_t>& mapping) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target.size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (!t.exp[i]) continue;
      if (i >= mapping.size() || mapping[i] >= target.size()) {
        structural("rename: variable '" + order_.name(i) + "' has no image");
      }
      e[mapping[i]] += t.exp[i];
    }
    out.push_back(Term{std::move(e), t.coef});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::embed(const VarOrder& target) const {
  if (target == order_) return *this;
  std::vector<std::size_t> mapping(num_vars(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < num_vars(); ++i) {
    if (auto j = target.index_of(order_.name(i))) mapping[i] = *j;
  }
  return rename(target, mapping);
}

namespace {

// Graded order with the first variable most significant, used for printing.
bool print_before(const Term& a, const Term& b) {
  unsigned da = 0, db = 0;
  for (unsigned e : a.exp) da += e;
  for (unsigned e : b.exp) db += e;
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.exp.size(); ++i) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  }
  return false;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) { return print_before(*a, *b); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    bool neg = sgn(t->coef) < 0;
    Rational mag = neg ? Rational(-t->coef) : t->coef;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t->exp.size(); ++i) {
      if (!t->exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += order_.name(i);
      if (t->exp[i] > 1) mono += "^" + std::to_string(t->exp[i]);
    }
    if (mono.empty()) {
      os << salp::to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << salp::to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

std::size_t Polynomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (const auto& t : terms_) {
    for (unsigned e : t.exp) mix(e);
    mix(mpz_get_ui(t.coef.get_num_mpz_t()));
    mix(mpz_get_ui(t.coef.get_den_mpz_t()));
    mix(static_cast<std::size_t>(sgn(t.coef) + 1));
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

}  // namespace salp
