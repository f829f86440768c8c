// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/realalg.hpp"

#include <sstream>

#include "salp/algebraic_context.hpp"

namespace salp {

namespace {

QPoly linear_for(const Rational& r) { return QPoly({-r, Rational(1)}).primitive(); }

}  // namespace

RealAlgebraicNumber::RealAlgebraicNumber(const Rational& r) : p_(linear_for(r)), lo_(r), hi_(r) {}

RealAlgebraicNumber::RealAlgebraicNumber(const QPoly& p, const Rational& lo, const Rational& hi)
    : p_(p.primitive()), lo_(lo), hi_(hi) {
  if (p_.degree() < 1) structural("algebraic number needs a non-constant polynomial");
  if (lo_ > hi_) structural("algebraic number: empty interval");
  if (lo_ == hi_) {
    p_ = linear_for(lo_);
    return;
  }
  if (p_.degree() == 1) {
    Rational r = -p_.coeff(0) / p_.coeff(1);
    p_ = linear_for(r);
    lo_ = hi_ = r;
    return;
  }
  sign_lo_ = p_.sign_at(lo_);
  if (sign_lo_ == 0) {
    p_ = linear_for(lo_);
    hi_ = lo_;
  } else if (p_.sign_at(hi_) == 0) {
    p_ = linear_for(hi_);
    lo_ = hi_;
  }
}

const Rational& RealAlgebraicNumber::rational_value() const {
  if (!is_rational()) structural("rational_value of an irrational algebraic number");
  return lo_;
}

void RealAlgebraicNumber::bisect() {
  if (is_rational()) return;
  Rational mid = (lo_ + hi_) / 2;
  int s = p_.sign_at(mid);
  if (s == 0) {
    lo_ = hi_ = mid;
    p_ = linear_for(mid);
  } else if (s == sign_lo_) {
    lo_ = mid;
  } else {
    hi_ = mid;
  }
}

void RealAlgebraicNumber::refine_to(const Rational& width) {
  while (!is_rational() && hi_ - lo_ > width) bisect();
}

double RealAlgebraicNumber::approx() const {
  Rational mid = (lo_ + hi_) / 2;
  return mid.get_d();
}

std::string RealAlgebraicNumber::to_string() const {
  if (is_rational()) return salp::to_string(lo_);
  return "root(" + p_.to_string("x") + ", [" + salp::to_string(lo_) + ", " + salp::to_string(hi_) + "])";
}

namespace {

void isolate_q(const std::vector<QPoly>& chain, const QPoly& sf, const Rational& a, const Rational& b,
               int va, int vb, bool a_root, bool b_root, std::vector<RealAlgebraicNumber>& out) {
  int n = va - vb - (b_root ? 1 : 0);
  if (n <= 0) return;
  if (n == 1 && !a_root && !b_root) {
    out.emplace_back(sf, a, b);
    return;
  }
  Rational m = (a + b) / 2;
  int sm = sf.sign_at(m);
  int vm = sign_variations(chain, m);
  isolate_q(chain, sf, a, m, va, vm, a_root, sm == 0, out);
  if (sm == 0) out.emplace_back(m);
  isolate_q(chain, sf, m, b, vm, vb, sm == 0, b_root, out);
}

// Makes a rational root exact when the interval holds one.
RealAlgebraicNumber detect_rational(RealAlgebraicNumber r) {
  if (r.is_rational()) return r;
  const QPoly& p = r.polynomial();
  Integer lc = p.lc().get_num();
  if (lc < 0) lc = -lc;
  Rational width(1, lc * lc);
  width.canonicalize();
  while (!r.is_rational() && !(r.hi() - r.lo() < width)) r.bisect();
  if (r.is_rational()) return r;
  Rational s = simplest_between(r.lo(), r.hi());
  if (s.get_den() <= lc && p.sign_at(s) == 0) return RealAlgebraicNumber(s);
  return r;
}

}  // namespace

std::vector<RealAlgebraicNumber> isolate_roots(const QPoly& p) {
  if (p.is_zero()) structural("isolate_roots of the zero polynomial");
  std::vector<RealAlgebraicNumber> out;
  if (p.degree() < 1) return out;
  QPoly sf = p.squarefree_part().primitive();
  if (sf.degree() == 1) {
    out.emplace_back(-sf.coeff(0) / sf.coeff(1));
    return out;
  }
  auto chain = sturm_chain(sf);
  Rational b = root_bound(sf);
  std::vector<RealAlgebraicNumber> raw;
  isolate_q(chain, sf, -b, b, sign_variations(chain, -b), sign_variations(chain, b), false, false, raw);
  for (auto& r : raw) out.push_back(detect_rational(std::move(r)));
  return out;
}

std::vector<RealAlgebraicNumber> isolate_roots(const Polynomial& p) {
  return isolate_roots(QPoly::from_polynomial(p));
}

RealAlgebraicNumber refine(const RealAlgebraicNumber& a, const Rational& width) {
  if (sgn(width) <= 0) structural("refine: width must be positive");
  RealAlgebraicNumber r = a;
  r.refine_to(width);
  return r;
}

int compare(const RealAlgebraicNumber& a, const Rational& x) {
  if (a.is_rational()) return cmp(a.rational_value(), x) < 0 ? -1 : (a.rational_value() == x ? 0 : 1);
  if (x <= a.lo()) return 1;
  if (x >= a.hi()) return -1;
  int s = a.polynomial().sign_at(x);
  if (s == 0) return 0;
  int slo = a.polynomial().sign_at(a.lo());
  // x on the lo side of the root means the root is larger.
  return s == slo ? 1 : -1;
}

int compare(const RealAlgebraicNumber& a0, const RealAlgebraicNumber& b0) {
  if (a0.is_rational()) return -compare(b0, a0.rational_value());
  if (b0.is_rational()) return compare(a0, b0.rational_value());
  RealAlgebraicNumber a = a0, b = b0;
  bool checked = false;
  while (true) {
    if (a.is_rational()) return -compare(b, a.rational_value());
    if (b.is_rational()) return compare(a, b.rational_value());
    if (a.hi() <= b.lo()) return -1;
    if (b.hi() <= a.lo()) return 1;
    if (!checked) {
      checked = true;
      QPoly g = QPoly::gcd(a.polynomial(), b.polynomial());
      if (g.degree() >= 1) {
        Rational lo = std::max(a.lo(), b.lo());
        Rational hi = std::min(a.hi(), b.hi());
        auto chain = sturm_chain(g);
        if (count_roots(chain, lo, hi) > 0) return 0;
      }
    }
    a.bisect();
    b.bisect();
  }
}

int sign_at(const Polynomial& p, const SamplePoint& pt, unsigned budget) {
  if (p.level() > pt.size()) {
    structural("sign_at: point has " + std::to_string(pt.size()) + " coordinates but '" + p.to_string() +
               "' uses '" + p.order().name(p.level() - 1) + "'");
  }
  AlgebraicContext ctx(p.order(), budget);
  for (const auto& c : pt) ctx.push(c);
  return ctx.sign(ctx.specialize(p));
}

std::string to_string(const SamplePoint& pt) {
  std::string s = "(";
  for (std::size_t i = 0; i < pt.size(); ++i) {
    if (i) s += ", ";
    s += pt[i].to_string();
  }
  return s + ")";
}

}  // namespace salp
