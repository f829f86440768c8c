// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/algebraic_context.hpp"

#include <algorithm>

namespace salp {

namespace {

Interval imul(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Interval{std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval ipow(const Interval& a, unsigned k) {
  if (k == 0) return Interval{1, 1};
  Rational l = pow_of(a.lo, k), h = pow_of(a.hi, k);
  if (k % 2 == 1 || sgn(a.lo) >= 0) return Interval{l, h};
  if (sgn(a.hi) <= 0) return Interval{h, l};
  return Interval{Rational(0), std::max(l, h)};
}

}  // namespace

AlgebraicContext::AlgebraicContext(VarOrder order, unsigned budget)
    : order_(std::move(order)), budget_(budget) {}

void AlgebraicContext::push_rational(const Rational& r) {
  if (size() >= order_.size()) structural("point has more coordinates than variables");
  auto l = std::make_shared<Level>();
  l->exact = true;
  l->value = r;
  l->lo = l->hi = r;
  coords_.push_back(std::move(l));
}

void AlgebraicContext::push_root(const KRoot& root) {
  if (root.exact) {
    push_rational(root.value);
    return;
  }
  if (size() >= order_.size()) structural("point has more coordinates than variables");
  std::size_t var = size();
  KPoly m = kmonic(root.h, var);
  auto l = std::make_shared<Level>();
  l->q = from_kpoly(m, var);
  l->lo = root.lo;
  l->hi = root.hi;
  l->sign_lo = ksign_at(m, root.lo, var);
  coords_.push_back(std::move(l));
}

void AlgebraicContext::push(const RealAlgebraicNumber& a) {
  if (a.is_rational()) {
    push_rational(a.rational_value());
    return;
  }
  if (size() >= order_.size()) structural("point has more coordinates than variables");
  std::size_t var = size();
  QPoly m = a.polynomial().monic();
  auto l = std::make_shared<Level>();
  l->q = m.to_polynomial(order_, var);
  l->lo = a.lo();
  l->hi = a.hi();
  l->sign_lo = m.sign_at(a.lo());
  coords_.push_back(std::move(l));
}

void AlgebraicContext::pop() { coords_.pop_back(); }

bool AlgebraicContext::is_rational(std::size_t coord) const { return coords_[coord]->exact; }

Rational AlgebraicContext::rational_value(std::size_t coord) const {
  if (!coords_[coord]->exact) structural("coordinate is not rational");
  return coords_[coord]->value;
}

Interval AlgebraicContext::interval(std::size_t coord) const {
  return Interval{coords_[coord]->lo, coords_[coord]->hi};
}

bool AlgebraicContext::has_algebraic() const {
  for (const auto& c : coords_) {
    if (!c->exact) return true;
  }
  return false;
}

Polynomial AlgebraicContext::specialize(const Polynomial& p) const {
  if (p.order() != order_) structural("specialize: polynomial over a different order");
  std::vector<std::optional<Rational>> vals(size());
  bool any = false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (coords_[i]->exact && p.depends_on(i)) {
      vals[i] = coords_[i]->value;
      any = true;
    }
  }
  return any ? p.substitute(vals) : p;
}

Polynomial AlgebraicContext::reduce(const Polynomial& e, std::size_t upto) const {
  Polynomial r = e;
  std::vector<std::optional<Rational>> vals(upto);
  bool any = false;
  for (std::size_t i = 0; i < upto; ++i) {
    if (coords_[i]->exact && r.depends_on(i)) {
      vals[i] = coords_[i]->value;
      any = true;
    }
  }
  if (any) r = r.substitute(vals);
  for (std::size_t c = upto; c-- > 0;) {
    const Level& L = *coords_[c];
    if (L.exact) continue;
    unsigned d = L.q.degree(c);
    if (r.degree(c) < d) continue;
    auto rc = r.coefficients(c);
    auto qc = L.q.coefficients(c);
    for (std::size_t k = rc.size(); k-- > d;) {
      if (rc[k].is_zero()) continue;
      for (unsigned j = 0; j < d; ++j) {
        if (!qc[j].is_zero()) rc[k - d + j] -= rc[k] * qc[j];
      }
      rc[k] = Polynomial(order_);
    }
    rc.resize(d);
    r = Polynomial::from_coefficients(order_, c, rc);
  }
  return r;
}

Interval AlgebraicContext::eval_interval(const Polynomial& e) const {
  Interval acc{0, 0};
  for (const auto& t : e.terms()) {
    Interval term{t.coef, t.coef};
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (!t.exp[i]) continue;
      if (i >= size()) structural("eval_interval: variable '" + order_.name(i) + "' is unassigned");
      const Level& L = *coords_[i];
      term = imul(term, ipow(Interval{L.lo, L.hi}, t.exp[i]));
    }
    acc.lo += term.lo;
    acc.hi += term.hi;
  }
  return acc;
}

void AlgebraicContext::refine_coord(std::size_t coord) {
  Level& L = *coords_[coord];
  if (L.exact) return;
  Rational mid = (L.lo + L.hi) / 2;
  Polynomial qm = L.q.substitute(coord, mid);
  int s = sign(qm, coord);
  if (s == 0) {
    L.exact = true;
    L.value = mid;
    L.lo = L.hi = mid;
  } else if (s == L.sign_lo) {
    L.lo = mid;
  } else {
    L.hi = mid;
  }
}

bool AlgebraicContext::is_zero(const Polynomial& e0, std::size_t upto) {
  Polynomial e = reduce(e0, upto);
  if (e.is_zero()) return true;
  int top = e.main_var();
  if (top < 0) return false;
  if (static_cast<std::size_t>(top) >= upto) structural("is_zero: element uses an unassigned variable");
  std::size_t c = static_cast<std::size_t>(top);
  KPoly a = kpoly_from(e, c);
  KPoly q = kpoly_from(coords_[c]->q, c);
  KPoly g = kgcd(a, q, c);
  if (coords_[c]->exact) return is_zero(e, upto);  // a refinement hit the root exactly
  if (g.size() <= 1) return false;
  const Level& L = *coords_[c];
  int s1 = ksign_at(g, L.lo, c);
  int s2 = ksign_at(g, L.hi, c);
  if (s1 != s2) return true;
  split_level(c, g);
  return false;
}

int AlgebraicContext::sign(const Polynomial& e, std::size_t upto) {
  if (is_zero(e, upto)) return 0;
  return sign_nonzero(e, upto);
}

int AlgebraicContext::sign_nonzero(const Polynomial& e0, std::size_t upto) {
  Polynomial e = reduce(e0, upto);
  std::vector<unsigned> used(upto, 0);
  while (true) {
    if (e.is_constant()) return sgn(e.constant_value());
    Interval iv = eval_interval(e);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
    auto sup = e.support();
    bool became_exact = false;
    for (std::size_t c = 0; c < upto; ++c) {
      if (!sup[c] || coords_[c]->exact) continue;
      if (used[c]++ >= budget_) {
        throw Error(ErrorCode::PrecisionExhausted,
                    "sign determination exceeded " + std::to_string(budget_) + " bisections on '" +
                        order_.name(c) + "'");
      }
      refine_coord(c);
      if (coords_[c]->exact) became_exact = true;
    }
    if (became_exact) e = reduce(e, upto);
  }
}

Polynomial AlgebraicContext::inverse(const Polynomial& e0, std::size_t upto) {
  Polynomial e = reduce(e0, upto);
  if (e.is_zero()) structural("inverse of zero");
  int top = e.main_var();
  if (top < 0) return Polynomial::constant(order_, Rational(1) / e.constant_value());
  std::size_t c = static_cast<std::size_t>(top);
  while (true) {
    if (coords_[c]->exact) return inverse(e, upto);
    KPoly a = kpoly_from(e, c);
    KPoly q = kpoly_from(coords_[c]->q, c);
    // Extended Euclid: s0 * a == r0 (mod q).
    KPoly r0 = q, r1 = a, s0, s1{Polynomial::constant(order_, 1)};
    ktrim(r1, c);
    while (!r1.empty()) {
      KPoly quo, rem;
      kdivmod(r0, r1, &quo, &rem, c);
      // s2 = s0 - quo * s1
      KPoly s2(std::max(s0.size(), quo.size() + s1.size()), Polynomial(order_));
      for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
      for (std::size_t i = 0; i < quo.size(); ++i) {
        for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= quo[i] * s1[j];
      }
      for (auto& x : s2) x = reduce(x, c);
      ktrim(s2, c);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (coords_[c]->exact) continue;
    if (r0.size() == 1) {
      Polynomial inv0 = inverse(r0[0], c);
      Polynomial s = from_kpoly(s0, c);
      return reduce(s * inv0, upto);
    }
    // The element is nonzero at the point, so the root is not a root of r0.
    split_level(c, r0);
  }
}

void AlgebraicContext::split_level(std::size_t coord, const KPoly& factor) {
  Level& L = *coords_[coord];
  KPoly q = kpoly_from(L.q, coord);
  KPoly quo;
  kdivmod(q, factor, &quo, nullptr, coord);
  quo = kmonic(quo, coord);
  L.q = from_kpoly(quo, coord);
  L.sign_lo = ksign_at(quo, L.lo, coord);
}

// ---------------------------------------------------------------- KPoly

KPoly AlgebraicContext::kpoly_from(const Polynomial& p, std::size_t var) const {
  if (p.is_zero()) return {};
  return p.coefficients(var);
}

KPoly AlgebraicContext::to_kpoly(const Polynomial& p, std::size_t var, std::size_t upto) {
  KPoly a = kpoly_from(specialize(p), var);
  for (auto& c : a) {
    c = reduce(c, upto);
    if (c.level() > upto) structural("to_kpoly: coefficient uses an unassigned variable");
  }
  ktrim(a, upto);
  return a;
}

Polynomial AlgebraicContext::from_kpoly(const KPoly& a, std::size_t var) const {
  if (a.empty()) return Polynomial(order_);
  return Polynomial::from_coefficients(order_, var, a);
}

void AlgebraicContext::ktrim(KPoly& a, std::size_t upto) {
  while (!a.empty() && is_zero(a.back(), upto)) a.pop_back();
}

KPoly AlgebraicContext::kderivative(const KPoly& a) const {
  KPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * Rational(static_cast<long>(i)));
  return d;
}

void AlgebraicContext::kdivmod(const KPoly& a, const KPoly& b0, KPoly* q, KPoly* r, std::size_t upto) {
  KPoly b = b0;
  ktrim(b, upto);
  if (b.empty()) structural("KPoly division by zero");
  Polynomial inv = inverse(b.back(), upto);
  KPoly rem = a;
  for (auto& x : rem) x = reduce(x, upto);
  std::size_t db = b.size() - 1;
  KPoly quo(rem.size() >= b.size() ? rem.size() - db : 0, Polynomial(order_));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    Polynomial f = reduce(rem[k] * inv, upto);
    quo[k - db] = f;
    for (std::size_t j = 0; j < db; ++j) rem[k - db + j] = reduce(rem[k - db + j] - f * b[j], upto);
    rem[k] = Polynomial(order_);
  }
  rem.resize(std::min(rem.size(), db));
  ktrim(rem, upto);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

KPoly AlgebraicContext::kgcd(KPoly a, KPoly b, std::size_t upto) {
  ktrim(a, upto);
  ktrim(b, upto);
  while (!b.empty()) {
    KPoly r;
    kdivmod(a, b, nullptr, &r, upto);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : kmonic(a, upto);
}

KPoly AlgebraicContext::kmonic(const KPoly& a0, std::size_t upto) {
  KPoly a = a0;
  ktrim(a, upto);
  if (a.empty()) return a;
  Polynomial inv = inverse(a.back(), upto);
  for (auto& c : a) c = reduce(c * inv, upto);
  a.back() = Polynomial::constant(order_, 1);
  return a;
}

Polynomial AlgebraicContext::keval(const KPoly& a, const Rational& x, std::size_t upto) const {
  Polynomial acc(order_);
  for (std::size_t i = a.size(); i-- > 0;) {
    acc *= x;
    acc += a[i];
  }
  return reduce(acc, upto);
}

int AlgebraicContext::ksign_at(const KPoly& a, const Rational& x, std::size_t upto) {
  return sign(keval(a, x, upto), upto);
}

bool AlgebraicContext::is_rational_kpoly(const KPoly& a) const {
  for (const auto& c : a) {
    if (!c.is_constant()) return false;
  }
  return true;
}

std::vector<KPoly> AlgebraicContext::ksturm(const KPoly& a) {
  std::vector<KPoly> chain{a, kderivative(a)};
  ktrim(chain.back(), size());
  while (chain.back().size() > 1) {
    KPoly r;
    kdivmod(chain[chain.size() - 2], chain.back(), nullptr, &r, size());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int AlgebraicContext::kvariations(const std::vector<KPoly>& chain, const Rational& x) {
  int last = 0, v = 0;
  for (const auto& q : chain) {
    int s = ksign_at(q, x, size());
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

void AlgebraicContext::isolate(const std::vector<KPoly>& chain, const KPoly& sf, Rational a, Rational b,
                               int va, int vb, std::vector<KRoot>& out) {
  // Explicit stack of (a, b, va, vb, a_root, b_root); emits in increasing order.
  struct Job {
    Rational a, b;
    int va, vb;
    bool a_root, b_root;
    bool emit_exact;  // marker job: push exact root a
  };
  std::vector<Job> stack{{a, b, va, vb, false, false, false}};
  while (!stack.empty()) {
    Job j = std::move(stack.back());
    stack.pop_back();
    if (j.emit_exact) {
      KRoot r;
      r.exact = true;
      r.value = j.a;
      out.push_back(std::move(r));
      continue;
    }
    int n = j.va - j.vb - (j.b_root ? 1 : 0);
    if (n <= 0) continue;
    if (n == 1 && !j.a_root && !j.b_root) {
      KRoot r;
      r.h = sf;
      r.lo = j.a;
      r.hi = j.b;
      r.sign_lo = ksign_at(sf, j.a, size());
      out.push_back(std::move(r));
      continue;
    }
    Rational m = (j.a + j.b) / 2;
    bool m_root = ksign_at(sf, m, size()) == 0;
    int vm = kvariations(chain, m);
    // Push right part first so the left part is processed first.
    stack.push_back(Job{m, j.b, vm, j.vb, m_root, j.b_root, false});
    if (m_root) stack.push_back(Job{m, m, 0, 0, false, false, true});
    stack.push_back(Job{j.a, m, j.va, vm, j.a_root, m_root, false});
  }
}

std::vector<KRoot> AlgebraicContext::real_roots(const KPoly& a0) {
  KPoly a = a0;
  for (auto& c : a) c = reduce(c, size());
  ktrim(a, size());
  std::vector<KRoot> out;
  if (a.size() <= 1) return out;
  if (is_rational_kpoly(a)) {
    std::vector<Rational> cs;
    for (const auto& c : a) cs.push_back(c.constant_value());
    for (auto& r : isolate_roots(QPoly(cs))) {
      KRoot k;
      if (r.is_rational()) {
        k.exact = true;
        k.value = r.rational_value();
      } else {
        KPoly h;
        for (const auto& c : r.polynomial().coeffs()) h.push_back(Polynomial::constant(order_, c));
        k.h = std::move(h);
        k.lo = r.lo();
        k.hi = r.hi();
        k.sign_lo = r.polynomial().sign_at(r.lo());
      }
      out.push_back(std::move(k));
    }
    return out;
  }
  KPoly g = kgcd(a, kderivative(a), size());
  KPoly sf = a;
  if (g.size() > 1) kdivmod(a, g, &sf, nullptr, size());
  sf = kmonic(sf, size());
  if (sf.size() == 2) {
    Polynomial root = reduce(-sf[0], size());
    if (root.is_constant()) {
      KRoot k;
      k.exact = true;
      k.value = root.constant_value();
      out.push_back(std::move(k));
      return out;
    }
  }
  auto chain = ksturm(sf);
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < sf.size(); ++i) {
    Interval iv = eval_interval(sf[i]);
    Rational m = std::max(abs_of(iv.lo), abs_of(iv.hi));
    if (m > bound) bound = m;
  }
  bound = Rational(ceil_of(bound) + 1);
  isolate(chain, sf, -bound, bound, kvariations(chain, -bound), kvariations(chain, bound), out);
  return out;
}

void AlgebraicContext::refine_root(KRoot& r) {
  if (r.exact) return;
  Rational mid = (r.lo + r.hi) / 2;
  int s = ksign_at(r.h, mid, size());
  if (s == 0) {
    r.exact = true;
    r.value = mid;
    r.lo = r.hi = mid;
  } else if (s == r.sign_lo) {
    r.lo = mid;
  } else {
    r.hi = mid;
  }
}

int AlgebraicContext::compare_root(const Rational& x, KRoot& r) {
  if (r.exact) return x < r.value ? -1 : (x == r.value ? 0 : 1);
  if (x <= r.lo) return -1;
  if (x >= r.hi) return 1;
  int s = ksign_at(r.h, x, size());
  if (s == 0) return 0;
  return s == r.sign_lo ? -1 : 1;
}

int AlgebraicContext::compare_roots(KRoot& a, KRoot& b) {
  bool checked = false;
  while (true) {
    if (a.exact && b.exact) return a.value < b.value ? -1 : (a.value == b.value ? 0 : 1);
    if (a.exact) return compare_root(a.value, b);
    if (b.exact) return -compare_root(b.value, a);
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    if (!checked) {
      checked = true;
      KPoly g = kgcd(a.h, b.h, size());
      if (g.size() > 1 && ksign_at(g, a.lo, size()) != ksign_at(g, a.hi, size())) {
        // a's root is also a root of b.h; equal iff it lies in b's interval.
        while (true) {
          if (a.exact) return compare_root(a.value, b);
          if (a.lo >= b.lo && a.hi <= b.hi) return 0;
          if (a.hi <= b.lo) return -1;
          if (a.lo >= b.hi) return 1;
          refine_root(a);
        }
      }
    }
    refine_root(a);
    refine_root(b);
  }
}

RealAlgebraicNumber AlgebraicContext::to_ran(KRoot& r) {
  if (r.exact) return RealAlgebraicNumber(r.value);
  std::size_t var = size();
  QPoly sf;
  if (is_rational_kpoly(r.h)) {
    std::vector<Rational> cs;
    for (const auto& c : r.h) cs.push_back(c.constant_value());
    return RealAlgebraicNumber(QPoly(cs), r.lo, r.hi);
  }
  Polynomial n = from_kpoly(kmonic(r.h, var), var);
  for (std::size_t c = var; c-- > 0;) {
    if (coords_[c]->exact) {
      n = n.substitute(c, coords_[c]->value);
      continue;
    }
    if (!n.depends_on(c)) continue;
    n = resultant(coords_[c]->q, n, c);
  }
  sf = QPoly::from_polynomial(n).squarefree_part().primitive();
  auto chain = sturm_chain(sf);
  while (true) {
    if (r.exact) return RealAlgebraicNumber(r.value);
    if (sf.sign_at(r.lo) != 0 && sf.sign_at(r.hi) != 0 && count_roots(chain, r.lo, r.hi) == 1) {
      return RealAlgebraicNumber(sf, r.lo, r.hi);
    }
    refine_root(r);
  }
}

}  // namespace salp
