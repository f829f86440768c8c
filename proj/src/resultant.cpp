// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>

#include "salp/poly.hpp"

namespace salp {

Rational rational_content(const Polynomial& p) {
  if (p.is_zero()) return 0;
  Integer g = 0, l = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return abs_of(r);
}

Polynomial content_free(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  Polynomial lc = p.leading_coefficient(var);
  if (sgn(lc.leading_rational()) < 0) c = -c;
  return p * (Rational(1) / c);
}

Polynomial content_free(const Polynomial& p) {
  if (p.is_zero()) return p;
  Rational c = rational_content(p);
  if (sgn(p.leading_rational()) < 0) c = -c;
  return p * (Rational(1) / c);
}

Polynomial normalize(const Polynomial& p, int* sign_out) {
  if (p.is_zero()) {
    if (sign_out) *sign_out = 0;
    return p;
  }
  if (sign_out) *sign_out = sgn(p.leading_rational());
  return content_free(p);
}

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  require_same_order(a, b, "divide");
  if (b.is_zero()) structural("division by the zero polynomial");
  Polynomial q(a.order());
  if (b.is_constant()) return a * (Rational(1) / b.constant_value());
  Polynomial r = a;
  const Term& lb = b.terms()[0];
  const std::size_t n = a.num_vars();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const Term& lr = r.terms()[0];
    Exponents e(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (lr.exp[k] < lb.exp[k]) return std::nullopt;
      e[k] = lr.exp[k] - lb.exp[k];
    }
    Polynomial t = Polynomial::monomial(a.order(), e, lr.coef / lb.coef);
    qterms.push_back(Term{std::move(e), lr.coef / lb.coef});
    r -= t * b;
  }
  return Polynomial::from_terms(a.order(), std::move(qterms));
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  auto q = try_divide(a, b);
  if (!q) structural("divide_exact: '" + b.to_string() + "' does not divide '" + a.to_string() + "'");
  return *q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  require_same_order(a, b, "pseudo_remainder");
  if (b.is_zero()) structural("pseudo_remainder by zero");
  unsigned db = b.degree(var);
  Polynomial lcb = b.leading_coefficient(var);
  Polynomial r = a;
  int e = static_cast<int>(a.degree(var)) - static_cast<int>(db) + 1;
  if (e <= 0) return a;
  while (!r.is_zero() && r.degree(var) >= db) {
    unsigned dr = r.degree(var);
    Polynomial lr = r.leading_coefficient(var);
    Exponents x(a.num_vars(), 0);
    x[var] = dr - db;
    Polynomial s = lr * Polynomial::monomial(a.order(), x, 1);
    r = lcb * r - s * b;
    --e;
  }
  if (e > 0) r = lcb.pow(static_cast<unsigned>(e)) * r;
  return r;
}

Polynomial content(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  Polynomial g(p.order());
  for (auto& c : p.coefficients(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial::constant(p.order(), 1);
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  return divide_exact(p, content(p, var));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  require_same_order(a, b, "gcd");
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.order(), 1);
  std::size_t v = static_cast<std::size_t>(std::max(a.main_var(), b.main_var()));
  if (!a.depends_on(v)) return gcd(a, content(b, v));
  if (!b.depends_on(v)) return gcd(content(a, v), b);
  Polynomial ca = content(a, v), cb = content(b, v);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) return normalize(c);
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return normalize(c * primitive_part(pb, v));
}

std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& p,
                                                                      std::size_t var) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (p.is_zero() || !p.depends_on(var)) return out;
  Polynomial b = p.derivative(var);
  Polynomial c = gcd(p, b);
  Polynomial w = divide_exact(p, c);
  unsigned i = 1;
  while (c.depends_on(var)) {
    Polynomial y = gcd(w, c);
    Polynomial z = divide_exact(w, y);
    if (z.depends_on(var)) out.emplace_back(normalize(z), i);
    ++i;
    w = y;
    c = divide_exact(c, y);
  }
  if (w.depends_on(var)) out.emplace_back(normalize(w), i);
  return out;
}

Polynomial squarefree_part(const Polynomial& p, std::size_t var) {
  if (p.is_zero() || !p.depends_on(var)) return normalize(p);
  Polynomial g = gcd(p, p.derivative(var));
  return normalize(divide_exact(p, g));
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m, const VarOrder& order) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial::constant(order, 1);
  int s = 1;
  Polynomial prev = Polynomial::constant(order, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(order);
      std::swap(m[k], m[r]);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divide_exact(num, prev);
      }
      m[i][k] = Polynomial(order);
    }
    prev = m[k][k];
  }
  Polynomial d = m[n - 1][n - 1];
  return s < 0 ? -d : d;
}

namespace {

// Rows: (n - j) shifted copies of p, then (m - j) shifted copies of q, each
// truncated to the leading m + n - 2j columns.
Polynomial psc_matrix_det(const Polynomial& p, const Polynomial& q, std::size_t var, unsigned j) {
  unsigned m = p.degree(var), n = q.degree(var);
  auto pc = p.coefficients(var);
  auto qc = q.coefficients(var);
  unsigned size = m + n - 2 * j;
  const VarOrder& order = p.order();
  std::vector<std::vector<Polynomial>> mat(size, std::vector<Polynomial>(size, Polynomial(order)));
  unsigned row = 0;
  for (unsigned r = 0; r < n - j; ++r, ++row) {
    for (unsigned k = 0; k <= m; ++k) {
      unsigned col = r + (m - k);
      if (col < size) mat[row][col] = pc[k];
    }
  }
  for (unsigned r = 0; r < m - j; ++r, ++row) {
    for (unsigned k = 0; k <= n; ++k) {
      unsigned col = r + (n - k);
      if (col < size) mat[row][col] = qc[k];
    }
  }
  return determinant(std::move(mat), order);
}

}  // namespace

Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  require_same_order(p, q, "resultant");
  if (p.degree(var) == 0 || q.degree(var) == 0) {
    structural("resultant: both polynomials need positive degree in '" + p.order().name(var) + "'");
  }
  return psc_matrix_det(p, q, var, 0);
}

Polynomial principal_subresultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                                  unsigned j) {
  require_same_order(p, q, "principal_subresultant");
  unsigned m = p.degree(var), n = q.degree(var);
  if (m == 0 || n == 0) structural("principal_subresultant: degree 0 input");
  if (j > std::min(m, n)) structural("principal_subresultant: index out of range");
  if (j == m && j == n) return Polynomial::constant(p.order(), 1);
  return psc_matrix_det(p, q, var, j);
}

std::vector<Polynomial> subresultant_sequence(const Polynomial& p, const Polynomial& q,
                                              std::size_t var) {
  require_same_order(p, q, "subresultant_sequence");
  std::vector<Polynomial> out{p};
  if (q.is_zero()) return out;
  Polynomial a = p, b = q;
  if (a.degree(var) < b.degree(var)) std::swap(a, b);
  out = {a, b};
  if (b.degree(var) == 0) return out;
  const VarOrder& order = p.order();
  int d = static_cast<int>(a.degree(var)) - static_cast<int>(b.degree(var));
  Polynomial psi = Polynomial::constant(order, -1);
  Polynomial beta = Polynomial::constant(order, (d + 1) % 2 == 0 ? 1 : -1);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) {
      out.push_back(r);
      break;
    }
    r = divide_exact(r, beta);
    out.push_back(r);
    if (r.degree(var) == 0) break;
    Polynomial lcb = b.leading_coefficient(var);
    // psi <- (-lc(b))^d / psi^(d-1)
    if (d == 0) {
      // (-lc)^0 * psi
    } else {
      Polynomial num = (-lcb).pow(static_cast<unsigned>(d));
      psi = divide_exact(num, psi.pow(static_cast<unsigned>(d - 1)));
    }
    int dn = static_cast<int>(b.degree(var)) - static_cast<int>(r.degree(var));
    beta = -lcb * psi.pow(static_cast<unsigned>(dn));
    a = std::move(b);
    b = std::move(r);
    d = dn;
  }
  return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  if (p.is_zero()) structural("sturm_sequence of the zero polynomial");
  int mv = p.main_var();
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    if (static_cast<int>(i) != mv && p.depends_on(i)) structural("sturm_sequence: polynomial is not univariate");
  }
  std::vector<Polynomial> out{p};
  if (mv < 0) return out;
  std::size_t v = static_cast<std::size_t>(mv);
  out.push_back(p.derivative(v));
  while (true) {
    const Polynomial& a = out[out.size() - 2];
    const Polynomial& b = out.back();
    if (b.degree(v) == 0) break;
    // Over Q: remainder = prem / lc(b)^(deg a - deg b + 1), sign-corrected.
    Polynomial r = pseudo_remainder(a, b, v);
    Rational lcb = b.leading_coefficient(v).constant_value();
    unsigned e = a.degree(v) - b.degree(v) + 1;
    r *= Rational(1) / pow_of(lcb, e);
    if (r.is_zero()) break;
    out.push_back(-r);
  }
  return out;
}

}  // namespace salp
