// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <set>

#include "cad_internal.hpp"
#include "salp/error.hpp"

namespace salp {

namespace {

// p, then p minus its leading term, and so on, stopping once the leading
// coefficient is a nonzero constant (it can never vanish below that).
std::vector<Polynomial> reducta(const Polynomial& p, std::size_t var) {
  std::vector<Polynomial> out;
  Polynomial r = p;
  while (!r.is_zero() && r.degree(var) > 0) {
    out.push_back(r);
    Polynomial lc = r.leading_coefficient(var);
    if (lc.is_constant()) break;
    unsigned d = r.degree(var);
    Exponents e(r.num_vars(), 0);
    e[var] = d;
    r -= lc * Polynomial::monomial(r.order(), e, 1);
  }
  return out;
}

// Collins projection with Hong's pairwise part.
std::vector<Polynomial> raw_projection(const std::vector<Polynomial>& polys, std::size_t var) {
  std::vector<Polynomial> out;
  auto keep = [&](const Polynomial& q) {
    if (!q.is_constant()) out.push_back(q);
  };
  std::vector<std::vector<Polynomial>> red;
  for (const auto& p : polys) red.push_back(reducta(p, var));
  for (const auto& rs : red) {
    for (const auto& r : rs) {
      keep(r.leading_coefficient(var));
      unsigned d = r.degree(var);
      if (d >= 2) {
        Polynomial dr = r.derivative(var);
        for (unsigned k = 0; k < dr.degree(var); ++k) keep(principal_subresultant(r, dr, var, k));
      }
    }
  }
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      const Polynomial& q = polys[j];
      for (const auto& r : red[i]) {
        unsigned m = std::min(r.degree(var), q.degree(var));
        for (unsigned k = 0; k < m; ++k) keep(principal_subresultant(r, q, var, k));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Polynomial> projection(const std::vector<Polynomial>& polys, std::size_t var) {
  std::vector<Polynomial> in;
  for (const auto& p : polys) {
    if (p.degree(var) > 0) in.push_back(p);
  }
  std::set<Polynomial, PolyKeyLess> seen;
  for (const auto& q : raw_projection(in, var)) seen.insert(normalize(content_free(q)));
  return {seen.begin(), seen.end()};
}

namespace detail {

FactorSet::FactorSet(VarOrder order, std::size_t budget)
    : order_(std::move(order)), budget_(budget), levels_(order_.size()), index_(order_.size()) {}

void FactorSet::add_factor(const Polynomial& f, unsigned exponent, Factorization& out) {
  int s = 1;
  Polynomial n = normalize(f, &s);
  if (s < 0 && exponent % 2 == 1) out.sign = -out.sign;
  std::size_t lvl = static_cast<std::size_t>(n.main_var());
  auto it = index_[lvl].find(n);
  std::size_t idx;
  if (it == index_[lvl].end()) {
    if (++total_ > budget_) {
      throw Error(ErrorCode::Budget,
                  "projection set exceeds " + std::to_string(budget_) + " polynomials");
    }
    idx = levels_[lvl].size();
    index_[lvl].emplace(n, idx);
    levels_[lvl].push_back(n);
  } else {
    idx = it->second;
  }
  for (auto& fac : out.factors) {
    if (fac.level == lvl && fac.index == idx) {
      fac.exponent += exponent;
      return;
    }
  }
  out.factors.push_back({lvl, idx, exponent});
}

Factorization FactorSet::add(const Polynomial& p0) {
  Factorization out;
  Polynomial p = p0;
  if (p.is_zero()) {
    out.sign = 0;
    return out;
  }
  // Peel off contents level by level, from the main variable down.
  while (!p.is_constant()) {
    std::size_t var = static_cast<std::size_t>(p.main_var());
    Polynomial c = content(p, var);
    Polynomial pp = c.is_constant() ? p : divide_exact(p, c);
    auto sqf = squarefree_decomposition(pp, var);
    Polynomial prod = Polynomial::constant(p.order(), 1);
    for (const auto& [a, e] : sqf) {
      Polynomial n = normalize(a);
      prod *= n.pow(e);
      add_factor(n, e, out);
    }
    Rational k = pp.leading_rational() / prod.leading_rational();
    if (sgn(k) < 0) out.sign = -out.sign;
    p = c.is_constant() ? Polynomial::constant(p.order(), 1) : c;
  }
  if (sgn(p.constant_value()) < 0) out.sign = -out.sign;
  return out;
}

void project_all(FactorSet& fs, std::size_t nvars, std::size_t closed_levels) {
  for (std::size_t var = nvars; var-- > 0;) {
    if (var < closed_levels) {
      for (std::size_t i = 0; i < fs.levels()[var].size(); ++i) {
        Polynomial d = fs.levels()[var][i].derivative(var);
        if (!d.is_constant()) fs.add(d);
      }
    }
    if (var == 0) break;
    std::vector<Polynomial> level = fs.levels()[var];
    for (const auto& q : raw_projection(level, var)) fs.add(q);
  }
}

}  // namespace detail
}  // namespace salp
