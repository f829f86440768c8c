// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/schedule.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "salp/error.hpp"

namespace salp {

// ---- templates ----

std::vector<Polynomial> ScheduleTemplate::instantiate(const std::vector<Rational>& v) const {
  if (v.size() != v_order.size()) throw Error(ErrorCode::InvalidArgument, "schedule: wrong number of v values");
  std::vector<std::string> rest(order.names().begin() + static_cast<std::ptrdiff_t>(v_order.size()),
                                order.names().end());
  VarOrder nx(rest);
  std::vector<std::optional<Rational>> assign(order.size());
  for (std::size_t i = 0; i < v.size(); ++i) assign[i] = v[i];
  std::vector<Polynomial> out;
  for (const auto& c : components) out.push_back(c.substitute(assign).embed(nx));
  return out;
}

ScheduleTemplate ScheduleTemplate::fixed(const PerfectNest& nest, const std::vector<Polynomial>& m) {
  if (m.size() != nest.depth()) {
    throw Error(ErrorCode::InvalidArgument, "schedule has " + std::to_string(m.size()) + " components, the nest has " +
                                                std::to_string(nest.depth()) + " loops");
  }
  ScheduleTemplate t;
  t.order = nest.domain_order();
  t.num_params = nest.num_params;
  for (const auto& c : m) t.components.push_back(c.embed(t.order));
  return t;
}

namespace {

// Exponent vectors over `nvars` variables of total degree exactly d,
// largest first in the first variable.
void monomials_of_degree(std::size_t nvars, unsigned d, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return;
  }
  rec(0, d);
}

}  // namespace

ScheduleTemplate default_template(const PerfectNest& nest, unsigned degree, bool include_params, bool constant) {
  if (degree < 1) throw Error(ErrorCode::InvalidArgument, "template degree must be at least 1");
  std::size_t np = nest.num_params, s = nest.depth();
  std::size_t first = include_params ? 0 : np;  // monomial variables start here (domain order)
  std::vector<std::vector<unsigned>> monos;
  for (unsigned d = constant ? 0 : 1; d <= degree; ++d) monomials_of_degree(np + s - first, d, monos);

  std::vector<std::string> vnames;
  for (std::size_t j = 1; j <= s; ++j) {
    for (std::size_t t = 0; t < monos.size(); ++t) {
      vnames.push_back("v" + std::to_string(j) + "_" + std::to_string(constant ? t : t + 1));
    }
  }
  for (const auto& n : nest.domain_order().names()) {
    if (std::find(vnames.begin(), vnames.end(), n) != vnames.end()) {
      throw Error(ErrorCode::Semantic, "loop variable " + n + " clashes with a schedule parameter name");
    }
  }
  ScheduleTemplate tpl;
  tpl.v_order = VarOrder(vnames);
  std::vector<std::string> all = vnames;
  for (const auto& n : nest.domain_order().names()) all.push_back(n);
  tpl.order = VarOrder(all);
  tpl.num_params = np;
  std::size_t nv = vnames.size();
  for (std::size_t j = 0; j < s; ++j) {
    Polynomial c(tpl.order);
    for (std::size_t t = 0; t < monos.size(); ++t) {
      Exponents e(tpl.order.size(), 0);
      e[j * monos.size() + t] = 1;
      for (std::size_t k = 0; k < monos[t].size(); ++k) e[nv + first + k] = monos[t][k];
      c += Polynomial::monomial(tpl.order, e, 1);
    }
    tpl.components.push_back(c);
  }
  return tpl;
}

// ---- validity formula ----

ValidityFormula validity_formula(const std::vector<DependenceEdge>& edges, const ScheduleTemplate& m,
                                 std::size_t k) {
  std::size_t s = m.components.size();
  if (k < 1 || k > s) throw Error(ErrorCode::InvalidArgument, "validity level must be in 1..s");
  std::size_t nv = m.v_order.size(), np = m.num_params;
  std::vector<std::string> names = m.v_order.names();
  for (std::size_t i = 0; i < np; ++i) names.push_back(m.order.name(nv + i));
  for (std::size_t j = 0; j < s; ++j) names.push_back(m.order.name(nv + np + j) + "'");
  for (std::size_t j = 0; j < s; ++j) names.push_back(m.order.name(nv + np + j) + "''");
  ValidityFormula f;
  f.order = VarOrder(names);
  f.num_v = nv;
  f.level = k;
  auto copy = [&](const Polynomial& p, std::size_t c) {
    std::vector<std::size_t> map(nv + np + s);
    std::iota(map.begin(), map.begin() + static_cast<std::ptrdiff_t>(nv + np), 0);
    for (std::size_t j = 0; j < s; ++j) map[nv + np + j] = nv + np + c * s + j;
    return p.rename(f.order, map);
  };
  BasicSystem mat(f.order);
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial d = copy(m.components[i], 1) - copy(m.components[i], 0);
    mat.add(d, i + 1 < k ? Rel::EQ0 : Rel::GT0);
  }
  f.matrix = SemiAlgebraicSystem::from_basic(mat);
  for (const auto& e : edges) {
    if (e.empty_real && *e.empty_real) continue;
    for (const auto& b : e.ds.disjuncts()) {
      BasicSystem eb = embed(b, f.order);
      if (!eb.is_false()) f.domain.push_back(eb);
    }
  }
  return f;
}

// ---- quantifier elimination ----

namespace {

// Components of variables linked by shared conditions.
std::vector<std::vector<std::pair<Polynomial, unsigned>>> components(const BasicSystem& b) {
  std::size_t nv = b.order().size();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [p, m] : b.masks()) {
    (void)m;
    int first = -1;
    for (std::size_t v = 0; v < nv; ++v) {
      if (!p.depends_on(v)) continue;
      if (first < 0) first = static_cast<int>(v);
      else parent[find(v)] = find(static_cast<std::size_t>(first));
    }
  }
  std::map<std::size_t, std::vector<std::pair<Polynomial, unsigned>>> groups;
  for (const auto& [p, m] : b.masks()) {
    if (p.main_var() < 0) continue;  // constants were decided by eliminate_linear
    groups[find(static_cast<std::size_t>(p.main_var()))].emplace_back(p, m);
  }
  std::vector<std::vector<std::pair<Polynomial, unsigned>>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  return out;
}

// Projection onto the first nv variables of Z(piece), as a system over v_order.
SemiAlgebraicSystem project_exists(const BasicSystem& piece, std::size_t nv, const VarOrder& v_order,
                                   const CadOptions& cad) {
  if (piece.is_false()) return SemiAlgebraicSystem::empty(v_order);
  std::vector<bool> elim(piece.order().size(), true);
  for (std::size_t i = 0; i < nv; ++i) elim[i] = false;
  BasicSystem b = eliminate_linear(piece, elim);
  if (b.is_false()) return SemiAlgebraicSystem::empty(v_order);
  SemiAlgebraicSystem result = SemiAlgebraicSystem::universe(v_order);
  for (const auto& comp : components(b)) {
    std::vector<bool> used(b.order().size(), false);
    for (const auto& [p, m] : comp) {
      for (std::size_t v = 0; v < used.size(); ++v) used[v] = used[v] || p.depends_on(v);
    }
    std::vector<std::string> names;
    std::size_t cv = 0;
    for (std::size_t v = 0; v < used.size(); ++v) {
      if (!used[v]) continue;
      names.push_back(b.order().name(v));
      if (v < nv) ++cv;
    }
    VarOrder order(names);
    BasicSystem sub(order);
    std::vector<Polynomial> polys;
    for (const auto& [p, m] : comp) {
      sub.add_mask(p.embed(order), m);
      polys.push_back(p.embed(order));
    }
    if (cv == 0) {
      if (!satisfiable(sub, cad)) return SemiAlgebraicSystem::empty(v_order);
      continue;
    }
    CadOptions opts = cad;
    opts.derivative_closed_levels = cv;
    SemiAlgebraicSystem subs = SemiAlgebraicSystem::from_basic(sub);
    CadTree t = CadBuilder(order, polys, opts).build_partial(subs, cv, true);
    SemiAlgebraicSystem proj(v_order);
    for (const auto& [path, node] : t.nodes_at(cv)) {
      bool witness = cv < t.depth() ? !node->children.empty() : holds_at(subs, t.sample(path), opts.refinement_budget);
      if (witness) proj.add_disjunct(embed(t.describe(path), v_order));
    }
    if (proj.is_syntactically_empty()) return proj;
    result = conj(result, proj);
  }
  return result;
}

}  // namespace

ValidityRegion qe_forall(const ValidityFormula& f, const QeOptions& opts) {
  VarOrder v_order = f.order.prefix(f.num_v);
  ValidityRegion out;
  std::vector<Rational> zeros(f.num_v, Rational(0));
  if (f.domain.empty()) {
    out.system = SemiAlgebraicSystem::universe(v_order);
    out.witness = zeros;
    out.samples.push_back(zeros);
    return out;
  }
  // Bad parameters: some dependence pair violates the matrix.
  SemiAlgebraicSystem neg = negate(f.matrix);
  SemiAlgebraicSystem bad(v_order);
  for (const auto& d : f.domain) {
    for (const auto& nm : neg.disjuncts()) {
      BasicSystem piece = d;
      piece.add_all(nm);
      SemiAlgebraicSystem proj = project_exists(piece, f.num_v, v_order, opts.cad);
      if (proj.is_true()) {
        out.system = SemiAlgebraicSystem::empty(v_order);
        return out;
      }
      bad = disj(bad, proj);
    }
  }
  if (bad.is_syntactically_empty()) {
    out.system = SemiAlgebraicSystem::universe(v_order);
    out.witness = zeros;
    out.samples.push_back(zeros);
    return out;
  }
  // Good cells of a derivative-closed CAD over the parameters that occur.
  std::vector<std::string> used;
  auto polys = bad.polynomials();
  for (std::size_t v = 0; v < f.num_v; ++v) {
    bool u = std::any_of(polys.begin(), polys.end(), [&](const Polynomial& p) { return p.depends_on(v); });
    if (u) used.push_back(v_order.name(v));
  }
  if (used.empty()) {
    // bad is a nonempty constant system
    out.system = SemiAlgebraicSystem::empty(v_order);
    return out;
  }
  VarOrder uorder(used);
  std::vector<Polynomial> upolys;
  for (const auto& p : polys) upolys.push_back(p.embed(uorder));
  SemiAlgebraicSystem ubad = bad.embed(uorder);
  CadOptions copts = opts.cad;
  copts.derivative_closed_levels = uorder.size();
  CadTree t = build_cad(upolys, uorder, copts);
  out.system = SemiAlgebraicSystem(v_order);
  std::optional<std::vector<Rational>> fallback;
  for (const auto& [path, leaf] : t.nodes_at(t.depth())) {
    (void)leaf;
    SamplePoint sp = t.sample(path);
    if (holds_at(ubad, sp, copts.refinement_budget)) continue;
    out.system.add_disjunct(embed(t.describe(path), v_order));
    bool rational = std::all_of(sp.begin(), sp.end(), [](const RealAlgebraicNumber& a) { return a.is_rational(); });
    if (!rational) continue;
    std::vector<Rational> v = zeros;
    for (std::size_t i = 0; i < used.size(); ++i) v[v_order.require(used[i])] = sp[i].rational_value();
    out.samples.push_back(v);
    bool full = true;
    for (std::size_t d = 1; d <= path.size(); ++d) {
      std::vector<std::size_t> pre(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(d));
      full = full && t.node(pre).ext.kind == CellExtension::Sector;
    }
    if (full && !out.witness) out.witness = v;
    if (!fallback) fallback = v;
  }
  if (!out.witness) out.witness = fallback;
  return out;
}

ParallelismResult maximize_parallelism(const std::vector<DependenceEdge>& edges, const ScheduleTemplate& m,
                                       const QeOptions& opts) {
  for (std::size_t k = m.components.size(); k >= 1; --k) {
    ValidityRegion r = qe_forall(validity_formula(edges, m, k), opts);
    if (!r.empty()) return {k, std::move(r)};
  }
  ParallelismResult none;
  none.region.system = SemiAlgebraicSystem::empty(m.v_order);
  return none;
}

// ---- picking ----

bool degenerate(const ScheduleTemplate& m, const std::vector<Rational>& v) {
  auto inst = m.instantiate(v);
  for (const auto& c : inst) {
    bool uses_x = false;
    for (std::size_t i = m.num_params; i < c.num_vars(); ++i) uses_x = uses_x || c.depends_on(i);
    if (!uses_x) return true;
  }
  return false;
}

bool singular(const ScheduleTemplate& m, const std::vector<Rational>& v) {
  auto inst = m.instantiate(v);
  std::size_t s = inst.size();
  if (s == 0) return false;
  std::vector<std::vector<Polynomial>> jac(s);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < s; ++i) jac[j].push_back(inst[j].derivative(m.num_params + i));
  }
  return determinant(jac, inst[0].order()).is_zero();
}

std::vector<std::vector<Rational>> integer_candidates(const ValidityRegion& region, const ScheduleTemplate& m,
                                                      bool nondegenerate, std::size_t limit) {
  std::vector<std::vector<Rational>> out;
  if (region.empty() || limit == 0) return out;
  std::size_t nv = m.v_order.size();
  // Coordinates whose monomial mentions x.
  std::vector<std::size_t> free;
  for (std::size_t t = 0; t < nv; ++t) {
    bool rel = false;
    for (const auto& c : m.components) {
      Polynomial d = c.derivative(t);
      for (std::size_t i = nv + m.num_params; i < m.order.size(); ++i) rel = rel || d.depends_on(i);
    }
    if (rel) free.push_back(t);
  }
  static const int kValues[] = {0, 1, -1, 2, -2, 3, -3};
  const std::size_t kMaxScan = 200000;
  std::size_t scanned = 0;
  std::vector<Rational> v(nv, Rational(0));
  std::function<bool(std::size_t, int, bool)> rec = [&](std::size_t i, int r, bool hit) -> bool {
    if (i == free.size()) {
      if (!hit) return false;
      if (++scanned > kMaxScan) return true;
      if (!holds_at(region.system, v)) return false;
      if (nondegenerate && (degenerate(m, v) || singular(m, v))) return false;
      out.push_back(v);
      return out.size() >= limit;
    }
    for (int val : kValues) {
      if (std::abs(val) > r) continue;
      v[free[i]] = val;
      if (rec(i + 1, r, hit || std::abs(val) == r)) return true;
    }
    v[free[i]] = 0;
    return false;
  };
  for (int r = 0; r <= 3; ++r) {
    if (rec(0, r, r == 0)) break;
  }
  return out;
}

std::vector<Rational> pick_schedule(const ValidityRegion& region, const ScheduleTemplate& m, bool prefer_integer,
                                    bool nondegenerate) {
  if (region.empty()) throw Error(ErrorCode::NoSchedule, "no valid schedule in the template family");
  if (prefer_integer) {
    auto c = integer_candidates(region, m, nondegenerate, 1);
    if (!c.empty()) return c.front();
  }
  if (region.witness && !(nondegenerate && (degenerate(m, *region.witness) || singular(m, *region.witness)))) {
    return *region.witness;
  }
  if (nondegenerate) throw Error(ErrorCode::NoSchedule, "validity region has no nondegenerate sample point");
  throw Error(ErrorCode::NoSchedule, "validity region has no rational sample point");
}

}  // namespace salp
