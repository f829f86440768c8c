// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/depend.hpp"

#include <functional>

#include "salp/error.hpp"

namespace salp {

VarOrder ds_order(const PerfectNest& nest) {
  std::vector<std::string> names = nest.params();
  for (const auto& x : nest.iter_vars()) names.push_back(x + "'");
  for (const auto& x : nest.iter_vars()) names.push_back(x + "''");
  return VarOrder(names);
}

namespace {

// Accesses with explicit lets substituted, over the domain order.
AccessFunction resolved(const PerfectNest& nest, const AccessFunction& a) {
  VarOrder dom = nest.domain_order();
  AccessFunction out{a.array, {}};
  for (Polynomial g : a.indices) {
    for (std::size_t l = nest.lets.size(); l-- > 0;) {
      const Let& let = nest.lets[l];
      if (!g.depends_on(nest.order.require(let.var))) continue;
      if (let.value.kind != Bound::Poly) {
        throw Error(ErrorCode::Semantic, "dependence analysis needs explicit lets; '" + let.var + "' is a root");
      }
      g = g.substitute(nest.order.require(let.var), let.value.poly);
    }
    out.indices.push_back(g.embed(dom));
  }
  return out;
}

// Copy of a domain-order polynomial with loop variables primed (copy 0) or
// double-primed (copy 1).
Polynomial copy_of(const Polynomial& p, const PerfectNest& nest, const VarOrder& target, int copy) {
  std::size_t np = nest.num_params, s = nest.depth();
  std::vector<std::size_t> map(np + s);
  for (std::size_t i = 0; i < np; ++i) map[i] = i;
  for (std::size_t j = 0; j < s; ++j) map[np + j] = np + static_cast<std::size_t>(copy) * s + j;
  return p.rename(target, map);
}

SemiAlgebraicSystem copy_of(const SemiAlgebraicSystem& a, const PerfectNest& nest, const VarOrder& target, int copy) {
  SemiAlgebraicSystem out(target);
  for (const auto& b : a.disjuncts()) {
    BasicSystem c(target);
    if (b.is_false()) c = BasicSystem::make_false(target);
    for (const auto& [p, m] : b.masks()) c.add_mask(copy_of(p.embed(nest.domain_order()), nest, target, copy), m);
    out.add_disjunct(c);
  }
  return out;
}

// x' < x'' lexicographically: one disjunct per position.
SemiAlgebraicSystem lex_less(const PerfectNest& nest, const VarOrder& order) {
  std::size_t np = nest.num_params, s = nest.depth();
  SemiAlgebraicSystem out(order);
  for (std::size_t k = 0; k < s; ++k) {
    BasicSystem b(order);
    for (std::size_t j = 0; j <= k; ++j) {
      Polynomial d = Polynomial::variable(order, np + s + j) - Polynomial::variable(order, np + j);
      b.add(d, j < k ? Rel::EQ0 : Rel::GT0);
    }
    out.add_disjunct(b);
  }
  return out;
}

SemiAlgebraicSystem conflict(const PerfectNest& nest, const AccessFunction& first, const AccessFunction& second) {
  VarOrder order = ds_order(nest);
  BasicSystem eq(order);
  for (std::size_t d = 0; d < first.indices.size(); ++d) {
    eq.add(copy_of(first.indices[d], nest, order, 0) - copy_of(second.indices[d], nest, order, 1), Rel::EQ0);
  }
  SemiAlgebraicSystem dom = domain_system(nest);
  SemiAlgebraicSystem out = conj(lex_less(nest, order), conj(copy_of(dom, nest, order, 0), copy_of(dom, nest, order, 1)));
  return conj(out, SemiAlgebraicSystem::from_basic(eq));
}

}  // namespace

SemiAlgebraicSystem build_ds(const PerfectNest& nest, std::size_t i, DepKind kind) {
  AccessFunction w = resolved(nest, nest.stmt.write);
  if (i == 0) {
    if (kind != DepKind::WAW) structural("build_ds: access 0 only has a WAW orientation");
    return conflict(nest, w, w);
  }
  if (i > nest.stmt.reads.size()) structural("build_ds: no read access " + std::to_string(i));
  const AccessFunction& r0 = nest.stmt.reads[i - 1];
  if (r0.array != w.array) {
    structural("build_ds: read " + std::to_string(i) + " names array " + r0.array + ", the write names " + w.array);
  }
  AccessFunction r = resolved(nest, r0);
  if (kind == DepKind::RAW) return conflict(nest, w, r);
  if (kind == DepKind::WAR) return conflict(nest, r, w);
  structural("build_ds: a read access has no WAW orientation");
}

SemiAlgebraicSystem build_ds(const PerfectNest& nest, std::size_t i) {
  if (i == 0) return build_ds(nest, 0, DepKind::WAW);
  return disj(build_ds(nest, i, DepKind::RAW), build_ds(nest, i, DepKind::WAR));
}

bool is_empty_real(const SemiAlgebraicSystem& ds, const CadOptions& opts) { return is_empty(ds, opts); }

std::vector<std::pair<IterationPoint, IterationPoint>> ds_integer_points(const PerfectNest& nest,
                                                                         const SemiAlgebraicSystem& ds,
                                                                         const ParamValues& n, const Integer& bound) {
  // Enumerate with the IR's own range evaluation.
  VarOrder dom = nest.domain_order();
  std::vector<std::optional<Rational>> point(dom.size());
  std::vector<Rational> params;
  for (std::size_t i = 0; i < nest.num_params; ++i) {
    auto it = n.find(dom.name(i));
    if (it == n.end()) throw Error(ErrorCode::InvalidArgument, "no value for parameter " + dom.name(i));
    point[i] = Rational(it->second);
    params.push_back(*point[i]);
  }
  std::vector<IterationPoint> pts;
  std::vector<Rational> full = params;
  full.resize(dom.size());
  if (holds_at(nest.params_constraint.embed(dom), full)) {
    IterationPoint cur;
    std::function<void(std::size_t)> rec = [&](std::size_t d) {
      if (d == nest.depth()) {
        pts.push_back(cur);
        return;
      }
      Loop l = nest.loops[d];
      for (Bound* b : {&l.lower, &l.upper}) {
        if (!b->is_infinite()) b->poly = b->poly.embed(dom);
      }
      IntRange r = loop_range(l, dom, point, bound);
      if (r.clipped) {
        throw Error(ErrorCode::Budget, "domain of loop " + l.var + " is not within [-" + to_string(bound) + ", " +
                                           to_string(bound) + "]");
      }
      std::size_t v = nest.num_params + d;
      for (Integer z = r.lo; z <= r.hi; ++z) {
        point[v] = Rational(z);
        cur.push_back(z);
        rec(d + 1);
        cur.pop_back();
      }
      point[v].reset();
    };
    rec(0);
  }
  std::vector<std::pair<IterationPoint, IterationPoint>> out;
  std::vector<Rational> pt = params;
  pt.resize(nest.num_params + 2 * nest.depth());
  for (const auto& a : pts) {
    for (const auto& b : pts) {
      for (std::size_t j = 0; j < nest.depth(); ++j) {
        pt[nest.num_params + j] = Rational(a[j]);
        pt[nest.num_params + nest.depth() + j] = Rational(b[j]);
      }
      if (holds_at(ds, pt)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool is_empty_int_at(const PerfectNest& nest, const SemiAlgebraicSystem& ds, const ParamValues& n,
                     const Integer& bound) {
  return ds_integer_points(nest, ds, n, bound).empty();
}

std::vector<DependenceEdge> build_edges(const PerfectNest& nest, bool decide, const CadOptions& opts) {
  std::vector<DependenceEdge> out;
  auto add = [&](DepKind k, std::size_t i) {
    DependenceEdge e;
    e.kind = k;
    e.access_index = i;
    e.ds = build_ds(nest, i, k);
    if (decide) e.empty_real = is_empty_real(e.ds, opts);
    out.push_back(std::move(e));
  };
  add(DepKind::WAW, 0);
  for (std::size_t i = 1; i <= nest.stmt.reads.size(); ++i) {
    if (nest.stmt.reads[i - 1].array != nest.stmt.write.array) continue;
    add(DepKind::RAW, i);
    add(DepKind::WAR, i);
  }
  return out;
}

DependenceGraph build_graph(const LoopProgram& prog, bool decide, const CadOptions& opts) {
  DependenceGraph g;
  auto ns = nests(prog);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    g.nodes.push_back(print_statement(ns[k].stmt));
    for (auto& e : build_edges(ns[k], decide, opts)) {
      e.nest = k;
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

}  // namespace salp
