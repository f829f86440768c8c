// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/transform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "salp/error.hpp"

namespace salp {

namespace {

std::vector<std::string> fresh_y_names(const PerfectNest& nest, const std::vector<std::string>& avoid) {
  std::set<std::string> used(nest.order.names().begin(), nest.order.names().end());
  used.insert(avoid.begin(), avoid.end());
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= nest.depth(); ++j) {
    std::string y = "y" + std::to_string(j);
    while (used.count(y)) y += "_";
    used.insert(y);
    out.push_back(y);
  }
  return out;
}

// Access with the nest's own lets substituted, over the domain order.
AccessFunction resolved(const PerfectNest& nest, const AccessFunction& a) {
  VarOrder dom = nest.domain_order();
  AccessFunction out{a.array, {}};
  for (Polynomial g : a.indices) {
    for (std::size_t l = nest.lets.size(); l-- > 0;) {
      const Let& let = nest.lets[l];
      if (!g.depends_on(nest.order.require(let.var))) continue;
      if (let.value.kind != Bound::Poly) {
        throw Error(ErrorCode::Semantic, "transform needs explicit lets; '" + let.var + "' is a root");
      }
      g = g.substitute(nest.order.require(let.var), let.value.poly);
    }
    out.indices.push_back(g.embed(dom));
  }
  return out;
}

std::string show_path(const std::vector<std::size_t>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "." : "") + std::to_string(path[i]);
  return s;
}

}  // namespace

SemiAlgebraicSystem build_et(const PerfectNest& nest, const ScheduleTemplate& m, const ValidityRegion& ev) {
  std::vector<std::string> names = m.v_order.names();
  auto ys = fresh_y_names(nest, names);
  for (const auto& n : nest.params()) names.push_back(n);
  for (const auto& y : ys) names.push_back(y);
  for (const auto& x : nest.iter_vars()) names.push_back(x);
  VarOrder order(names);
  BasicSystem em(order);
  for (std::size_t j = 0; j < m.components.size(); ++j) {
    em.add(Polynomial::variable(order, ys[j]) - m.components[j].embed(order), Rel::EQ0);
  }
  SemiAlgebraicSystem et = conj(domain_system(nest).embed(order), SemiAlgebraicSystem::from_basic(em));
  return conj(et, ev.system.embed(order));
}

TransformResult transform(const PerfectNest& nest, const ScheduleTemplate& m, const std::vector<Rational>& v,
                          const TransformOptions& opts) {
  std::size_t p = nest.num_params, s = nest.depth();
  TransformResult res;
  res.v = v;
  res.schedule = m.instantiate(v);
  res.level = opts.level;
  res.num_params = p;
  if (res.schedule.size() != s) throw Error(ErrorCode::InvalidArgument, "schedule dimension differs from nest depth");
  res.y_names = fresh_y_names(nest, {});
  std::vector<std::string> names = nest.params();
  names.insert(names.end(), res.y_names.begin(), res.y_names.end());
  for (const auto& x : nest.iter_vars()) names.push_back(x);
  res.order = VarOrder(names);
  const VarOrder& o = res.order;

  SemiAlgebraicSystem dom = domain_system(nest).embed(o);
  BasicSystem em(o);
  for (std::size_t j = 0; j < s; ++j) {
    em.add(Polynomial::variable(o, p + j) - res.schedule[j].embed(o), Rel::EQ0);
  }
  SemiAlgebraicSystem et = conj(dom, SemiAlgebraicSystem::from_basic(em));
  CadOptions copts = opts.cad;
  copts.derivative_closed_levels = std::max(copts.derivative_closed_levels, p);
  res.t_L = CadBuilder(o, et.polynomials(), copts).build_partial(et, 0, false);

  // Every (n, y) cell must carry a single chain of x-sections.
  auto leaves = res.t_L.nodes_at(p + s);
  for (const auto& [path, node] : leaves) {
    const CadNode* cur = node;
    for (std::size_t i = 0; i < s; ++i) {
      if (cur->children.size() != 1) {
        res.diagnostics.push_back("cell " + show_path(path) + ": level " + o.name(p + s + i) + " has " +
                                  std::to_string(cur->children.size()) + " cells over one image point");
        break;
      }
      cur = &cur->children[0];
      if (cur->ext.kind != CellExtension::Section) {
        res.diagnostics.push_back("cell " + show_path(path) + ": level " + o.name(p + s + i) + " is a sector");
        break;
      }
    }
  }
  if (!res.diagnostics.empty()) {
    std::string msg = "schedule is not invertible on the domain:";
    for (std::size_t i = 0; i < res.diagnostics.size() && i < 5; ++i) msg += " " + res.diagnostics[i] + ";";
    throw Error(ErrorCode::TransformFailed, msg);
  }
  if (leaves.empty()) throw Error(ErrorCode::TransformFailed, "the transformed domain is empty");
  res.t_ny = induced(res.t_L, p + s);

  // Inverse functions per image cell, and the rewritten statement.
  std::vector<AccessFunction> acc;
  acc.push_back(resolved(nest, nest.stmt.write));
  for (const auto& r : nest.stmt.reads) acc.push_back(resolved(nest, r));
  std::vector<std::string> xs = nest.iter_vars();
  std::map<std::vector<std::size_t>, Body> bodies;
  for (const auto& [path, node] : leaves) {
    std::vector<Bound> xi;
    const CadNode* cur = node;
    for (std::size_t i = 0; i < s; ++i) {
      cur = &cur->children[0];
      xi.push_back(bound_from_root(cur->ext.section, p + s + i, o));
    }
    res.xi.push_back(xi);
    std::vector<std::optional<Polynomial>> explicit_x(s);
    for (std::size_t i = 0; i < s; ++i) {
      if (xi[i].kind != Bound::Poly) continue;
      Polynomial e = xi[i].poly;
      for (std::size_t j = 0; j < i; ++j) {
        if (explicit_x[j] && e.depends_on(p + s + j)) e = e.substitute(p + s + j, *explicit_x[j]);
      }
      bool closed_form = true;
      for (std::size_t j = 0; j < s; ++j) closed_form = closed_form && !e.depends_on(p + s + j);
      if (closed_form) explicit_x[i] = e;
    }
    Body b;
    b.stmt = nest.stmt;
    for (std::size_t i = 0; i < s; ++i) b.lets.push_back({xs[i], xi[i]});
    auto rewrite = [&](const AccessFunction& a) {
      AccessFunction out{a.array, {}};
      for (const auto& g : a.indices) {
        Polynomial h = g.embed(o);
        for (std::size_t i = 0; i < s; ++i) {
          if (explicit_x[i] && h.depends_on(p + s + i)) h = h.substitute(p + s + i, *explicit_x[i]);
        }
        out.indices.push_back(h);
      }
      return out;
    };
    b.stmt.write = rewrite(acc[0]);
    for (std::size_t r = 0; r < nest.stmt.reads.size(); ++r) b.stmt.reads[r] = rewrite(acc[r + 1]);
    bodies[path] = b;
  }
  res.program = cad_to_loops(
      res.t_ny, p, [&](const std::vector<std::size_t>& path) { return bodies.at(path); }, xs);

  if (opts.level) {
    std::size_t k = *opts.level;
    std::function<void(std::vector<LoopNode>&, std::size_t)> mark = [&](std::vector<LoopNode>& ns, std::size_t d) {
      for (auto& n : ns) {
        n.loop.parallel = k == 0 || d + 1 != k;
        mark(n.children, d + 1);
      }
    };
    for (auto& r : res.program.regions) mark(r.loops, 0);
  }
  return res;
}

namespace {

std::string show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

IntegerValidityReport check_integer_validity(const PerfectNest& nest, const TransformResult& res,
                                             const std::vector<Integer>& n_grid, const Integer& bound) {
  IntegerValidityReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(msg);
  };
  rep.integer_coefficients = std::all_of(res.schedule.begin(), res.schedule.end(), [](const Polynomial& c) {
    return std::all_of(c.terms().begin(), c.terms().end(), [](const Term& t) { return is_integer(t.coef); });
  });
  std::vector<Integer> grid = n_grid;
  if (nest.num_params == 0) grid = {Integer(0)};
  for (const auto& nv : grid) {
    ParamValues pv;
    for (const auto& name : nest.params()) pv[name] = nv;
    std::string at = nest.num_params ? " at n = " + to_string(nv) : "";
    rep.n_values.push_back(nv);
    // (a)
    if (!rep.integer_coefficients) {
      auto dom = enumerate_domain(nest, pv, bound);
      rep.truncated = rep.truncated || dom.truncated;
      for (const auto& x : dom.points) {
        std::vector<Rational> pt;
        for (const auto& name : nest.params()) pt.emplace_back(pv[name]);
        for (const auto& c : x) pt.emplace_back(c);
        std::vector<Rational> y;
        for (const auto& c : res.schedule) y.push_back(c.evaluate(pt));
        if (!std::all_of(y.begin(), y.end(), [](const Rational& r) { return is_integer(r); })) {
          fail("M" + show(pt) + " = " + show(y) + " is not integral" + at);
        }
      }
    }
    // (b) and (c): the interpreter rejects non-integral lets; check_bijection
    // reports them together with the bijection and order checks.
    BijectionReport b = check_bijection(nest, res.program, res.schedule, pv, bound);
    rep.truncated = rep.truncated || b.truncated;
    for (const auto& f : b.failures) fail(f + at);
  }
  return rep;
}

IntegerValidityReport require_integer_validity(const PerfectNest& nest, const TransformResult& res,
                                               const std::vector<Integer>& n_grid, const Integer& bound) {
  IntegerValidityReport rep = check_integer_validity(nest, res, n_grid, bound);
  if (!rep.ok) {
    std::string msg = "integer validity fails:";
    for (std::size_t i = 0; i < rep.failures.size() && i < 5; ++i) msg += " " + rep.failures[i] + ";";
    throw Error(ErrorCode::IntegerValidityFailed, msg);
  }
  return rep;
}

std::string emit(const TransformResult& res, EmitFormat format) {
  return format == EmitFormat::Json ? program_to_json(res.program) : print_program(res.program);
}

}  // namespace salp
