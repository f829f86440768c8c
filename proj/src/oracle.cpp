// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "salp/error.hpp"

namespace salp {

const char* dep_kind_name(DepKind k) {
  switch (k) {
    case DepKind::RAW: return "RAW";
    case DepKind::WAW: return "WAW";
    default: return "WAR";
  }
}

bool DependencePair::operator==(const DependencePair& o) const {
  return kind == o.kind && access_index == o.access_index && src == o.src && dst == o.dst && array == o.array &&
         index == o.index;
}

bool DependencePair::operator<(const DependencePair& o) const {
  if (int c = lex_compare(src, o.src)) return c < 0;
  if (int c = lex_compare(dst, o.dst)) return c < 0;
  if (kind != o.kind) return kind < o.kind;
  return access_index < o.access_index;
}

namespace {

std::vector<Rational> full_point(const PerfectNest& nest, const ParamValues& n, const IterationPoint& x) {
  std::vector<Rational> pt;
  for (const auto& name : nest.params()) {
    auto it = n.find(name);
    if (it == n.end()) throw Error(ErrorCode::InvalidArgument, "no value for parameter " + name);
    pt.emplace_back(it->second);
  }
  for (const auto& v : x) pt.emplace_back(v);
  return pt;
}

// Smallest integer z with z >= a (or > a when strict).
Integer int_above(const RealAlgebraicNumber& a, bool strict) {
  Integer z = floor_of(a.lo()) - 1;
  while (true) {
    int c = compare(a, Rational(z));
    if (c < 0 || (c == 0 && !strict)) return z;
    ++z;
  }
}

// Largest integer z with z <= a (or < a when strict).
Integer int_below(const RealAlgebraicNumber& a, bool strict) {
  Integer z = ceil_of(a.hi()) + 1;
  while (true) {
    int c = compare(a, Rational(z));
    if (c > 0 || (c == 0 && !strict)) return z;
    --z;
  }
}

std::optional<RealAlgebraicNumber> eval_bound(const Bound& b, std::size_t var, const PerfectNest& nest,
                                              const std::vector<Rational>& prefix) {
  std::vector<std::optional<Rational>> assign(nest.order.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) assign[i] = prefix[i];
  if (b.kind == Bound::Poly) return RealAlgebraicNumber(b.poly.substitute(assign).constant_value());
  Polynomial q = b.poly.substitute(assign);
  auto roots = isolate_roots(QPoly::from_polynomial(q.embed(VarOrder({nest.order.name(var)}))));
  if (b.root_index == 0 || b.root_index > roots.size()) return std::nullopt;
  return roots[b.root_index - 1];
}

}  // namespace

DomainEnumeration enumerate_domain(const PerfectNest& nest, const ParamValues& n, const Integer& bound) {
  DomainEnumeration out;
  std::vector<Rational> prefix = full_point(nest, n, {});
  if (!holds_at(nest.params_constraint, prefix)) return out;
  std::size_t p = nest.num_params;
  IterationPoint cur;
  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (d == nest.loops.size()) {
      out.points.push_back(cur);
      return;
    }
    const Loop& l = nest.loops[d];
    Integer lo = -bound - 1, hi = bound + 1;
    if (!l.lower.is_infinite()) {
      auto a = eval_bound(l.lower, p + d, nest, prefix);
      if (!a) return;
      lo = int_above(*a, !l.lower_closed);
    }
    if (!l.upper.is_infinite()) {
      auto a = eval_bound(l.upper, p + d, nest, prefix);
      if (!a) return;
      hi = int_below(*a, !l.upper_closed);
    }
    if (lo < -bound) {
      lo = -bound;
      out.truncated = true;
    }
    if (hi > bound) {
      hi = bound;
      out.truncated = true;
    }
    for (Integer z = lo; z <= hi; ++z) {
      cur.push_back(z);
      prefix.emplace_back(z);
      rec(d + 1);
      prefix.pop_back();
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

struct Instance {
  std::vector<Rational> write;
  std::vector<std::vector<Rational>> reads;
};

Instance accesses_at(const PerfectNest& nest, const ParamValues& n, const IterationPoint& x) {
  std::vector<Rational> pt = full_point(nest, n, x);
  std::vector<std::optional<Rational>> assign(pt.begin(), pt.end());
  assign.resize(nest.order.size());
  for (const auto& l : nest.lets) {
    if (l.value.kind != Bound::Poly) throw Error(ErrorCode::Semantic, "oracle: root-valued let " + l.var);
    assign[nest.order.require(l.var)] = l.value.poly.substitute(assign).constant_value();
  }
  auto eval = [&](const AccessFunction& a) {
    std::vector<Rational> idx;
    for (const auto& g : a.indices) idx.push_back(g.substitute(assign).constant_value());
    return idx;
  };
  Instance in;
  in.write = eval(nest.stmt.write);
  for (const auto& r : nest.stmt.reads) in.reads.push_back(eval(r));
  return in;
}

}  // namespace

std::vector<DependencePair> dependences_bruteforce(const PerfectNest& nest, const ParamValues& n,
                                                   const Integer& bound) {
  auto dom = enumerate_domain(nest, n, bound);
  std::vector<Instance> inst;
  for (const auto& x : dom.points) inst.push_back(accesses_at(nest, n, x));
  const std::string& warr = nest.stmt.write.array;
  std::vector<DependencePair> out;
  for (std::size_t a = 0; a < dom.points.size(); ++a) {
    for (std::size_t b = a + 1; b < dom.points.size(); ++b) {
      auto add = [&](DepKind k, std::size_t i, const std::vector<Rational>& idx) {
        out.push_back({k, i, dom.points[a], dom.points[b], warr, idx});
      };
      if (inst[a].write == inst[b].write) add(DepKind::WAW, 0, inst[a].write);
      for (std::size_t i = 0; i < nest.stmt.reads.size(); ++i) {
        if (nest.stmt.reads[i].array != warr) continue;
        if (inst[a].write == inst[b].reads[i]) add(DepKind::RAW, i + 1, inst[a].write);
        if (inst[a].reads[i] == inst[b].write) add(DepKind::WAR, i + 1, inst[b].write);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Rational> image(const std::vector<Polynomial>& m, const std::vector<Rational>& pt) {
  std::vector<Rational> y;
  for (const auto& c : m) y.push_back(c.evaluate(pt));
  return y;
}

std::string show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string show(const IterationPoint& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

ScheduleCheck schedule_valid(const std::vector<DependencePair>& pairs, const std::vector<Polynomial>& m,
                             const PerfectNest& nest, const ParamValues& n) {
  ScheduleCheck out;
  for (const auto& pr : pairs) {
    auto ys = image(m, full_point(nest, n, pr.src));
    auto yd = image(m, full_point(nest, n, pr.dst));
    if (lex_compare(ys, yd) >= 0) {
      out.ok = false;
      out.violations.push_back(pr);
    }
  }
  return out;
}

BijectionReport check_bijection(const PerfectNest& nest, const LoopProgram& transformed,
                                const std::vector<Polynomial>& m, const ParamValues& n, const Integer& bound) {
  BijectionReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(msg);
  };
  auto dom = enumerate_domain(nest, n, bound);
  rep.domain_points = dom.points.size();
  rep.truncated = dom.truncated;

  std::map<std::vector<Rational>, IterationPoint> preimage;
  for (const auto& x : dom.points) {
    auto y = image(m, full_point(nest, n, x));
    auto [it, fresh] = preimage.emplace(y, x);
    if (!fresh) fail("M is not injective: " + show(it->second) + " and " + show(x) + " both map to " + show(y));
  }

  InterpretOptions opts;
  opts.bound = bound;
  opts.abort_on_error = false;
  auto res = interpret(transformed, n, {}, opts);
  rep.truncated = rep.truncated || res.truncated;
  for (const auto& e : res.errors) fail("transformed program: " + e);
  rep.program_points = res.trace.size();

  std::map<std::vector<Rational>, std::size_t> position;
  std::vector<Rational> prev;
  for (std::size_t t = 0; t < res.trace.size(); ++t) {
    const auto& ev = res.trace[t];
    std::vector<Rational> y(ev.point.begin(), ev.point.end());
    if (t > 0 && lex_compare(prev, y) >= 0) fail("trace is not lexicographic at " + show(y));
    prev = y;
    if (!position.emplace(y, t).second) fail("iteration " + show(y) + " executes twice");
    auto it = preimage.find(y);
    if (it == preimage.end()) {
      fail("iteration " + show(y) + " is not the image of a domain point");
      continue;
    }
    std::vector<Integer> xs(ev.lets.begin(), ev.lets.end());
    if (xs != it->second) fail("lets at " + show(y) + " give " + show(xs) + ", expected " + show(it->second));
  }
  for (const auto& [y, x] : preimage) {
    if (!position.count(y)) fail("image " + show(y) + " of " + show(x) + " is never executed");
  }
  for (const auto& pr : dependences_bruteforce(nest, n, bound)) {
    auto a = position.find(image(m, full_point(nest, n, pr.src)));
    auto b = position.find(image(m, full_point(nest, n, pr.dst)));
    if (a == position.end() || b == position.end()) continue;  // reported above
    if (a->second >= b->second) {
      fail(std::string(dep_kind_name(pr.kind)) + " dependence " + show(pr.src) + " -> " + show(pr.dst) +
           " runs out of order");
    }
  }
  return rep;
}

}  // namespace salp
