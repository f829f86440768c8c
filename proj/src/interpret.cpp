// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>
#include <cstring>

#include "salp/error.hpp"
#include "salp/loopir.hpp"

namespace salp {

Value hash_combinator(const std::string& name, const std::vector<Value>& args) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (char c : name) mix(static_cast<unsigned char>(c));
  for (Value v : args) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) mix(static_cast<unsigned char>(u >> (8 * b)));
  }
  // Keep values in a range where sums of a few thousand terms cannot wrap.
  return static_cast<Value>(h >> 20);
}

namespace {

// Value of a bound at a point: exact rational or a real algebraic number.
RealAlgebraicNumber bound_value(const Bound& b, const std::string& var, const VarOrder& order,
                                const std::vector<std::optional<Rational>>& point, bool* missing) {
  *missing = false;
  if (b.kind == Bound::Poly) {
    Polynomial q = b.poly.substitute(point);
    if (!q.is_constant()) structural("bound " + b.poly.to_string() + " depends on unassigned variables");
    return RealAlgebraicNumber(q.constant_value());
  }
  std::size_t v = order.require(var);
  std::vector<std::optional<Rational>> pt = point;
  pt.resize(order.size());
  pt[v].reset();
  Polynomial q = b.poly.substitute(pt);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i != v && q.depends_on(i)) structural("root bound depends on unassigned variable " + order.name(i));
  }
  if (q.degree(v) == 0) {
    *missing = true;
    return {};
  }
  auto roots = isolate_roots(QPoly::from_polynomial(q.embed(VarOrder({var}))));
  if (b.root_index == 0 || b.root_index > roots.size()) {
    *missing = true;
    return {};
  }
  return roots[b.root_index - 1];
}

Integer floor_ran(RealAlgebraicNumber a) {
  while (!a.is_rational() && floor_of(a.lo()) != floor_of(a.hi())) a.bisect();
  return a.is_rational() ? floor_of(a.rational_value()) : floor_of(a.lo());
}

}  // namespace

IntRange loop_range(const Loop& loop, const VarOrder& order, const std::vector<std::optional<Rational>>& point,
                    const Integer& bound) {
  IntRange r;
  auto end = [&](const Bound& b, bool lower, bool closed) -> std::optional<Integer> {
    if (b.kind == Bound::NegInf) return Integer(-bound) - 1;
    if (b.kind == Bound::PosInf) return Integer(bound) + 1;
    bool missing = false;
    RealAlgebraicNumber x = bound_value(b, loop.var, order, point, &missing);
    if (missing) return std::nullopt;
    bool integral = x.is_rational() && is_integer(x.rational_value());
    Integer f = floor_ran(x);
    if (lower) return integral ? (closed ? f : f + 1) : f + 1;
    return integral ? (closed ? f : f - 1) : f;
  };
  auto lo = end(loop.lower, true, loop.lower_closed);
  auto hi = end(loop.upper, false, loop.upper_closed);
  if (!lo || !hi) {
    r.lo = 1;
    r.hi = 0;
    return r;
  }
  r.lo = *lo;
  r.hi = *hi;
  if (r.lo < -bound) {
    r.lo = -bound;
    r.clipped = true;
  }
  if (r.hi > bound) {
    r.hi = bound;
    r.clipped = true;
  }
  return r;
}

namespace {

class Interpreter {
 public:
  Interpreter(const InterpretOptions& opts, InterpretResult& res) : opts_(opts), res_(res) {}

  void run_region(const Region& reg, std::size_t index, const std::map<std::string, Integer>& params) {
    reg_ = &reg;
    index_ = index;
    point_.assign(reg.order.size(), std::nullopt);
    for (std::size_t i = 0; i < reg.num_params; ++i) {
      auto it = params.find(reg.order.name(i));
      if (it == params.end()) throw Error(ErrorCode::InvalidArgument, "no value for parameter " + reg.order.name(i));
      point_[i] = Rational(it->second);
    }
    std::vector<Rational> pv;
    for (std::size_t i = 0; i < reg.num_params; ++i) pv.push_back(*point_[i]);
    for (std::size_t i = reg.num_params; i < reg.order.size(); ++i) pv.push_back(0);
    if (!holds_at(reg.constraint, pv)) return;
    for (const auto& n : reg.loops) {
      if (stop_) return;
      walk(n);
    }
  }

  bool stopped() const { return stop_; }

 private:
  void error(const std::string& msg) {
    res_.errors.push_back(msg);
    if (opts_.abort_on_error) stop_ = true;
  }

  std::optional<Integer> integral(const Rational& v, const std::string& what) {
    if (!is_integer(v)) {
      error(what + " is not an integer: " + to_string(v) + " at " + where());
      return std::nullopt;
    }
    return v.get_num();
  }

  std::string where() const {
    std::string s = "(";
    bool first = true;
    for (std::size_t i = 0; i < point_.size(); ++i) {
      if (!point_[i]) continue;
      s += (first ? "" : ", ") + reg_->order.name(i) + "=" + to_string(*point_[i]);
      first = false;
    }
    return s + ")";
  }

  void walk(const LoopNode& n) {
    std::size_t v = reg_->order.require(n.loop.var);
    IntRange r = loop_range(n.loop, reg_->order, point_, opts_.bound);
    if (r.clipped) res_.truncated = true;
    path_.push_back(v);
    for (Integer x = r.lo; x <= r.hi && !stop_; ++x) {
      point_[v] = Rational(x);
      if (n.body) {
        execute(*n.body);
      } else {
        for (const auto& c : n.children) {
          if (stop_) break;
          walk(c);
        }
      }
    }
    point_[v].reset();
    path_.pop_back();
  }

  std::optional<Address> address(const AccessFunction& a) {
    Address out{a.array, {}};
    for (const auto& g : a.indices) {
      auto z = integral(g.substitute(point_).constant_value(), "index of " + a.array);
      if (!z) return std::nullopt;
      out.second.push_back(*z);
    }
    return out;
  }

  void execute(const Body& body) {
    TraceEvent ev;
    ev.region = index_;
    std::vector<std::size_t> let_vars;
    for (std::size_t v : path_) ev.point.push_back(point_[v]->get_num());
    for (const auto& l : body.lets) {
      std::size_t v = reg_->order.require(l.var);
      bool missing = false;
      RealAlgebraicNumber val = bound_value(l.value, l.var, reg_->order, point_, &missing);
      if (missing) {
        error("let " + l.var + " has no value at " + where());
        break;
      }
      if (!val.is_rational()) {
        error("let " + l.var + " is irrational (" + val.to_string() + ") at " + where());
        break;
      }
      auto z = integral(val.rational_value(), "let " + l.var);
      if (!z) break;
      point_[v] = Rational(*z);
      let_vars.push_back(v);
      ev.lets.push_back(*z);
    }
    if (ev.lets.size() == body.lets.size()) {
      auto w = address(body.stmt.write);
      std::vector<Address> reads;
      bool ok = w.has_value();
      for (const auto& a : body.stmt.reads) {
        if (!ok) break;
        auto ad = address(a);
        if (!ad) ok = false;
        else reads.push_back(*ad);
      }
      if (ok) {
        std::vector<Value> args;
        for (const auto& ad : reads) args.push_back(read(ad));
        Value nv = opts_.f(body.stmt.combinator, args);
        Value& cell = res_.arrays[w->first][w->second];
        switch (body.stmt.reduction) {
          case Reduction::Assign: cell = nv; break;
          case Reduction::Sum:
            cell = static_cast<Value>(static_cast<std::uint64_t>(cell) + static_cast<std::uint64_t>(nv));
            break;
          case Reduction::Max: cell = std::max(cell, nv); break;
          case Reduction::Min: cell = std::min(cell, nv); break;
          default: cell = opts_.f(body.stmt.reduction_name, {cell, nv}); break;
        }
        ev.write = *w;
        ev.reads = std::move(reads);
        res_.trace.push_back(std::move(ev));
      }
    }
    for (std::size_t v : let_vars) point_[v].reset();
  }

  Value read(const Address& a) {
    auto it = res_.arrays.find(a.first);
    if (it == res_.arrays.end()) return 0;
    auto jt = it->second.find(a.second);
    return jt == it->second.end() ? 0 : jt->second;
  }

  const InterpretOptions& opts_;
  InterpretResult& res_;
  const Region* reg_ = nullptr;
  std::size_t index_ = 0;
  std::vector<std::optional<Rational>> point_;
  std::vector<std::size_t> path_;
  bool stop_ = false;
};

}  // namespace

InterpretResult interpret(const LoopProgram& prog, const std::map<std::string, Integer>& params,
                          const Arrays& arrays_in, const InterpretOptions& opts) {
  InterpretResult res;
  res.arrays = arrays_in;
  Interpreter in(opts, res);
  for (std::size_t r = 0; r < prog.regions.size() && !in.stopped(); ++r) in.run_region(prog.regions[r], r, params);
  return res;
}

}  // namespace salp
