// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salp/cad.hpp"
#include "salp/poly.hpp"
#include "salp/sas.hpp"

namespace salp {

enum class Reduction { Assign, Sum, Max, Min, Other };

struct AccessFunction {
  std::string array;
  std::vector<Polynomial> indices;
};

// (x, A0[g0], f(A1[g1], ..., Ar[gr]), R); the iteration variables are the
// enclosing loops.
struct Statement {
  AccessFunction write;
  Reduction reduction = Reduction::Assign;
  std::string reduction_name;  // for Reduction::Other
  std::string combinator = "f";
  std::vector<AccessFunction> reads;
};

// Loop endpoint or let value: a polynomial in earlier variables, the k-th
// real root (in the bound variable) of a polynomial, or an infinity.
struct Bound {
  enum Kind { Poly, Root, NegInf, PosInf };
  Kind kind = Poly;
  Polynomial poly;
  unsigned root_index = 0;

  static Bound of(Polynomial p) { return Bound{Poly, std::move(p), 0}; }
  static Bound root(Polynomial p, unsigned k) { return Bound{Root, std::move(p), k}; }
  static Bound neg_inf() { return Bound{NegInf, {}, 0}; }
  static Bound pos_inf() { return Bound{PosInf, {}, 0}; }
  bool is_infinite() const { return kind == NegInf || kind == PosInf; }
};

struct Loop {
  std::string var;
  Bound lower, upper;
  bool lower_closed = true;
  bool upper_closed = true;
  bool parallel = false;
  bool unbounded() const { return lower.is_infinite() || upper.is_infinite(); }
};

struct Let {
  std::string var;
  Bound value;  // Poly or Root
};

struct Body {
  std::vector<Let> lets;
  Statement stmt;
};

// Loops of a region form a tree; siblings run in order, leaves carry a body.
struct LoopNode {
  Loop loop;
  std::vector<LoopNode> children;
  std::optional<Body> body;
};

// A tree rooted at the parameter set P. Every polynomial of the region is
// over `order`: parameters, then loop variables (first appearance), then let
// variables.
struct Region {
  VarOrder order;
  std::size_t num_params = 0;
  SemiAlgebraicSystem constraint;  // E(P)
  std::vector<LoopNode> loops;

  std::vector<std::string> params() const;
};

struct LoopProgram {
  std::vector<Region> regions;
};

// One root-to-leaf path: P, L1..Ls, stmt. Its order is parameters, loop
// variables, then let variables.
struct PerfectNest {
  VarOrder order;
  std::size_t num_params = 0;
  SemiAlgebraicSystem params_constraint;
  std::vector<Loop> loops;
  std::vector<Let> lets;
  Statement stmt;

  std::size_t depth() const { return loops.size(); }
  std::vector<std::string> params() const;
  std::vector<std::string> iter_vars() const;
  // Parameters followed by loop variables.
  VarOrder domain_order() const { return order.prefix(num_params + loops.size()); }
};

LoopProgram parse_program(const std::string& text);
std::string print_program(const LoopProgram& prog);
std::string program_to_json(const LoopProgram& prog);
std::string print_bound(const Bound& b);
std::string print_statement(const Statement& s);

std::vector<PerfectNest> nests(const LoopProgram& prog);
// The only nest of a single-nest program; semantic error otherwise.
PerfectNest single_nest(const LoopProgram& prog);
LoopProgram from_nest(const PerfectNest& nest);

// E_L = E(P) and all E_i, over the nest's domain order. Root bounds are not
// polynomial conditions and raise a semantic error.
SemiAlgebraicSystem domain_system(const PerfectNest& nest);
// Exact membership of a rational point of the domain order.
bool in_domain(const PerfectNest& nest, const std::vector<Rational>& point);

// The loop program associated with a CAD over (n, x), n the first p
// variables. Parameter regions come from the depth-p cells (made exact with
// a derivative-closed parameter CAD when needed). Each leaf gets
// body(leaf path); its lets must be named in let_names.
using BodyFn = std::function<Body(const std::vector<std::size_t>& leaf_path)>;
LoopProgram cad_to_loops(const CadTree& t, std::size_t p, const BodyFn& body,
                         const std::vector<std::string>& let_names = {});
LoopProgram cad_to_loops(const CadTree& t, std::size_t p, const Body& body);
// Expresses a CAD root reference as a loop bound over `order` (explicit when
// the polynomial is linear in var with constant leading coefficient).
Bound bound_from_root(const RootRef& r, std::size_t var, const VarOrder& order);

// ---- interpretation ----

using Value = std::int64_t;
using Address = std::pair<std::string, std::vector<Integer>>;
using Arrays = std::map<std::string, std::map<std::vector<Integer>, Value>>;
// f(name, args); reductions other(name) call it with (name, {old, new}).
using Combinator = std::function<Value(const std::string& name, const std::vector<Value>& args)>;

Value hash_combinator(const std::string& name, const std::vector<Value>& args);

struct InterpretOptions {
  Integer bound = 32;  // loop ranges are clipped to [-bound, bound]
  bool abort_on_error = true;
  Combinator f = hash_combinator;
};

struct TraceEvent {
  std::size_t region = 0;
  std::vector<Integer> point;  // loop variables
  std::vector<Integer> lets;
  Address write;
  std::vector<Address> reads;
};

struct InterpretResult {
  Arrays arrays;
  std::vector<TraceEvent> trace;
  std::vector<std::string> errors;
  bool truncated = false;
};

// Sequential execution in lexicographic order at the given parameters.
InterpretResult interpret(const LoopProgram& prog, const std::map<std::string, Integer>& params,
                          const Arrays& arrays_in, const InterpretOptions& opts = {});

// Integer range of one loop at a point (values for the loop's earlier
// variables, by name); clipped to [-bound, bound].
struct IntRange {
  Integer lo, hi;  // empty when lo > hi
  bool clipped = false;
};
IntRange loop_range(const Loop& loop, const VarOrder& order, const std::vector<std::optional<Rational>>& point,
                    const Integer& bound);

}  // namespace salp
