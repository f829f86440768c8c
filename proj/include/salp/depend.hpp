// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salp/cad.hpp"
#include "salp/loopir.hpp"
#include "salp/oracle.hpp"

namespace salp {

// (n, x', x''): parameters, then the loop variables primed and double-primed.
VarOrder ds_order(const PerfectNest& nest);

// Conflict set through access i: WAW (g0 against g0) for i = 0, and for a
// read i >= 1 the union of RAW (g0(x') = gi(x'')) and WAR (gi(x') = g0(x'')).
// Structural error when the read names another array.
SemiAlgebraicSystem build_ds(const PerfectNest& nest, std::size_t i);
// One orientation only.
SemiAlgebraicSystem build_ds(const PerfectNest& nest, std::size_t i, DepKind kind);

struct DependenceEdge {
  DepKind kind = DepKind::RAW;
  std::size_t access_index = 0;
  std::size_t nest = 0;
  SemiAlgebraicSystem ds;  // over ds_order(nest)
  std::optional<bool> empty_real;
};

struct DependenceGraph {
  std::vector<std::string> nodes;  // one per statement (nest)
  std::vector<DependenceEdge> edges;
};

bool is_empty_real(const SemiAlgebraicSystem& ds, const CadOptions& opts = {});

// Integer pairs (x', x'') of the nest's domain at n that satisfy ds. Budget
// error when the domain does not fit in [-bound, bound].
std::vector<std::pair<IterationPoint, IterationPoint>> ds_integer_points(const PerfectNest& nest,
                                                                         const SemiAlgebraicSystem& ds,
                                                                         const ParamValues& n, const Integer& bound);
bool is_empty_int_at(const PerfectNest& nest, const SemiAlgebraicSystem& ds, const ParamValues& n,
                     const Integer& bound);

// WAW, then RAW and WAR for each read of the written array.
std::vector<DependenceEdge> build_edges(const PerfectNest& nest, bool decide = true, const CadOptions& opts = {});
DependenceGraph build_graph(const LoopProgram& prog, bool decide = true, const CadOptions& opts = {});

}  // namespace salp
