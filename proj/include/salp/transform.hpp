// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salp/oracle.hpp"
#include "salp/schedule.hpp"

namespace salp {

// E_T over (v, n, y, x): the domain, y_j - M_j = 0 and E_V.
SemiAlgebraicSystem build_et(const PerfectNest& nest, const ScheduleTemplate& m, const ValidityRegion& ev);

struct TransformOptions {
  CadOptions cad;
  // Level carrying every dependence; loops at the other levels are marked
  // parallel. 0 marks every loop parallel, nullopt none.
  std::optional<std::size_t> level;
};

struct TransformResult {
  std::vector<Rational> v;            // template point the schedule was taken at
  std::vector<Polynomial> schedule;   // M at v, over the nest's domain order
  std::vector<std::string> y_names;
  VarOrder order;                     // (n, y, x)
  std::size_t num_params = 0;
  CadTree t_L;                        // over (n, y, x)
  CadTree t_ny;                       // over (n, y)
  std::vector<std::vector<Bound>> xi; // per leaf of t_ny, x_i as a bound over `order`
  LoopProgram program;
  std::optional<std::size_t> level;
  std::vector<std::string> diagnostics;
};

// The transformed program for schedule M at the concrete point v.
// TransformFailed when some cell of the image is not a chain of sections
// in x, with the offending level in the message.
TransformResult transform(const PerfectNest& nest, const ScheduleTemplate& m, const std::vector<Rational>& v,
                          const TransformOptions& opts = {});

struct IntegerValidityReport {
  bool ok = true;
  bool integer_coefficients = false;  // (a) decided without enumeration
  bool truncated = false;
  std::vector<Integer> n_values;
  std::vector<std::string> failures;
};

// (a) M maps D_z into Z^s, (b) the lets of the transformed program take
// integer values, (c) M is a bijection from D_z onto the program's integer
// points, in dependence order; for each n in the grid.
IntegerValidityReport check_integer_validity(const PerfectNest& nest, const TransformResult& res,
                                             const std::vector<Integer>& n_grid, const Integer& bound);
// Same, but IntegerValidityFailed when a check fails.
IntegerValidityReport require_integer_validity(const PerfectNest& nest, const TransformResult& res,
                                               const std::vector<Integer>& n_grid, const Integer& bound);

enum class EmitFormat { Dsl, Json };
std::string emit(const TransformResult& res, EmitFormat format);

}  // namespace salp
