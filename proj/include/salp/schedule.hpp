// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <vector>

#include "salp/cad.hpp"
#include "salp/depend.hpp"
#include "salp/loopir.hpp"

namespace salp {

// M_1..M_s, linear in the template parameters v and polynomial in (n, x).
// `order` is (v, n, x).
struct ScheduleTemplate {
  VarOrder v_order;
  VarOrder order;
  std::size_t num_params = 0;  // n
  std::vector<Polynomial> components;

  // M at a concrete v, over (n, x).
  std::vector<Polynomial> instantiate(const std::vector<Rational>& v) const;
  // Explicit schedule components (no template parameters).
  static ScheduleTemplate fixed(const PerfectNest& nest, const std::vector<Polynomial>& m);
};

// M_j = sum over monomials x^a, deg a <= degree, of v{j}_{t} x^a. t = 0 is
// the constant term (when `constant`); with include_params the monomials
// range over (n, x).
ScheduleTemplate default_template(const PerfectNest& nest, unsigned degree, bool include_params = false,
                                  bool constant = true);

// forall (n, x', x'') in the union of the DS: M_i(x') = M_i(x'') for i < k
// and M_k(x') < M_k(x''). Everything is over (v, n, x', x'').
struct ValidityFormula {
  VarOrder order;
  std::size_t num_v = 0;
  std::size_t level = 1;
  std::vector<BasicSystem> domain;  // disjuncts of the DS union
  SemiAlgebraicSystem matrix;
};

ValidityFormula validity_formula(const std::vector<DependenceEdge>& edges, const ScheduleTemplate& m,
                                 std::size_t k);

struct ValidityRegion {
  SemiAlgebraicSystem system;  // over v
  std::optional<std::vector<Rational>> witness;
  // Rational sample points of the cells making up the region.
  std::vector<std::vector<Rational>> samples;
  bool empty() const { return system.is_syntactically_empty(); }
};

struct QeOptions {
  CadOptions cad;
};

ValidityRegion qe_forall(const ValidityFormula& f, const QeOptions& opts = {});

struct ParallelismResult {
  std::size_t level = 0;  // 0 when no level works
  ValidityRegion region;
};

// Largest k from s down to 1 with nonempty E_V.
ParallelismResult maximize_parallelism(const std::vector<DependenceEdge>& edges, const ScheduleTemplate& m,
                                       const QeOptions& opts = {});

// Does some M_j not depend on x at v?
bool degenerate(const ScheduleTemplate& m, const std::vector<Rational>& v);
// Is det(dM/dx) identically zero at v?
bool singular(const ScheduleTemplate& m, const std::vector<Rational>& v);

// Integer points of [-3, 3]^m inside Z(E_V), ordered by max-norm, then
// lexicographically with coordinate values ordered 0, 1, -1, 2, -2, 3, -3.
// Coordinates of v that only multiply x-free monomials are fixed to 0.
// With `nondegenerate`, degenerate points are skipped.
std::vector<std::vector<Rational>> integer_candidates(const ValidityRegion& region, const ScheduleTemplate& m,
                                                      bool nondegenerate, std::size_t limit);

// A point of Z(E_V): the first integer candidate when prefer_integer,
// otherwise (or if none) the region's witness. NoSchedule when empty.
std::vector<Rational> pick_schedule(const ValidityRegion& region, const ScheduleTemplate& m, bool prefer_integer,
                                    bool nondegenerate = false);

}  // namespace salp
