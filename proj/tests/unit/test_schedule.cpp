// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/error.hpp"
#include "salp/schedule.hpp"
#include "support.hpp"

using namespace salp;

namespace {

// Brute-force validity of M(v) on the first `level` components, n = 1..4.
bool oracle_valid(const PerfectNest& nest, const ScheduleTemplate& tpl, const std::vector<Rational>& v,
                  std::size_t level) {
  auto m = tpl.instantiate(v);
  m.resize(level);
  for (int n = 1; n <= 4; ++n) {
    auto pairs = dependences_bruteforce(nest, {{"n", n}}, 32);
    if (!schedule_valid(pairs, m, nest, {{"n", n}}).ok) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("schedule") {
  TEST_CASE("template naming") {
    PerfectNest nest = test::fixture("square");
    ScheduleTemplate t = default_template(nest, 1);
    CHECK(t.v_order.names() == std::vector<std::string>{"v1_0", "v1_1", "v1_2", "v2_0", "v2_1", "v2_2"});
    CHECK(t.components[0].to_string() == "v1_1*i + v1_2*j + v1_0");
    ScheduleTemplate s = default_template(test::fixture("shift"), 1, false, false);
    CHECK(s.v_order.names() == std::vector<std::string>{"v1_1"});
    CHECK(s.components[0].to_string() == "v1_1*i");
    ScheduleTemplate q = default_template(test::fixture("shift"), 2, true);
    CHECK(q.v_order.size() == 6);  // 1, n, i, n^2, n*i, i^2
  }

  TEST_CASE("instantiate") {
    PerfectNest nest = test::fixture("square");
    ScheduleTemplate t = default_template(nest, 1);
    auto m = t.instantiate({0, 0, 1, 0, 1, 0});
    CHECK(m[0] == test::P("j", nest.domain_order()));
    CHECK(m[1] == test::P("i", nest.domain_order()));
  }

  TEST_CASE("shift without a constant: E_V is v > 0") {
    PerfectNest nest = test::fixture("shift");
    ScheduleTemplate t = default_template(nest, 1, false, false);
    ParallelismResult r = maximize_parallelism(build_edges(nest), t);
    CHECK(r.level == 1);
    for (int v = -3; v <= 3; ++v) CHECK(holds_at(r.region.system, {Rational(v)}) == (v > 0));
    auto c = integer_candidates(r.region, t, false, 10);
    CHECK(c == std::vector<std::vector<Rational>>{{1}, {2}, {3}});
    CHECK(holds_at(r.region.system, {Rational(1, 7)}));
  }

  TEST_CASE("square: interchange keeps the outer loop parallel") {
    PerfectNest nest = test::fixture("square");
    ScheduleTemplate t = default_template(nest, 1);
    ParallelismResult r = maximize_parallelism(build_edges(nest), t);
    CHECK(r.level == 2);
    auto v = pick_schedule(r.region, t, true, true);
    auto m = t.instantiate(v);
    CHECK(m[0].to_string() == "j");
    CHECK(m[1].to_string() == "i");
  }

  TEST_CASE("skew: level 2 only has degenerate points") {
    PerfectNest nest = test::fixture("skew");
    ScheduleTemplate t = default_template(nest, 1);
    auto edges = build_edges(nest);
    ParallelismResult r = maximize_parallelism(edges, t);
    CHECK(r.level == 2);
    CHECK_THROWS_AS(pick_schedule(r.region, t, true, true), Error);
    ValidityRegion r1 = qe_forall(validity_formula(edges, t, 1));
    auto c = integer_candidates(r1, t, true, 1);
    REQUIRE(c.size() == 1);
    auto m = t.instantiate(c[0]);
    CHECK(m[0].to_string() == "i + j");
  }

  TEST_CASE("row broadcast has no schedule") {
    PerfectNest nest = test::fixture("row_broadcast");
    ScheduleTemplate t = default_template(nest, 1);
    ParallelismResult r = maximize_parallelism(build_edges(nest), t);
    CHECK(r.level == 0);
    CHECK(r.region.empty());
    CHECK_THROWS_AS(pick_schedule(r.region, t, true), Error);
  }

  TEST_CASE("no dependences: everything is valid") {
    PerfectNest nest = test::fixture("nodep");
    ScheduleTemplate t = default_template(nest, 1);
    ParallelismResult r = maximize_parallelism(build_edges(nest), t);
    CHECK(r.region.system.is_true());
    CHECK(pick_schedule(r.region, t, true) == std::vector<Rational>{0, 0});
    CHECK(pick_schedule(r.region, t, true, true) == std::vector<Rational>{0, 1});
  }

  TEST_CASE("degenerate and singular") {
    PerfectNest nest = test::fixture("square");
    ScheduleTemplate t = default_template(nest, 1);
    CHECK(degenerate(t, {5, 0, 0, 0, 1, 0}));
    CHECK(!degenerate(t, {0, 1, 1, 0, 1, 1}));
    CHECK(singular(t, {0, 1, 1, 0, 1, 1}));
    CHECK(!singular(t, {0, 1, 1, 0, 0, 1}));
  }

  TEST_CASE("points of E_V are valid schedules") {
    for (const char* name : {"shift", "parity", "square_index", "triangular", "square", "skew", "scalar",
                             "multi_read", "quadratic_bound", "reduction"}) {
      CAPTURE(name);
      PerfectNest nest = test::fixture(name);
      ScheduleTemplate t = default_template(nest, 1);
      ParallelismResult r = maximize_parallelism(build_edges(nest), t);
      REQUIRE(!r.region.empty());
      std::vector<std::vector<Rational>> pts = integer_candidates(r.region, t, false, 6);
      if (r.region.witness) pts.push_back(*r.region.witness);
      for (const auto& v : r.region.samples) pts.push_back(v);
      for (const auto& v : pts) CHECK(oracle_valid(nest, t, v, r.level));
    }
  }

  TEST_CASE("E_V agrees with the oracle on one-dimensional grids") {
    // Real validity implies integer validity; for these nests the converse
    // also holds on the grid.
    for (const char* name : {"shift", "scalar", "multi_read", "square_index"}) {
      CAPTURE(name);
      PerfectNest nest = test::fixture(name);
      ScheduleTemplate t = default_template(nest, 1);
      ValidityRegion r = qe_forall(validity_formula(build_edges(nest), t, 1));
      for (int c = -2; c <= 2; ++c) {
        for (int a = -3; a <= 3; ++a) {
          std::vector<Rational> v{c, a};
          CHECK(holds_at(r.system, v) == oracle_valid(nest, t, v, 1));
        }
      }
    }
  }

  TEST_CASE("formula shape") {
    PerfectNest nest = test::fixture("shift");
    ScheduleTemplate t = default_template(nest, 1);
    ValidityFormula f = validity_formula(build_edges(nest), t, 1);
    CHECK(f.num_v == 2);
    CHECK(f.order.size() == 5);
    CHECK(f.domain.size() == 1);  // only the RAW edge is nonempty
    CHECK_THROWS_AS(validity_formula(build_edges(nest), t, 2), Error);
  }
}
