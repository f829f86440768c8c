// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/oracle.hpp"
#include "support.hpp"

using namespace salp;

TEST_SUITE("oracle") {
  TEST_CASE("domain enumeration") {
    CHECK(enumerate_domain(test::fixture("triangular"), {{"n", 3}}, 32).points.size() == 10);
    CHECK(enumerate_domain(test::fixture("square"), {{"n", 2}}, 32).points.size() == 9);
    // sum over i = 1..3 of (i^2 + 1)
    CHECK(enumerate_domain(test::fixture("quadratic_bound"), {{"n", 3}}, 32).points.size() == 17);
    CHECK(enumerate_domain(test::fixture("shift"), {{"n", 0}}, 32).points.empty());
    auto clipped = enumerate_domain(test::fixture("square"), {{"n", 10}}, 4);
    CHECK(clipped.truncated);
    CHECK(clipped.points.size() == 25);
  }

  TEST_CASE("points come out in lexicographic order") {
    auto pts = enumerate_domain(test::fixture("triangular"), {{"n", 4}}, 32).points;
    for (std::size_t k = 1; k < pts.size(); ++k) CHECK(lex_compare(pts[k - 1], pts[k]) < 0);
  }

  TEST_CASE("shift dependences") {
    auto pairs = dependences_bruteforce(test::fixture("shift"), {{"n", 3}}, 32);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].kind == DepKind::RAW);
    CHECK(pairs[0].src == IterationPoint{1});
    CHECK(pairs[0].dst == IterationPoint{2});
    CHECK(pairs[1].src == IterationPoint{2});
  }

  TEST_CASE("parity has no integer dependence") {
    for (int n = 0; n <= 10; ++n) CHECK(dependences_bruteforce(test::fixture("parity"), {{"n", n}}, 64).empty());
  }

  TEST_CASE("scalar: every pair conflicts three ways") {
    auto pairs = dependences_bruteforce(test::fixture("scalar"), {{"n", 3}}, 32);
    // 4 iterations, 6 ordered pairs, each WAW + RAW + WAR
    CHECK(pairs.size() == 18);
  }

  TEST_CASE("schedule validity") {
    PerfectNest nest = test::fixture("square");
    VarOrder o = nest.domain_order();
    auto pairs = dependences_bruteforce(nest, {{"n", 3}}, 32);
    CHECK(schedule_valid(pairs, {test::P("i", o), test::P("j", o)}, nest, {{"n", 3}}).ok);
    CHECK(schedule_valid(pairs, {test::P("j", o), test::P("i", o)}, nest, {{"n", 3}}).ok);
    auto bad = schedule_valid(pairs, {test::P("-i", o), test::P("j", o)}, nest, {{"n", 3}});
    CHECK(!bad.ok);
    CHECK(bad.violations.size() == pairs.size());
  }

  TEST_CASE("bijection check of the identity") {
    PerfectNest nest = test::fixture("triangular");
    VarOrder o = nest.domain_order();
    LoopProgram prog = parse_program(
        "param n: n >= 0;\nloop y1: 0..n;\nloop y2: 0..y1;\nlet i = y1;\nlet j = y2;\n"
        "stmt: A[i][j] = f(A[i][j - 1]);\n");
    auto rep = check_bijection(nest, prog, {test::P("i", o), test::P("j", o)}, {{"n", 3}}, 32);
    CHECK(rep.failures.empty());
    CHECK(rep.domain_points == 10);
    CHECK(rep.program_points == 10);
  }

  TEST_CASE("bijection check catches a wrong schedule") {
    PerfectNest nest = test::fixture("square");
    VarOrder o = nest.domain_order();
    auto rep = check_bijection(nest, from_nest(nest), {test::P("i + j", o), test::P("j", o)}, {{"n", 2}}, 32);
    CHECK(!rep.ok);
  }
}
