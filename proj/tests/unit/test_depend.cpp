// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <set>

#include "doctest.h"
#include "salp/depend.hpp"
#include "salp/error.hpp"
#include "support.hpp"

using namespace salp;

namespace {

std::set<std::pair<IterationPoint, IterationPoint>> oracle_pairs(const PerfectNest& nest, int n, std::size_t i) {
  std::set<std::pair<IterationPoint, IterationPoint>> out;
  for (const auto& p : dependences_bruteforce(nest, {{"n", n}}, 32)) {
    if (p.access_index == i) out.insert({p.src, p.dst});
  }
  return out;
}

}  // namespace

TEST_SUITE("depend") {
  TEST_CASE("shift") {
    PerfectNest nest = test::fixture("shift");
    auto edges = build_edges(nest);
    REQUIRE(edges.size() == 3);
    CHECK(edges[0].kind == DepKind::WAW);
    CHECK(*edges[0].empty_real);
    CHECK(edges[1].kind == DepKind::RAW);
    CHECK(!*edges[1].empty_real);
    CHECK(*edges[2].empty_real);  // a read of A[i-1] never precedes the write of it
    // n = 2, x' = 1, x'' = 2 is a witness
    CHECK(holds_at(edges[1].ds, {Rational(2), Rational(1), Rational(2)}));
  }

  TEST_CASE("parity: real but not integer") {
    PerfectNest nest = test::fixture("parity");
    SemiAlgebraicSystem ds = build_ds(nest, 1);
    CHECK(!is_empty_real(ds));
    CHECK(is_empty_real(build_ds(nest, 1, DepKind::RAW)));
    for (int n = 0; n <= 10; ++n) CHECK(is_empty_int_at(nest, ds, {{"n", n}}, 64));
  }

  TEST_CASE("self and nodep have no dependences") {
    for (const char* name : {"self", "nodep"}) {
      for (const auto& e : build_edges(test::fixture(name))) CHECK(*e.empty_real);
    }
  }

  TEST_CASE("reads of other arrays have no edge") {
    CHECK(build_edges(test::fixture("nodep")).size() == 1);
    CHECK_THROWS_AS(build_ds(test::fixture("nodep"), 1), Error);
  }

  TEST_CASE("integer points match the oracle on every fixture") {
    for (const char* name : {"shift", "parity", "square_index", "triangular", "square", "skew", "scalar", "nodep",
                             "quadratic_bound", "multi_read", "row_broadcast", "self", "reduction"}) {
      CAPTURE(name);
      PerfectNest nest = test::fixture(name);
      for (int n = 1; n <= 3; ++n) {
        for (std::size_t i = 0; i <= nest.stmt.reads.size(); ++i) {
          if (i > 0 && nest.stmt.reads[i - 1].array != nest.stmt.write.array) continue;
          auto pts = ds_integer_points(nest, build_ds(nest, i), {{"n", n}}, 32);
          std::set<std::pair<IterationPoint, IterationPoint>> got(pts.begin(), pts.end());
          CHECK(got == oracle_pairs(nest, n, i));
        }
      }
    }
  }

  TEST_CASE("real emptiness is implied by integer emptiness failing") {
    // A nonempty integer set at some n forces a nonempty real set.
    for (const char* name : {"square_index", "multi_read", "triangular"}) {
      PerfectNest nest = test::fixture(name);
      for (const auto& e : build_edges(nest)) {
        bool any = false;
        for (int n = 1; n <= 4; ++n) any = any || !is_empty_int_at(nest, e.ds, {{"n", n}}, 32);
        if (any) CHECK(!*e.empty_real);
      }
    }
  }

  TEST_CASE("clipped domains are a budget error") {
    PerfectNest nest = test::fixture("square");
    CHECK_THROWS_AS(ds_integer_points(nest, build_ds(nest, 0), {{"n", 9}}, 4), Error);
  }

  TEST_CASE("graph over a program") {
    DependenceGraph g = build_graph(parse_program(test::fixture_text("multi_read")));
    CHECK(g.nodes.size() == 1);
    CHECK(g.edges.size() == 5);
  }
}
