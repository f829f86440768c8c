// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/error.hpp"
#include "salp/transform.hpp"
#include "support.hpp"

using namespace salp;

namespace {

TransformResult run(const PerfectNest& nest, const std::vector<std::string>& m,
                    std::optional<std::size_t> level = std::nullopt) {
  std::vector<Polynomial> comps;
  for (const auto& c : m) comps.push_back(test::P(c, nest.domain_order()));
  TransformOptions opts;
  opts.level = level;
  return transform(nest, ScheduleTemplate::fixed(nest, comps), {}, opts);
}

bool same_arrays(const PerfectNest& nest, const LoopProgram& prog) {
  for (int n = 1; n <= 4; ++n) {
    auto a = interpret(from_nest(nest), {{"n", n}}, {});
    auto b = interpret(prog, {{"n", n}}, {});
    if (a.arrays != b.arrays || !b.errors.empty()) return false;
  }
  return true;
}

void collect_parallel(const std::vector<LoopNode>& ns, std::vector<bool>& out) {
  for (const auto& n : ns) {
    out.push_back(n.loop.parallel);
    collect_parallel(n.children, out);
  }
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("E_T") {
    PerfectNest nest = test::fixture("shift");
    ScheduleTemplate t = default_template(nest, 1, false, false);
    ValidityRegion ev;
    ev.system = parse_sas("v1_1 > 0", t.v_order);
    SemiAlgebraicSystem et = build_et(nest, t, ev);
    CHECK(et.order().names() == std::vector<std::string>{"v1_1", "n", "y1", "i"});
    // (v, n, y, i) = (2, 3, 4, 2) lies on y = v i inside the domain
    CHECK(holds_at(et, {Rational(2), Rational(3), Rational(4), Rational(2)}));
    CHECK(!holds_at(et, {Rational(2), Rational(3), Rational(5), Rational(2)}));
    CHECK(!holds_at(et, {Rational(-2), Rational(3), Rational(-4), Rational(2)}));
  }

  TEST_CASE("identity") {
    PerfectNest nest = test::fixture("shift");
    TransformResult r = run(nest, {"i"});
    std::string text = emit(r, EmitFormat::Dsl);
    CHECK(text.find("stmt: A[y1] = f(A[y1 - 1]);") != std::string::npos);
    CHECK(print_program(parse_program(text)) == text);
    CHECK(same_arrays(nest, r.program));
    CHECK(check_integer_validity(nest, r, {1, 2, 3, 4}, 32).ok);
  }

  TEST_CASE("interchange") {
    PerfectNest nest = test::fixture("square");
    TransformResult r = run(nest, {"j", "i"}, 2);
    std::string text = emit(r, EmitFormat::Dsl);
    CHECK(text.find("stmt: A[y2][y1] = f(A[y2 - 1][y1]);") != std::string::npos);
    // Boundary cells may pin x to a constant; the interior one inverts.
    bool interior = false;
    for (const auto& xi : r.xi) {
      REQUIRE(xi.size() == 2);
      CHECK(xi[0].kind == Bound::Poly);
      CHECK(xi[1].kind == Bound::Poly);
      interior = interior || (xi[0].poly.to_string() == "y2" && xi[1].poly.to_string() == "y1");
    }
    CHECK(interior);
    CHECK(same_arrays(nest, r.program));
    auto rep = check_integer_validity(nest, r, {1, 2, 3, 4}, 32);
    CHECK(rep.ok);
    CHECK(rep.integer_coefficients);
    CHECK(same_arrays(nest, parse_program(text)));
  }

  TEST_CASE("skew") {
    PerfectNest nest = test::fixture("square");
    TransformResult r = run(nest, {"i + j", "j"}, 1);
    CHECK(emit(r, EmitFormat::Dsl).find("let i = y1 - y2;") != std::string::npos);
    CHECK(same_arrays(nest, r.program));
    CHECK(check_integer_validity(nest, r, {1, 2, 3, 4}, 32).ok);
  }

  TEST_CASE("root bounds survive interchange") {
    PerfectNest nest = test::fixture("quadratic_bound");
    TransformResult r = run(nest, {"j", "i"}, 2);
    CHECK(emit(r, EmitFormat::Dsl).find("root(") != std::string::npos);
    CHECK(same_arrays(nest, r.program));
    CHECK(check_integer_validity(nest, r, {1, 2, 3, 4}, 32).ok);
  }

  TEST_CASE("half-integer schedule fails integrality") {
    PerfectNest nest = test::fixture("shift");
    TransformResult r = run(nest, {"i/2"});
    auto rep = check_integer_validity(nest, r, {1, 2}, 32);
    CHECK(!rep.ok);
    CHECK(!rep.integer_coefficients);
    REQUIRE(!rep.failures.empty());
    CHECK(rep.failures[0].find("M(1, 1) = (1/2) is not integral") != std::string::npos);
    CHECK_THROWS_AS(require_integer_validity(nest, r, {1, 2}, 32), Error);
  }

  TEST_CASE("non-injective schedules are rejected") {
    PerfectNest nest = test::fixture("square");
    try {
      run(nest, {"i", "i"});
      FAIL("expected TransformFailed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TransformFailed);
      CHECK(std::string(e.what()).find("level j") != std::string::npos);
    }
  }

  TEST_CASE("parallel annotations") {
    std::vector<bool> flags;
    collect_parallel(run(test::fixture("nodep"), {"i"}, 0).program.regions[0].loops, flags);
    for (bool f : flags) CHECK(f);
    flags.clear();
    TransformResult r = run(test::fixture("square"), {"j", "i"}, 2);
    for (const auto& reg : r.program.regions) {
      for (const auto& outer : reg.loops) {
        CHECK(outer.loop.parallel);
        for (const auto& inner : outer.children) CHECK(!inner.loop.parallel);
      }
    }
  }

  TEST_CASE("json output") {
    TransformResult r = run(test::fixture("shift"), {"i"});
    CHECK(emit(r, EmitFormat::Json).find("\"regions\"") != std::string::npos);
  }

  TEST_CASE("name clashes get fresh y variables") {
    PerfectNest nest = single_nest(parse_program("param n: n >= 0;\nloop y1: 0..n;\nstmt: A[y1] = f(A[y1 - 1]);\n"));
    TransformResult r = run(nest, {"y1"});
    CHECK(r.y_names == std::vector<std::string>{"y1_"});
    CHECK(same_arrays(nest, r.program));
  }
}
