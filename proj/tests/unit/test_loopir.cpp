// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/error.hpp"
#include "salp/oracle.hpp"
#include "support.hpp"

using namespace salp;

namespace {

const char* kFixtures[] = {"shift",  "parity",          "square_index", "triangular",    "square",
                           "skew",   "scalar",          "nodep",        "quadratic_bound", "multi_read",
                           "row_broadcast", "self", "reduction"};

std::vector<std::vector<Integer>> trace_points(const InterpretResult& r) {
  std::vector<std::vector<Integer>> out;
  for (const auto& e : r.trace) out.push_back(e.point);
  return out;
}

}  // namespace

TEST_SUITE("loopir") {
  TEST_CASE("fixtures print canonically") {
    for (const char* name : kFixtures) {
      CAPTURE(name);
      LoopProgram p = parse_program(test::fixture_text(name));
      std::string once = print_program(p);
      CHECK(print_program(parse_program(once)) == once);
      CHECK(nests(p).size() == 1);
    }
  }

  TEST_CASE("shift prints as written") {
    std::string text = print_program(parse_program(test::fixture_text("shift")));
    CHECK(text == "param n: n - 1 >= 0;\nloop i: 1..n;\nstmt: A[i] = f(A[i - 1]);\n");
  }

  TEST_CASE("positions in errors") {
    try {
      parse_program("param n: n >= 0;\nloop i: 0..m;\nstmt: A[i] = f(A[i]);\n");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).rfind("2:", 0) == 0);
      CHECK(std::string(e.what()).find("unknown variable 'm'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("param n: n >= 0;\nloop i 0..n;\n"), SyntaxError);
    CHECK_THROWS_AS(parse_program("param n: n >= 0;\nloop i: 0..n;\nloop i: 0..n;\nstmt: A[i] = f(A[i]);"),
                    Error);
    CHECK_THROWS_AS(parse_program("param n: n >= 0;\nloop i: 0..n;\nstmt: A[i] = f(A[i][i]);"), Error);
  }

  TEST_CASE("extended syntax") {
    const char* text =
        "param n: n >= 1;\n"
        "loop i: 0..n {\n"
        "  parallel loop j: root(j^2 - i, 1)..0 open left;\n"
        "  let k = i + j;\n"
        "  stmt: A[k] += g(B[j]);\n"
        "}\n"
        "loop i: -inf..+inf open both;\n"
        "stmt: C[i] max= h(C[i]);\n";
    LoopProgram p = parse_program(text);
    CHECK(nests(p).size() == 2);
    std::string once = print_program(p);
    CHECK(print_program(parse_program(once)) == once);
    CHECK(once.find("root(j^2 - i, 1)") != std::string::npos);
    CHECK_THROWS_AS(domain_system(nests(p)[0]), Error);
  }

  TEST_CASE("interpretation of the shift loop") {
    LoopProgram p = parse_program(test::fixture_text("shift"));
    auto r = interpret(p, {{"n", 3}}, {});
    REQUIRE(r.trace.size() == 3);
    CHECK(r.errors.empty());
    CHECK(trace_points(r) == std::vector<std::vector<Integer>>{{1}, {2}, {3}});
    CHECK(r.trace[1].write == Address{"A", {2}});
    CHECK(r.trace[1].reads == std::vector<Address>{{"A", {1}}});
    // A[i] = f(A[i-1]) chains every value through the previous one.
    Value a0 = 0;
    Value a1 = hash_combinator("f", {a0});
    CHECK(r.arrays["A"][{1}] == a1);
    CHECK(r.arrays["A"][{2}] == hash_combinator("f", {a1}));
  }

  TEST_CASE("interpretation skips regions whose constraint fails") {
    LoopProgram p = parse_program(test::fixture_text("shift"));
    CHECK(interpret(p, {{"n", 0}}, {}).trace.empty());
  }

  TEST_CASE("root bounds and open ends") {
    LoopProgram p = parse_program(
        "param n: n >= 0;\nloop i: 0..n;\nloop j: root(j^2 - i, 2)..n open left;\nstmt: A[i][j] = f(A[i][j]);\n");
    auto r = interpret(p, {{"n", 4}}, {});
    // j ranges over (sqrt i, 4]; at i = 0 the second root does not exist
    std::size_t expect = 0;
    for (int i = 1; i <= 4; ++i) {
      for (int j = 0; j <= 4; ++j) expect += j * j > i;
    }
    CHECK(r.trace.size() == expect);
  }

  TEST_CASE("non-integral lets are errors") {
    LoopProgram p = parse_program("param n: n >= 0;\nloop i: 0..n;\nlet k = i/2;\nstmt: A[k] = f(A[k]);\n");
    InterpretOptions opts;
    opts.abort_on_error = false;
    auto r = interpret(p, {{"n", 3}}, {}, opts);
    CHECK(r.errors.size() == 2);
    CHECK(r.trace.size() == 2);
  }

  TEST_CASE("unbounded loops are clipped and flagged") {
    LoopProgram p = parse_program("param n: n >= 0;\nloop i: 0..+inf;\nstmt: A[i] = f(A[i]);\n");
    InterpretOptions opts;
    opts.bound = 5;
    auto r = interpret(p, {{"n", 1}}, {}, opts);
    CHECK(r.truncated);
    CHECK(r.trace.size() == 6);
  }

  TEST_CASE("cad_to_loops reproduces the domain") {
    for (const char* name : {"triangular", "square", "quadratic_bound", "shift"}) {
      CAPTURE(name);
      PerfectNest nest = test::fixture(name);
      VarOrder dom = nest.domain_order();
      SemiAlgebraicSystem e;
      if (std::string(name) == "quadratic_bound") {
        e = parse_sas("n >= 1 && i >= 1 && i <= n && j >= 0 && j <= i^2", dom);
      } else {
        e = domain_system(nest);
      }
      CadOptions opts;
      opts.derivative_closed_levels = nest.num_params;
      CadTree t = CadBuilder(dom, e.polynomials(), opts).build_partial(e);
      Body body{{}, nest.stmt};
      LoopProgram prog = cad_to_loops(t, nest.num_params, body);
      for (int n = 0; n <= 4; ++n) {
        auto got = trace_points(interpret(prog, {{"n", n}}, {}));
        auto want = enumerate_domain(nest, {{"n", n}}, 32).points;
        CHECK(got == want);
      }
    }
  }

  TEST_CASE("json export") {
    std::string j = program_to_json(parse_program(test::fixture_text("square")));
    CHECK(j.find("\"var\"") != std::string::npos);
    CHECK(j.find("A") != std::string::npos);
  }
}
