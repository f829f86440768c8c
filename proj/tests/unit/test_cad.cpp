// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/cad.hpp"
#include "salp/error.hpp"
#include "support.hpp"

using namespace salp;
using salp::test::P;

TEST_SUITE("cad") {
  TEST_CASE("unit circle") {
    VarOrder o({"x", "y"});
    CadTree t = build_cad({P("x^2 + y^2 - 1", o)}, o);
    CHECK(t.num_cells() == 13);
    CHECK(t.stack_sizes(0) == std::vector<std::size_t>{5});
    CHECK(t.stack_sizes(1) == std::vector<std::size_t>{1, 3, 5, 3, 1});
  }

  TEST_CASE("one variable") {
    VarOrder o({"x"});
    CadTree t = build_cad({P("x^2 - 2", o), P("x", o)}, o);
    CHECK(t.num_cells() == 7);
    auto cells = t.cells();
    int sections = 0;
    for (const auto& c : cells) sections += c.dimension() == 0;
    CHECK(sections == 3);
  }

  TEST_CASE("cells are ordered and signs match the samples") {
    VarOrder o({"x", "y"});
    std::vector<Polynomial> in = {P("y - x^2", o), P("y + x - 1", o)};
    CadTree t = build_cad(in, o);
    auto cells = t.cells();
    for (std::size_t i = 1; i < cells.size(); ++i) CHECK(cell_compare(cells[i - 1], cells[i]) < 0);
    for (const auto& c : cells) {
      for (std::size_t k = 0; k < in.size(); ++k) CHECK(c.signs[k] == sign_at(in[k], c.sample));
    }
  }

  TEST_CASE("random sets: every probe is in exactly one leaf") {
    std::mt19937 rng(2026);
    VarOrder o({"x", "y"});
    std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Polynomial> in;
      for (int k = 0; k < 2; ++k) {
        Polynomial p = salp::test::random_poly(rng, o, 3, 3, 3);
        if (!p.is_constant()) in.push_back(p);
      }
      if (in.empty()) continue;
      CadTree t = build_cad(in, o);
      auto leaves = t.nodes_at(2);
      for (int probe = 0; probe < 40; ++probe) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        int hits = 0;
        for (const auto& [path, node] : leaves) hits += cell_contains(t, path, {a, b});
        CHECK(hits == 1);
        auto where = locate(t, SamplePoint{RealAlgebraicNumber(a), RealAlgebraicNumber(b)});
        REQUIRE(where.has_value());
        CHECK(cell_contains(t, *where, {a, b}));
      }
    }
  }

  TEST_CASE("partial CAD keeps only satisfying cells") {
    VarOrder o({"x", "y"});
    auto s = parse_sas("x^2 + y^2 - 1 < 0 && y > 0", o);
    CadTree t = CadBuilder(o, s.polynomials()).build_partial(s);
    for (const auto& c : t.cells()) CHECK(holds_at(s, c.sample));
    CHECK(!t.cells().empty());
  }

  TEST_CASE("satisfiability") {
    VarOrder o({"x", "y", "z"});
    CHECK(!is_empty(parse_sas("x^2 + y^2 < 1 && z = x + y", o)));
    CHECK(is_empty(parse_sas("x^2 + y^2 < 0", o)));
    CHECK(is_empty(parse_sas("2*x = 2*y + 1 && x - y < 0", o)));
    CHECK(!is_empty(parse_sas("x*y = 1 && x > 0 && y > 0 && z < x", o)));
  }

  TEST_CASE("linear elimination keeps protected variables") {
    VarOrder o({"v", "x", "y"});
    BasicSystem b(o);
    b.add(P("y - x - 1", o), Rel::EQ0);
    b.add(P("v*y - x", o), Rel::GT0);
    BasicSystem e = eliminate_linear(b, {false, true, true});
    for (const auto& [p, m] : e.masks()) CHECK(p.depends_on(0));
  }

  TEST_CASE("describe is exact on derivative-closed levels") {
    VarOrder o({"x", "y"});
    CadOptions opts;
    opts.derivative_closed_levels = 1;
    CadTree t = build_cad({P("x^2 + y^2 - 1", o)}, o, opts);
    for (const auto& [path, node] : t.nodes_at(1)) {
      BasicSystem d = t.describe(path);
      for (int k = -12; k <= 12; ++k) {
        std::vector<Rational> pt{ratio(k, 4)};
        CHECK(holds_at(d, SamplePoint{RealAlgebraicNumber(pt[0])}) == cell_contains(t, path, pt));
      }
    }
  }

  TEST_CASE("budget") {
    VarOrder o({"x", "y", "z"});
    CadOptions opts;
    opts.max_projection = 2;
    CHECK_THROWS_AS(build_cad({P("x^2 + y^2 + z^2 - 1", o), P("x*y*z - 1", o)}, o, opts), Error);
  }
}
