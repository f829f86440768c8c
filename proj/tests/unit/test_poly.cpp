// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/error.hpp"
#include "support.hpp"

using namespace salp;
using salp::test::P;

TEST_SUITE("poly") {
  TEST_CASE("parse and print") {
    VarOrder o({"x", "y"});
    CHECK(P("(x + 1)^2", o).to_string() == "x^2 + 2*x + 1");
    CHECK(P("3*x*y - y^2/2", o) == P("-1/2*y^2 + 3*y*x", o));
    CHECK(P("x - x", o).is_zero());
    CHECK_THROWS_AS(P("x +", o), SyntaxError);
    CHECK_THROWS_AS(P("z", o), Error);
  }

  TEST_CASE("degrees and main variable") {
    VarOrder o({"x", "y"});
    Polynomial p = P("x^3*y + y^2 + x", o);
    CHECK(p.degree(0) == 3);
    CHECK(p.degree(1) == 2);
    CHECK(p.main_var() == 1);
    CHECK(p.total_degree() == 4);
    CHECK(P("7", o).main_var() == -1);
  }

  TEST_CASE("substitution and embedding") {
    VarOrder o({"n", "i"});
    Polynomial p = P("i^2 - n", o);
    CHECK(p.substitute(1, P("n + 1", o)) == P("n^2 + n + 1", o));
    CHECK(p.evaluate(std::vector<Rational>{3, 2}) == 1);
    VarOrder wide({"i", "m", "n"});
    CHECK(p.embed(wide).to_string() == P("i^2 - n", wide).to_string());
  }

  TEST_CASE("resultant of a linear and a quadratic") {
    VarOrder o({"y", "x"});
    Polynomial r = resultant(P("x^2 - 2", o), P("x - y", o), 1);
    CHECK(r == P("y^2 - 2", o));
    // The discriminant convention recorded for the projection.
    VarOrder q({"b", "c", "x"});
    CHECK(resultant(P("x^2 + b*x + c", q), P("2*x + b", q), 2) == P("4*c - b^2", q));
  }

  TEST_CASE("resultant equals the product formula on random split polynomials") {
    // Oracle: res(prod (x - a_i), g) = prod g(a_i) for monic f.
    std::mt19937 rng(7);
    VarOrder o({"x"});
    std::uniform_int_distribution<int> root(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
      Polynomial f = Polynomial::constant(o, 1);
      std::vector<int> roots;
      int d = 1 + trial % 3;
      for (int k = 0; k < d; ++k) {
        roots.push_back(root(rng));
        f *= P("x - (" + std::to_string(roots.back()) + ")", o);
      }
      Polynomial g = salp::test::random_poly(rng, o, 3, 3, 4);
      if (g.degree(0) == 0) continue;
      Rational expect = 1;
      for (int a : roots) expect *= g.evaluate(std::vector<Rational>{a});
      CHECK(resultant(f, g, 0) == Polynomial::constant(o, expect));
    }
  }

  TEST_CASE("gcd and exact division properties") {
    std::mt19937 rng(11);
    VarOrder o({"x", "y"});
    for (int trial = 0; trial < 30; ++trial) {
      Polynomial a = salp::test::random_poly(rng, o, 2, 3, 3);
      Polynomial b = salp::test::random_poly(rng, o, 2, 3, 3);
      Polynomial c = salp::test::random_poly(rng, o, 2, 3, 2);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      CHECK(divide_exact(a * c, c) == a);
      Polynomial g = gcd(a * c, b * c);
      CHECK(try_divide(g, c).has_value());
      CHECK(try_divide(a * c, g).has_value());
      CHECK(try_divide(b * c, g).has_value());
    }
  }

  TEST_CASE("squarefree decomposition multiplies back") {
    VarOrder o({"y", "x"});
    Polynomial p = P("(x - 1)^3 * (x + y)^2 * (x^2 + 1)", o);
    auto parts = squarefree_decomposition(p, 1);
    Polynomial prod = Polynomial::constant(o, 1);
    for (const auto& [f, e] : parts) prod *= f.pow(e);
    CHECK(normalize(prod) == normalize(p));
    CHECK(normalize(squarefree_part(p, 1)) == normalize(P("(x - 1)*(x + y)*(x^2 + 1)", o)));
  }

  TEST_CASE("sturm chain of x^2") {
    VarOrder o({"x"});
    auto chain = sturm_sequence(P("x^2", o));
    REQUIRE(chain.size() == 2);
    CHECK(chain[1] == P("2*x", o));
  }

  TEST_CASE("determinant") {
    VarOrder o({"a", "b"});
    std::vector<std::vector<Polynomial>> m = {{P("a", o), P("b", o)}, {P("b", o), P("a", o)}};
    CHECK(determinant(m, o) == P("a^2 - b^2", o));
  }
}
