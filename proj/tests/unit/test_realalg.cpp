// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <algorithm>

#include "doctest.h"
#include "salp/realalg.hpp"
#include "support.hpp"

using namespace salp;
using salp::test::P;

TEST_SUITE("realalg") {
  TEST_CASE("sqrt 2") {
    VarOrder o({"x"});
    auto roots = isolate_roots(P("x^2 - 2", o));
    REQUIRE(roots.size() == 2);
    CHECK(compare(roots[1], Rational(7, 5)) > 0);
    CHECK(compare(roots[1], Rational(3, 2)) < 0);
    CHECK(compare(roots[0], roots[1]) < 0);
    CHECK(!roots[1].is_rational());
    CHECK(refine(roots[1], Rational(1, 100000000)).approx() == doctest::Approx(1.41421356).epsilon(1e-6));
  }

  TEST_CASE("rational roots come back exact") {
    VarOrder o({"x"});
    auto roots = isolate_roots(P("(2*x - 1)*(x + 3)*(x^2 + 1)", o));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].is_rational());
    CHECK(roots[0].rational_value() == -3);
    CHECK(roots[1].rational_value() == Rational(1, 2));
  }

  TEST_CASE("roots of random split polynomials") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 3);
    VarOrder o({"x"});
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Rational> want;
      Polynomial p = Polynomial::constant(o, 1);
      for (int k = 0; k < 1 + trial % 4; ++k) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        want.push_back(r);
        p *= Polynomial::variable(o, 0) - Polynomial::constant(o, r);
      }
      std::sort(want.begin(), want.end());
      want.erase(std::unique(want.begin(), want.end()), want.end());
      auto roots = isolate_roots(p);
      REQUIRE(roots.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) CHECK(compare(roots[i], want[i]) == 0);
    }
  }

  TEST_CASE("root count matches sign changes on a grid") {
    // Oracle: a squarefree polynomial with no root on the grid changes sign
    // once per root between grid points (roots are well separated here).
    VarOrder o({"x"});
    Polynomial p = P("x^3 - 3*x + 1", o);
    int changes = 0;
    Rational prev = p.evaluate(std::vector<Rational>{-3});
    for (int k = -29; k <= 30; ++k) {
      Rational v = p.evaluate(std::vector<Rational>{ratio(k, 10)});
      if (sign(v) != 0 && sign(v) != sign(prev)) ++changes;
      prev = v;
    }
    CHECK(isolate_roots(p).size() == static_cast<std::size_t>(changes));
  }

  TEST_CASE("sign at algebraic points") {
    VarOrder o({"x", "y"});
    auto r = isolate_roots(P("x^2 - 2", VarOrder({"x"})));
    SamplePoint pt{r[1]};
    CHECK(sign_at(P("x^2 - 2", o), pt) == 0);
    CHECK(sign_at(P("x - 1", o), pt) == 1);
    CHECK(sign_at(P("2*x - 3", o), pt) == -1);
    auto s = isolate_roots(P("y^2 - 3", VarOrder({"y"})));
    SamplePoint both{r[1], s[1]};
    CHECK(sign_at(P("x*y - 6", o), both) == -1);  // sqrt 6 < 6
    CHECK(sign_at(P("x^2*y^2 - 6", o), both) == 0);
  }

  TEST_CASE("refinement shrinks the interval") {
    auto r = isolate_roots(P("x^2 - 2", VarOrder({"x"})))[1];
    auto f = refine(r, Rational(1, 1000));
    CHECK(f.hi() - f.lo() <= Rational(1, 1000));
    CHECK(compare(f, r) == 0);
  }
}
