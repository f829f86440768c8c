// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "doctest.h"
#include "salp/sas.hpp"
#include "support.hpp"

using namespace salp;
using salp::test::P;

namespace {

std::vector<std::vector<Rational>> grid2(int lo, int hi) {
  std::vector<std::vector<Rational>> out;
  for (int a = lo; a <= hi; ++a) {
    for (int b = lo; b <= hi; ++b) out.push_back({ratio(a, 2), ratio(b, 2)});
  }
  return out;
}

}  // namespace

TEST_SUITE("sas") {
  TEST_CASE("parse and membership") {
    VarOrder o({"x", "y"});
    auto s = parse_sas("x > 0 && y <= x || x = 0", o);
    CHECK(s.disjuncts().size() == 2);
    CHECK(holds_at(s, {Rational(1), Rational(1)}));
    CHECK(!holds_at(s, {Rational(1), Rational(2)}));
    CHECK(holds_at(s, {Rational(0), Rational(5)}));
    CHECK(!holds_at(s, {Rational(-1), Rational(-5)}));
  }

  TEST_CASE("masks on the same polynomial intersect") {
    VarOrder o({"x"});
    BasicSystem b(o);
    b.add(P("x", o), Rel::GE0);
    b.add(P("x", o), Rel::NE0);
    CHECK(b.size() == 1);
    CHECK(b.masks().begin()->second == kSignPos);
    b.add(P("x", o), Rel::LT0);
    CHECK(b.is_false());
  }

  TEST_CASE("constants fold") {
    VarOrder o({"x"});
    BasicSystem b(o);
    b.add(P("3", o), Rel::GT0);
    CHECK(b.is_true());
    b.add(P("-1", o), Rel::GE0);
    CHECK(b.is_false());
  }

  TEST_CASE("negation, conjunction and disjunction agree with pointwise logic") {
    VarOrder o({"x", "y"});
    std::mt19937 rng(5);
    const char* rels[] = {" = 0", " > 0", " < 0", " >= 0", " <= 0", " != 0"};
    auto random_sys = [&]() {
      std::string text;
      for (int d = 0; d < 2; ++d) {
        if (d) text += " || ";
        for (int c = 0; c < 2; ++c) {
          if (c) text += " && ";
          text += "(" + salp::test::random_poly(rng, o, 2, 2, 3).to_string() + ")" + rels[rng() % 6];
        }
      }
      return parse_sas(text, o);
    };
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_sys(), b = random_sys();
      auto na = negate(a), ab = conj(a, b), aob = disj(a, b);
      for (const auto& pt : grid2(-4, 4)) {
        bool ha = holds_at(a, pt), hb = holds_at(b, pt);
        CHECK(holds_at(na, pt) == !ha);
        CHECK(holds_at(ab, pt) == (ha && hb));
        CHECK(holds_at(aob, pt) == (ha || hb));
      }
    }
  }

  TEST_CASE("printing round-trips") {
    VarOrder o({"n", "i"});
    auto s = parse_sas("i - n < 0 && i >= 0 || n = 2", o);
    CHECK(parse_sas(s.to_string(), o) == s);
  }

  TEST_CASE("specialize substitutes a prefix") {
    VarOrder o({"n", "i"});
    auto s = parse_sas("i <= n && i >= 1", o);
    auto t = specialize(s, std::vector<Rational>{Rational(3)});
    CHECK(holds_at(t, {Rational(3), Rational(3)}));
    CHECK(!holds_at(t, {Rational(3), Rational(4)}));
  }
}
