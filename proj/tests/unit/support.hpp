// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "salp/loopir.hpp"

namespace salp::test {

inline std::string fixture_text(const std::string& name) {
  std::ifstream in(std::string(SALP_FIXTURE_DIR) + "/" + name + ".loop");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PerfectNest fixture(const std::string& name) { return single_nest(parse_program(fixture_text(name))); }

inline Polynomial P(const std::string& text, const VarOrder& order) { return parse_polynomial(text, order); }

// Random polynomial with integer coefficients in [-c, c].
inline Polynomial random_poly(std::mt19937& rng, const VarOrder& order, unsigned degree, int c, int terms) {
  std::uniform_int_distribution<int> coef(-c, c);
  std::uniform_int_distribution<unsigned> deg(0, degree);
  Polynomial p(order);
  for (int t = 0; t < terms; ++t) {
    Exponents e(order.size(), 0);
    unsigned left = degree;
    for (auto& x : e) {
      x = std::min(left, deg(rng));
      left -= x;
    }
    p += Polynomial::monomial(order, e, coef(rng));
  }
  return p;
}

}  // namespace salp::test
