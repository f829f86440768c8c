// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <gmpxx.h>

#include <string>

namespace salp {

using Integer = mpz_class;
using Rational = mpq_class;  // always kept canonical (mpq_canonicalize)

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);
bool is_integer(const Rational& r);

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);
// Accepts "a" or "a/b" with optional leading '-'.
Rational parse_rational(const std::string& text);

// Rational with the smallest denominator (then smallest magnitude numerator)
// strictly inside (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

// n/d in lowest terms; mpq_class(n, d) does not reduce.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational abs_of(const Rational& r);
Rational pow_of(const Rational& r, unsigned k);

}  // namespace salp
