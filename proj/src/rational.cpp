// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/rational.hpp"

#include "salp/error.hpp"

namespace salp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Structural: return "structural";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::Semantic: return "semantic";
    case ErrorCode::PrecisionExhausted: return "precision-exhausted";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::NoSchedule: return "no-schedule";
    case ErrorCode::TransformFailed: return "transform-failed";
    case ErrorCode::IntegerValidityFailed: return "integer-validity-failed";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Rational abs_of(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

Rational pow_of(const Rational& r, unsigned k) {
  Rational out = 1;
  Rational b = r;
  while (k) {
    if (k & 1u) out *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return out;
}

namespace {

// Simplest rational in the open interval (lo, hi) with 0 <= lo < hi.
Rational simplest_nonneg(Rational lo, Rational hi) {
  Integer fl = floor_of(lo);
  Integer cand = fl + 1;
  if (Rational(cand) < hi) return Rational(cand);
  // Both ends lie in [fl, fl+1]; no integer strictly inside.
  Rational a = lo - fl;
  Rational b = hi - fl;
  // a in [0,1), b in (a, 1]. Recurse on reciprocals (1/b, 1/a).
  if (sgn(a) == 0) {
    // Interval (0, b): the simplest is 1/k for the smallest k with 1/k < b.
    Rational inv = 1 / b;
    Integer k = floor_of(inv) + 1;
    return Rational(fl) + Rational(1, 1) / Rational(k);
  }
  Rational inner = simplest_nonneg(1 / b, 1 / a);
  return Rational(fl) + 1 / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "simplest_between: empty interval");
  if (sgn(lo) < 0 && sgn(hi) > 0) return 0;
  if (sgn(lo) >= 0) return simplest_nonneg(lo, hi);
  return -simplest_nonneg(-hi, -lo);
}

}  // namespace salp
