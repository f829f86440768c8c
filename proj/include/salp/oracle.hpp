// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

// Brute-force ground truth at fixed parameters. Nothing here uses CAD or the
// scheduler; loop bounds and accesses are evaluated directly.

#include <map>
#include <string>
#include <vector>

#include "salp/loopir.hpp"

namespace salp {

enum class DepKind { RAW, WAW, WAR };
const char* dep_kind_name(DepKind k);

using ParamValues = std::map<std::string, Integer>;
using IterationPoint = std::vector<Integer>;

struct DomainEnumeration {
  std::vector<IterationPoint> points;  // lexicographic order
  bool truncated = false;              // some range was clipped to [-bound, bound]
};

DomainEnumeration enumerate_domain(const PerfectNest& nest, const ParamValues& n, const Integer& bound);

struct DependencePair {
  DepKind kind = DepKind::RAW;
  std::size_t access_index = 0;  // 0 for WAW, read index (1-based) otherwise
  IterationPoint src, dst;       // src precedes dst
  std::string array;
  std::vector<Rational> index;

  bool operator==(const DependencePair& o) const;
  bool operator<(const DependencePair& o) const;
};

// All conflicting instance pairs, sorted by (src, dst, kind, access).
std::vector<DependencePair> dependences_bruteforce(const PerfectNest& nest, const ParamValues& n,
                                                   const Integer& bound);

struct ScheduleCheck {
  bool ok = true;
  std::vector<DependencePair> violations;
};

// M is over the nest's domain order (parameters, then loop variables).
ScheduleCheck schedule_valid(const std::vector<DependencePair>& pairs, const std::vector<Polynomial>& m,
                             const PerfectNest& nest, const ParamValues& n);

struct BijectionReport {
  bool ok = true;
  std::size_t domain_points = 0;
  std::size_t program_points = 0;
  bool truncated = false;
  std::vector<std::string> failures;  // first few only
};

// Checks that M maps D_z one-to-one onto the iterations the transformed
// program executes, that the program's lets invert M, that dependent pairs
// keep their order in the trace, and that the trace is lexicographic.
BijectionReport check_bijection(const PerfectNest& nest, const LoopProgram& transformed,
                                const std::vector<Polynomial>& m, const ParamValues& n, const Integer& bound);

// Lexicographic comparison of equal-length vectors.
template <class T>
int lex_compare(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

}  // namespace salp
