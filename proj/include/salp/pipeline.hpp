// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "salp/config.hpp"
#include "salp/transform.hpp"

namespace salp {

// Version of every JSON report below.
inline constexpr int kSchemaVersion = 1;

// A report plus whether it is an analysis-negative result (no schedule).
struct Report {
  std::string json;
  bool negative = false;
};

std::string canonical_program(const LoopProgram& prog, bool json);

// Dependence graph: edges with their sets, real verdicts and integer
// verdicts at the configured n values.
Report analyze_report(const LoopProgram& prog, const Config& cfg);

// Maximal parallelism level, E_V, witness and a picked schedule.
Report schedule_report(const PerfectNest& nest, const Config& cfg);

struct AutoSchedule {
  ScheduleTemplate tpl;
  std::size_t level = 0;  // 0 when the nest has no dependences
  TransformResult result;
  IntegerValidityReport validity;
};

// Tries nondegenerate integer points of E_V from the highest level down and
// keeps the first whose transform passes the integer checks. NoSchedule
// when none does.
AutoSchedule auto_transform(const PerfectNest& nest, const Config& cfg);

// Explicit schedule text "e1, e2, ..." over the nest's variables, or auto
// when empty.
Report transform_report(const PerfectNest& nest, const std::string& schedule, bool dump_cad, const Config& cfg);

// Oracle cross-checks for one program text; `name` labels the entry.
std::string verify_entry(const std::string& name, const std::string& text, const Config& cfg);
// One entry per file, in the given order.
Report verify_report(const std::vector<std::pair<std::string, std::string>>& files, const Config& cfg);

}  // namespace salp
