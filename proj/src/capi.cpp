// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/salp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "salp/error.hpp"
#include "salp/pipeline.hpp"

struct salp_program {
  salp::LoopProgram prog;
};

struct salp_config {
  salp::Config cfg;
};

namespace {

thread_local std::string g_last_error;

salp_status status_of(salp::ErrorCode c) {
  using salp::ErrorCode;
  switch (c) {
    case ErrorCode::Structural: return SALP_ERR_STRUCTURAL;
    case ErrorCode::Syntax: return SALP_ERR_SYNTAX;
    case ErrorCode::Semantic: return SALP_ERR_SEMANTIC;
    case ErrorCode::PrecisionExhausted: return SALP_ERR_PRECISION;
    case ErrorCode::Budget: return SALP_ERR_BUDGET;
    case ErrorCode::NoSchedule: return SALP_NO_SCHEDULE;
    case ErrorCode::TransformFailed: return SALP_ERR_TRANSFORM;
    case ErrorCode::IntegerValidityFailed: return SALP_ERR_INTEGER_VALIDITY;
    case ErrorCode::InvalidArgument: return SALP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return SALP_ERR_IO;
  }
  return SALP_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
salp_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const salp::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SALP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SALP_ERR_INTERNAL;
  }
}

salp_status bad_arg(const char* what) {
  g_last_error = what;
  return SALP_ERR_INVALID_ARGUMENT;
}

salp::Config config_or_default(const salp_config* cfg) { return cfg ? cfg->cfg : salp::default_config(); }

salp::PerfectNest only_nest(const salp_program* prog) { return salp::single_nest(prog->prog); }

}  // namespace

extern "C" {

const char* salp_status_name(salp_status s) {
  switch (s) {
    case SALP_OK: return "ok";
    case SALP_NO_SCHEDULE: return "no-schedule";
    case SALP_ERR_STRUCTURAL: return "structural";
    case SALP_ERR_SYNTAX: return "syntax";
    case SALP_ERR_SEMANTIC: return "semantic";
    case SALP_ERR_PRECISION: return "precision-exhausted";
    case SALP_ERR_BUDGET: return "budget";
    case SALP_ERR_TRANSFORM: return "transform-failed";
    case SALP_ERR_INTEGER_VALIDITY: return "integer-validity-failed";
    case SALP_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SALP_ERR_IO: return "io";
    case SALP_ERR_INTERNAL: return "internal";
    case SALP_CHECK_FAILED: return "check-failed";
  }
  return "unknown";
}

const char* salp_last_error(void) { return g_last_error.c_str(); }

void salp_string_free(char* s) { std::free(s); }

salp_status salp_config_load(const char* path, salp_config** out) {
  if (!out) return bad_arg("salp_config_load: out is null");
  *out = nullptr;
  return guarded([&] {
    auto* c = new salp_config{path ? salp::load_config(path) : salp::default_config()};
    *out = c;
    return SALP_OK;
  });
}

salp_status salp_config_set_json(salp_config* cfg, const char* json) {
  if (!cfg || !json) return bad_arg("salp_config_set_json: null argument");
  return guarded([&] {
    salp::Config next = cfg->cfg;
    salp::apply_config_json(next, json);
    cfg->cfg = next;
    return SALP_OK;
  });
}

salp_status salp_config_to_json(const salp_config* cfg, char** out) {
  if (!cfg || !out) return bad_arg("salp_config_to_json: null argument");
  return guarded([&] {
    *out = dup(salp::config_to_json(cfg->cfg));
    return SALP_OK;
  });
}

void salp_config_free(salp_config* cfg) { delete cfg; }

salp_status salp_program_parse(const char* text, salp_program** out) {
  if (!out) return bad_arg("salp_program_parse: out is null");
  *out = nullptr;
  if (!text) return bad_arg("salp_program_parse: text is null");
  return guarded([&] {
    *out = new salp_program{salp::parse_program(text)};
    return SALP_OK;
  });
}

void salp_program_free(salp_program* prog) { delete prog; }

salp_status salp_program_print(const salp_program* prog, int as_json, char** out) {
  if (!prog || !out) return bad_arg("salp_program_print: null argument");
  return guarded([&] {
    *out = dup(salp::canonical_program(prog->prog, as_json != 0));
    return SALP_OK;
  });
}

salp_status salp_analyze(const salp_program* prog, const salp_config* cfg, char** out) {
  if (!prog || !out) return bad_arg("salp_analyze: null argument");
  return guarded([&] {
    *out = dup(salp::analyze_report(prog->prog, config_or_default(cfg)).json);
    return SALP_OK;
  });
}

salp_status salp_schedule(const salp_program* prog, const salp_config* cfg, char** out) {
  if (!prog || !out) return bad_arg("salp_schedule: null argument");
  return guarded([&] {
    salp::Report r = salp::schedule_report(only_nest(prog), config_or_default(cfg));
    *out = dup(r.json);
    return r.negative ? SALP_NO_SCHEDULE : SALP_OK;
  });
}

salp_status salp_transform(const salp_program* prog, const salp_config* cfg, const char* schedule, int dump_cad,
                           char** out) {
  if (!prog || !out) return bad_arg("salp_transform: null argument");
  return guarded([&] {
    salp::Report r = salp::transform_report(only_nest(prog), schedule ? schedule : "", dump_cad != 0,
                                            config_or_default(cfg));
    *out = dup(r.json);
    return r.negative ? SALP_NO_SCHEDULE : SALP_OK;
  });
}

salp_status salp_verify(const char* const* names, const char* const* texts, size_t count, const salp_config* cfg,
                        char** out) {
  if (!out || (count && (!names || !texts))) return bad_arg("salp_verify: null argument");
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> files;
    for (size_t i = 0; i < count; ++i) files.emplace_back(names[i], texts[i]);
    salp::Report r = salp::verify_report(files, config_or_default(cfg));
    *out = dup(r.json);
    return r.negative ? SALP_CHECK_FAILED : SALP_OK;
  });
}

}  // extern "C"
