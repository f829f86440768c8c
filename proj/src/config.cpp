// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "salp/error.hpp"

namespace salp {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "config: " + msg); }

std::uint64_t positive(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) bad(std::string(key) + " must be a positive integer");
  return v.get<std::uint64_t>();
}

}  // namespace

void apply_config_json(Config& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("expected an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "max_projection") {
      cfg.cad.max_projection = positive(v, "max_projection");
    } else if (key == "max_vars") {
      cfg.cad.max_vars = positive(v, "max_vars");
    } else if (key == "refinement_budget") {
      cfg.cad.refinement_budget = static_cast<unsigned>(positive(v, "refinement_budget"));
    } else if (key == "bound") {
      cfg.bound = Integer(std::to_string(positive(v, "bound")));
    } else if (key == "template_degree") {
      cfg.template_degree = static_cast<unsigned>(positive(v, "template_degree"));
    } else if (key == "n_grid") {
      if (!v.is_array() || v.empty()) bad("n_grid must be a nonempty array of integers");
      cfg.n_grid.clear();
      for (const auto& e : v) {
        if (!e.is_number_integer()) bad("n_grid must be a nonempty array of integers");
        cfg.n_grid.emplace_back(std::to_string(e.get<std::int64_t>()));
      }
    } else if (key == "format") {
      if (!v.is_string() || (v != "dsl" && v != "json")) bad("format must be \"dsl\" or \"json\"");
      cfg.format = v.get<std::string>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) bad("seed must be a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else {
      bad("unknown key '" + key + "'");
    }
  }
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Config cfg;
  apply_config_json(cfg, ss.str());
  return cfg;
}

Config default_config() {
  const char* path = std::getenv("SALP_CONFIG");
  if (path && *path) return load_config(path);
  return Config{};
}

std::string config_to_json(const Config& cfg) {
  json j;
  j["max_projection"] = cfg.cad.max_projection;
  j["max_vars"] = cfg.cad.max_vars;
  j["refinement_budget"] = cfg.cad.refinement_budget;
  j["bound"] = cfg.bound.get_si();
  j["template_degree"] = cfg.template_degree;
  json grid = json::array();
  for (const auto& n : cfg.n_grid) grid.push_back(n.get_si());
  j["n_grid"] = grid;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  return j.dump();
}

}  // namespace salp
