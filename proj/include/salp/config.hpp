// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "salp/cad.hpp"

namespace salp {

struct Config {
  CadOptions cad;
  Integer bound = 32;                      // enumeration box [-bound, bound]
  std::vector<Integer> n_grid{1, 2, 3, 4};  // parameter values for the checks
  unsigned template_degree = 1;
  std::string format = "dsl";  // dsl | json
  std::uint64_t seed = 20261016;
};

// Unknown keys are rejected; missing keys keep their current value.
void apply_config_json(Config& cfg, const std::string& json_text);
Config load_config(const std::string& path);
// From the file named by SALP_CONFIG if set, else the defaults.
Config default_config();
std::string config_to_json(const Config& cfg);

}  // namespace salp
