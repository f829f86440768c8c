// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "salp/salp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Owned {
  char* s = nullptr;
  ~Owned() { salp_string_free(s); }
};

using ProgramPtr = std::unique_ptr<salp_program, decltype(&salp_program_free)>;
using ConfigPtr = std::unique_ptr<salp_config, decltype(&salp_config_free)>;

int report_error(salp_status st) {
  std::cerr << "salp: " << salp_status_name(st) << ": " << salp_last_error() << "\n";
  return st == SALP_NO_SCHEDULE ? kExitNegative : kExitError;
}

int exit_for(salp_status st) {
  if (st == SALP_OK) return kExitOk;
  if (st == SALP_NO_SCHEDULE || st == SALP_CHECK_FAILED) return kExitNegative;
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-algebraic loop parallelization"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (default: $SALP_CONFIG)");

  std::string file;
  std::vector<std::string> files;
  bool json_out = false, auto_mode = false, dump_cad = false;
  std::string schedule, format, n_grid;
  unsigned degree = 0;
  long bound = 0;

  auto* parse = app.add_subcommand("parse", "Echo the canonical program");
  parse->add_option("file", file, "Loop program")->required();
  parse->add_flag("--json", json_out, "Print the JSON IR");

  auto* analyze = app.add_subcommand("analyze", "Dependence report (JSON)");
  analyze->add_option("file", file, "Loop program")->required();

  auto* sched = app.add_subcommand("schedule", "Maximal parallelism, E_V and a schedule (JSON)");
  sched->add_option("file", file, "Loop program")->required();

  auto* trans = app.add_subcommand("transform", "Transformed program and integer-validity report");
  trans->add_option("file", file, "Loop program")->required();
  auto* sopt = trans->add_option("--schedule", schedule, "Components, e.g. \"j, i\"");
  trans->add_flag("--auto", auto_mode, "Pick the schedule automatically (default)")->excludes(sopt);
  trans->add_option("--format", format, "dsl or json")->check(CLI::IsMember({"dsl", "json"}));
  trans->add_flag("--json", json_out, "Print the full JSON report");
  trans->add_flag("--dump-cad", dump_cad, "Include the CAD of the image in the JSON report");

  auto* verify = app.add_subcommand("verify", "Oracle cross-checks per fixture (JSON)");
  verify->add_option("files", files, "Loop programs")->required();

  for (auto* sub : {analyze, sched, trans, verify}) {
    sub->add_option("--n-grid", n_grid, "Parameter values, e.g. 1,2,3,4");
    sub->add_option("--bound", bound, "Enumeration bound")->check(CLI::PositiveNumber);
  }
  for (auto* sub : {sched, trans, verify}) {
    sub->add_option("--template-degree", degree, "Schedule template degree")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    salp_config* raw_cfg = nullptr;
    salp_status st = salp_config_load(config_path.empty() ? nullptr : config_path.c_str(), &raw_cfg);
    if (st != SALP_OK) return report_error(st);
    ConfigPtr cfg(raw_cfg, &salp_config_free);

    nlohmann::json over = nlohmann::json::object();
    if (!n_grid.empty()) {
      nlohmann::json grid = nlohmann::json::array();
      std::stringstream ss(n_grid);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          long v = std::stol(item, &used);
          if (used != item.size()) throw std::invalid_argument(item);
          grid.push_back(v);
        } catch (const std::exception&) {
          throw UsageError{"--n-grid: not an integer list: " + n_grid};
        }
      }
      over["n_grid"] = grid;
    }
    if (bound > 0) over["bound"] = bound;
    if (degree > 0) over["template_degree"] = degree;
    if (!format.empty()) over["format"] = format;
    if (!over.empty()) {
      st = salp_config_set_json(cfg.get(), over.dump().c_str());
      if (st != SALP_OK) return report_error(st);
    }

    if (verify->parsed()) {
      std::vector<std::string> texts;
      for (const auto& f : files) texts.push_back(read_file(f));
      std::vector<const char*> names, bodies;
      for (std::size_t i = 0; i < files.size(); ++i) {
        names.push_back(files[i].c_str());
        bodies.push_back(texts[i].c_str());
      }
      Owned out;
      st = salp_verify(names.data(), bodies.data(), files.size(), cfg.get(), &out.s);
      if (!out.s) return report_error(st);
      std::cout << out.s << "\n";
      return exit_for(st);
    }

    std::string text = read_file(file);
    salp_program* raw_prog = nullptr;
    st = salp_program_parse(text.c_str(), &raw_prog);
    if (st != SALP_OK) return report_error(st);
    ProgramPtr prog(raw_prog, &salp_program_free);

    Owned out;
    if (parse->parsed()) {
      st = salp_program_print(prog.get(), json_out ? 1 : 0, &out.s);
      if (st != SALP_OK) return report_error(st);
      std::cout << out.s;
      return kExitOk;
    }
    if (analyze->parsed()) {
      st = salp_analyze(prog.get(), cfg.get(), &out.s);
    } else if (sched->parsed()) {
      st = salp_schedule(prog.get(), cfg.get(), &out.s);
    } else {
      st = salp_transform(prog.get(), cfg.get(), schedule.empty() ? nullptr : schedule.c_str(), dump_cad ? 1 : 0,
                          &out.s);
      if (out.s && !json_out) {
        auto rep = nlohmann::json::parse(out.s);
        if (rep["result"] != "ok") {
          std::cerr << "salp: no-schedule: " << rep.value("message", std::string()) << "\n";
          return exit_for(st);
        }
        std::string prog_text = rep["program"].get<std::string>();
        if (rep["format"] == "dsl") {
          std::cout << "# schedule: (";
          const auto& comps = rep["schedule"];
          for (std::size_t i = 0; i < comps.size(); ++i) std::cout << (i ? ", " : "") << comps[i].get<std::string>();
          std::cout << ")\n# carried level: " << rep["level"].get<std::size_t>()
                    << "\n# integer-valid: " << (rep["integer_validity"]["ok"].get<bool>() ? "yes" : "no") << "\n";
        }
        std::cout << prog_text;
        return exit_for(st);
      }
    }
    if (!out.s) return report_error(st);
    std::cout << out.s << "\n";
    return exit_for(st);
  } catch (const UsageError& e) {
    std::cerr << "salp: " << e.message << "\n";
    return kExitUsage;
  }
}
