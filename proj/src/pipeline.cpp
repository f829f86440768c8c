// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include "salp/pipeline.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "salp/error.hpp"

namespace salp {

namespace {

using json = nlohmann::json;

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

json polys(const std::vector<Polynomial>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(p.to_string());
  return a;
}

json integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(z.get_si());
  return a;
}

ParamValues at(const PerfectNest& nest, const Integer& n) {
  ParamValues pv;
  for (const auto& name : nest.params()) pv[name] = n;
  return pv;
}

std::vector<Integer> grid_for(const PerfectNest& nest, const Config& cfg) {
  if (nest.num_params == 0) return {Integer(0)};
  return cfg.n_grid;
}

json error_json(const Error& e) { return {{"code", error_code_name(e.code())}, {"message", e.what()}}; }

bool no_dependences(const std::vector<DependenceEdge>& edges) {
  return std::all_of(edges.begin(), edges.end(), [](const DependenceEdge& e) { return e.empty_real && *e.empty_real; });
}

ScheduleTemplate template_for(const PerfectNest& nest, const Config& cfg) {
  return default_template(nest, cfg.template_degree);
}

std::vector<Polynomial> parse_schedule(const PerfectNest& nest, const std::string& text) {
  std::vector<Polynomial> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_polynomial(text.substr(start, comma - start), nest.domain_order()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json validity_json(const IntegerValidityReport& r) {
  return {{"ok", r.ok},
          {"integer_coefficients", r.integer_coefficients},
          {"truncated", r.truncated},
          {"n_grid", integers(r.n_values)},
          {"failures", r.failures}};
}

}  // namespace

std::string canonical_program(const LoopProgram& prog, bool as_json) {
  return as_json ? program_to_json(prog) : print_program(prog);
}

Report analyze_report(const LoopProgram& prog, const Config& cfg) {
  DependenceGraph g = build_graph(prog, true, cfg.cad);
  auto ns = nests(prog);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["nodes"] = g.nodes;
  json edges = json::array();
  for (const auto& e : g.edges) {
    const PerfectNest& nest = ns[e.nest];
    json ints = json::array();
    for (const auto& n : grid_for(nest, cfg)) {
      json v{{"n", n.get_si()}};
      try {
        auto pts = ds_integer_points(nest, e.ds, at(nest, n), cfg.bound);
        v["empty"] = pts.empty();
        v["pairs"] = pts.size();
      } catch (const Error& err) {
        if (err.code() != ErrorCode::Budget) throw;
        v["empty"] = nullptr;
        v["note"] = err.what();
      }
      ints.push_back(v);
    }
    edges.push_back({{"nest", e.nest},
                     {"kind", dep_kind_name(e.kind)},
                     {"access", e.access_index},
                     {"ds", e.ds.to_string()},
                     {"empty_real", e.empty_real ? json(*e.empty_real) : json(nullptr)},
                     {"integer", ints}});
  }
  j["edges"] = edges;
  return {j.dump(2), false};
}

Report schedule_report(const PerfectNest& nest, const Config& cfg) {
  auto edges = build_edges(nest, true, cfg.cad);
  ScheduleTemplate tpl = template_for(nest, cfg);
  QeOptions qo{cfg.cad};
  ParallelismResult pr = maximize_parallelism(edges, tpl, qo);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["template"] = polys(tpl.components);
  j["v"] = tpl.v_order.names();
  j["dependences"] = !no_dependences(edges);
  j["level"] = pr.level;
  j["ev"] = pr.region.system.to_string();
  if (pr.region.empty()) {
    j["result"] = "no-schedule";
    return {j.dump(2), true};
  }
  j["witness"] = pr.region.witness ? rationals(*pr.region.witness) : json(nullptr);
  std::vector<Rational> v;
  bool nondeg = true;
  try {
    v = pick_schedule(pr.region, tpl, true, true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSchedule) throw;
    v = pick_schedule(pr.region, tpl, true, false);
    nondeg = false;
  }
  j["result"] = "ok";
  j["picked"] = rationals(v);
  j["schedule"] = polys(tpl.instantiate(v));
  j["nondegenerate"] = nondeg;
  return {j.dump(2), false};
}

AutoSchedule auto_transform(const PerfectNest& nest, const Config& cfg) {
  auto edges = build_edges(nest, true, cfg.cad);
  bool free = no_dependences(edges);
  ScheduleTemplate tpl = template_for(nest, cfg);
  QeOptions qo{cfg.cad};
  const std::size_t kMaxAttempts = 20;
  std::size_t attempts = 0;
  std::vector<std::string> why;
  for (std::size_t k = tpl.components.size(); k >= 1 && attempts < kMaxAttempts; --k) {
    ValidityRegion region = qe_forall(validity_formula(edges, tpl, k), qo);
    if (region.empty()) continue;
    auto cands = integer_candidates(region, tpl, true, kMaxAttempts - attempts);
    if (cands.empty() && region.witness && !degenerate(tpl, *region.witness) && !singular(tpl, *region.witness)) {
      cands.push_back(*region.witness);
    }
    for (const auto& v : cands) {
      ++attempts;
      TransformOptions to;
      to.cad = cfg.cad;
      to.level = free ? 0 : k;
      try {
        TransformResult res = transform(nest, tpl, v, to);
        IntegerValidityReport rep = check_integer_validity(nest, res, grid_for(nest, cfg), cfg.bound);
        if (rep.ok) return {tpl, free ? 0 : k, std::move(res), std::move(rep)};
        why.push_back("integer checks fail for " + json(polys(tpl.instantiate(v))).dump());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TransformFailed) throw;
        why.push_back(e.what());
      }
    }
  }
  std::string msg = "no schedule in the template family passes the transform checks";
  if (!why.empty()) msg += " (last: " + why.back() + ")";
  throw Error(ErrorCode::NoSchedule, msg);
}

Report transform_report(const PerfectNest& nest, const std::string& schedule, bool dump_cad, const Config& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  TransformResult res;
  IntegerValidityReport rep;
  if (schedule.empty()) {
    try {
      AutoSchedule a = auto_transform(nest, cfg);
      res = std::move(a.result);
      rep = std::move(a.validity);
      j["mode"] = "auto";
      j["template"] = polys(a.tpl.components);
      j["v"] = rationals(res.v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSchedule) throw;
      j["result"] = "no-schedule";
      j["message"] = e.what();
      return {j.dump(2), true};
    }
  } else {
    ScheduleTemplate tpl = ScheduleTemplate::fixed(nest, parse_schedule(nest, schedule));
    auto edges = build_edges(nest, true, cfg.cad);
    ParallelismResult pr = maximize_parallelism(edges, tpl, QeOptions{cfg.cad});
    j["mode"] = "explicit";
    if (pr.level == 0) {
      j["result"] = "no-schedule";
      j["message"] = "the schedule violates a dependence at every level";
      return {j.dump(2), true};
    }
    TransformOptions to;
    to.cad = cfg.cad;
    to.level = no_dependences(edges) ? 0 : pr.level;
    res = transform(nest, tpl, {}, to);
    rep = require_integer_validity(nest, res, grid_for(nest, cfg), cfg.bound);
  }
  j["result"] = "ok";
  j["schedule"] = polys(res.schedule);
  j["y"] = res.y_names;
  j["level"] = *res.level;
  j["format"] = cfg.format;
  j["program"] = emit(res, cfg.format == "json" ? EmitFormat::Json : EmitFormat::Dsl);
  j["integer_validity"] = validity_json(rep);
  if (dump_cad) {
    j["cad"] = json::parse(res.t_L.to_json());
  }
  return {j.dump(2), false};
}

std::string verify_entry(const std::string& name, const std::string& text, const Config& cfg) {
  json j;
  j["name"] = name;
  bool ok = true;
  try {
    LoopProgram prog = parse_program(text);
    j["round_trip"] = print_program(parse_program(print_program(prog))) == print_program(prog);
    ok = ok && j["round_trip"].get<bool>();
    auto ns = nests(prog);
    j["nests"] = ns.size();
    json deps = json::array();
    for (const auto& nest : ns) {
      json d = json::array();
      for (const auto& n : grid_for(nest, cfg)) {
        ParamValues pv = at(nest, n);
        auto pairs = dependences_bruteforce(nest, pv, cfg.bound);
        bool match = true;
        for (std::size_t i = 0; i <= nest.stmt.reads.size(); ++i) {
          if (i > 0 && nest.stmt.reads[i - 1].array != nest.stmt.write.array) continue;
          auto pts = ds_integer_points(nest, build_ds(nest, i), pv, cfg.bound);
          std::set<std::pair<IterationPoint, IterationPoint>> a(pts.begin(), pts.end()), b;
          for (const auto& p : pairs) {
            if (p.access_index == i) b.insert({p.src, p.dst});
          }
          match = match && a == b;
        }
        ok = ok && match;
        d.push_back({{"n", n.get_si()}, {"pairs", pairs.size()}, {"match", match}});
      }
      deps.push_back(d);
    }
    j["dependences"] = deps;
    if (ns.size() != 1) {
      j["ok"] = ok;
      return j.dump();
    }
    const PerfectNest& nest = ns[0];
    auto grid = grid_for(nest, cfg);

    // Every sampled point of E_V must satisfy the brute-force order.
    auto edges = build_edges(nest, true, cfg.cad);
    ScheduleTemplate tpl = template_for(nest, cfg);
    ParallelismResult pr = maximize_parallelism(edges, tpl, QeOptions{cfg.cad});
    json sj;
    sj["level"] = pr.level;
    sj["ev"] = pr.region.system.to_string();
    if (!pr.region.empty()) {
      std::vector<std::vector<Rational>> pts;
      auto add = [&](const std::vector<Rational>& v) {
        if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(v);
      };
      if (pr.region.witness) add(*pr.region.witness);
      for (const auto& v : integer_candidates(pr.region, tpl, false, 8)) add(v);
      for (const auto& v : pr.region.samples) add(v);
      if (pts.size() > 12) pts.resize(12);
      std::size_t violations = 0;
      for (const auto& n : grid) {
        auto pairs = dependences_bruteforce(nest, at(nest, n), cfg.bound);
        for (const auto& v : pts) {
          // Only the first `level` components must order the pairs.
          auto m = tpl.instantiate(v);
          m.resize(pr.level);
          violations += schedule_valid(pairs, m, nest, at(nest, n)).violations.size();
        }
      }
      json pj = json::array();
      for (const auto& v : pts) pj.push_back(rationals(v));
      sj["points"] = pj;
      sj["violations"] = violations;
      ok = ok && violations == 0;
    }
    j["schedule"] = sj;

    json tj;
    try {
      AutoSchedule a = auto_transform(nest, cfg);
      tj["schedule"] = polys(a.result.schedule);
      tj["level"] = a.level;
      tj["integer_validity"] = validity_json(a.validity);
      bool bij = true;
      json eq = json::array();
      bool assign = nest.stmt.reduction == Reduction::Assign;
      for (const auto& n : grid) {
        bij = bij && check_bijection(nest, a.result.program, a.result.schedule, at(nest, n), cfg.bound).ok;
        InterpretOptions io;
        io.bound = cfg.bound;
        auto before = interpret(from_nest(nest), at(nest, n), {}, io);
        auto after = interpret(a.result.program, at(nest, n), {}, io);
        bool same = before.arrays == after.arrays && before.trace.size() == after.trace.size();
        eq.push_back(same);
        if (assign) ok = ok && same;
      }
      tj["bijection"] = bij;
      tj["arrays_equal"] = eq;
      ok = ok && bij && a.validity.ok;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSchedule) throw;
      tj["result"] = "no-schedule";
    }
    j["transform"] = tj;
  } catch (const Error& e) {
    j["error"] = error_json(e);
    ok = false;
  }
  j["ok"] = ok;
  return j.dump();
}

Report verify_report(const std::vector<std::pair<std::string, std::string>>& files, const Config& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json entries = json::array();
  bool ok = true;
  for (const auto& [name, text] : files) {
    json e = json::parse(verify_entry(name, text, cfg));
    ok = ok && e["ok"].get<bool>();
    entries.push_back(e);
  }
  j["fixtures"] = entries;
  j["ok"] = ok;
  return {j.dump(2), !ok};
}

}  // namespace salp
