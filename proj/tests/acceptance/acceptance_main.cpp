// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
//
// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "salp/cad.hpp"
#include "salp/depend.hpp"
#include "salp/error.hpp"
#include "salp/loopir.hpp"
#include "salp/oracle.hpp"
#include "salp/schedule.hpp"
#include "salp/transform.hpp"

using namespace salp;

namespace {

const std::vector<Integer> kGrid{1, 2, 3, 4};
const Integer kBound = 32;

PerfectNest fixture(const std::string& name) {
  std::ifstream in(std::string(SALP_FIXTURE_DIR) + "/" + name + ".loop");
  if (!in) throw Error(ErrorCode::Io, "missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return nests(parse_program(ss.str())).at(0);
}

ParamValues at(const PerfectNest& nest, const Integer& n) {
  ParamValues pv;
  for (const auto& p : nest.params()) pv[p] = n;
  return pv;
}

std::string show(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. Circle CAD.
Outcome circle() {
  auto t0 = std::chrono::steady_clock::now();
  VarOrder o({"x", "y"});
  CadTree t = build_cad({parse_polynomial("x^2 + y^2 - 1", o)}, o);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto stacks = t.stack_sizes(1);
  std::string s;
  for (auto k : stacks) s += (s.empty() ? "" : ",") + std::to_string(k);
  bool ok = t.num_cells() == 13 && stacks == std::vector<std::size_t>{1, 3, 5, 3, 1} && secs < 5;
  return {ok, std::to_string(t.num_cells()) + " cells, stacks " + s + ", " + std::to_string(secs) + " s"};
}

// 2. Integer points of every DS against the brute-force dependences.
Outcome dependences() {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> names{"shift",  "parity", "square_index",    "triangular", "square",
                                       "skew",   "scalar", "nodep",           "quadratic_bound",
                                       "multi_read", "self", "reduction",     "row_broadcast"};
  std::size_t mismatches = 0, checked = 0;
  std::string first;
  for (const auto& name : names) {
    PerfectNest nest = fixture(name);
    for (const auto& n : kGrid) {
      ParamValues pv = at(nest, n);
      auto pairs = dependences_bruteforce(nest, pv, kBound);
      for (std::size_t i = 0; i <= nest.stmt.reads.size(); ++i) {
        if (i > 0 && nest.stmt.reads[i - 1].array != nest.stmt.write.array) continue;
        auto pts = ds_integer_points(nest, build_ds(nest, i), pv, kBound);
        std::set<std::pair<IterationPoint, IterationPoint>> a(pts.begin(), pts.end()), b;
        for (const auto& p : pairs) {
          if (p.access_index == i) b.insert({p.src, p.dst});
        }
        ++checked;
        if (a != b) {
          ++mismatches;
          if (first.empty()) first = name + " access " + std::to_string(i) + " n=" + to_string(n);
        }
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string d = std::to_string(names.size()) + " fixtures, " + std::to_string(checked) + " sets, " +
                  std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s";
  if (!first.empty()) d += "; first: " + first;
  return {mismatches == 0 && names.size() >= 10 && secs < 60, d};
}

// 3. Parity: real DS nonempty, integer DS empty.
Outcome parity() {
  PerfectNest nest = fixture("parity");
  SemiAlgebraicSystem ds = build_ds(nest, 1);
  bool real_empty = is_empty_real(ds);
  std::size_t nonempty = 0;
  for (int n = 0; n <= 10; ++n) nonempty += !is_empty_int_at(nest, ds, at(nest, n), kBound);
  return {!real_empty && nonempty == 0, std::string("is_empty_real = ") + (real_empty ? "true" : "false") +
                                            ", nonempty integer sets for n <= 10: " + std::to_string(nonempty)};
}

// 4. Points of E_V give valid schedules on the integer dependences.
Outcome validity_implies_order() {
  const std::vector<std::string> names{"shift", "multi_read", "self", "scalar", "square_index", "parity", "nodep",
                                       "square", "skew", "triangular", "quadratic_bound", "row_broadcast"};
  std::size_t with_ev = 0, violations = 0, short_samples = 0;
  std::string notes;
  for (const auto& name : names) {
    PerfectNest nest = fixture(name);
    auto edges = build_edges(nest);
    ScheduleTemplate tpl = default_template(nest, 1);
    ParallelismResult pr = maximize_parallelism(edges, tpl);
    if (pr.level == 0 || pr.region.empty() || !pr.region.witness) continue;
    ++with_ev;
    std::vector<std::vector<Rational>> extra;
    auto add = [&](const std::vector<Rational>& v) {
      if (v != *pr.region.witness && std::find(extra.begin(), extra.end(), v) == extra.end()) extra.push_back(v);
    };
    for (const auto& v : integer_candidates(pr.region, tpl, false, 8)) add(v);
    for (const auto& v : pr.region.samples) add(v);
    // Fall back to a membership scan of the integer grid [-3, 3]^m.
    std::size_t m = tpl.v_order.size();
    std::vector<int> g(m, -3);
    while (extra.size() < 8) {
      std::vector<Rational> v;
      for (int c : g) v.emplace_back(c);
      if (holds_at(pr.region.system, v)) add(v);
      std::size_t i = 0;
      while (i < m && g[i] == 3) g[i++] = -3;
      if (i == m) break;
      ++g[i];
    }
    if (extra.size() < 4) {
      ++short_samples;
      notes += " " + name + " has " + std::to_string(extra.size()) + " extra points;";
    }
    std::vector<std::vector<Rational>> pts{*pr.region.witness};
    pts.insert(pts.end(), extra.begin(), extra.end());
    for (const auto& n : kGrid) {
      auto pairs = dependences_bruteforce(nest, at(nest, n), kBound);
      for (const auto& v : pts) {
        auto m = tpl.instantiate(v);
        m.resize(pr.level);
        auto chk = schedule_valid(pairs, m, nest, at(nest, n));
        if (!chk.ok && violations == 0) notes += " " + name + " v=" + show(v) + " n=" + to_string(n) + " violates;";
        violations += chk.violations.size();
      }
    }
  }
  return {violations == 0 && short_samples == 0 && with_ev > 0,
          std::to_string(with_ev) + " fixtures with E_V, " + std::to_string(violations) + " violations" + notes};
}

// 5. Shift with M = v1 x.
Outcome shift_region() {
  PerfectNest nest = fixture("shift");
  ScheduleTemplate tpl = default_template(nest, 1, false, false);
  ValidityRegion r = qe_forall(validity_formula(build_edges(nest), tpl, 1));
  std::set<int> inside;
  for (int v = -3; v <= 3; ++v) {
    if (holds_at(r.system, std::vector<Rational>{Rational(v)})) inside.insert(v);
  }
  std::set<int> cands;
  for (const auto& v : integer_candidates(r, tpl, false, 100)) cands.insert(static_cast<int>(v.at(0).get_num().get_si()));
  std::string s;
  for (int v : inside) s += (s.empty() ? "" : ",") + std::to_string(v);
  bool ok = inside == std::set<int>{1, 2, 3} && cands == inside;
  return {ok, "E_V = " + r.system.to_string() + ", integer members in [-3,3]: {" + s + "}"};
}

// 6. Identity, interchange and skew on the 2-D fixtures.
Outcome end_to_end() {
  struct Case {
    std::string fixture;
    std::vector<std::string> m;
  };
  std::vector<Case> cases;
  for (const std::string f : {"square", "skew", "triangular", "quadratic_bound"}) {
    cases.push_back({f, {"i", "j"}});
    cases.push_back({f, {"j", "i"}});
    cases.push_back({f, {"i + j", "j"}});
  }
  // Only the identity preserves the row_broadcast dependences.
  cases.push_back({"row_broadcast", {"i", "j"}});
  std::size_t failed = 0;
  std::string notes;
  for (const auto& c : cases) {
    PerfectNest nest = fixture(c.fixture);
    std::vector<Polynomial> comps;
    for (const auto& e : c.m) comps.push_back(parse_polynomial(e, nest.domain_order()));
    std::string label = c.fixture + " (" + c.m[0] + ", " + c.m[1] + ")";
    try {
      TransformResult res = transform(nest, ScheduleTemplate::fixed(nest, comps), {});
      bool ok = check_integer_validity(nest, res, kGrid, kBound).ok;
      for (const auto& n : kGrid) {
        ok = ok && check_bijection(nest, res.program, res.schedule, at(nest, n), kBound).ok;
        if (nest.stmt.reduction == Reduction::Assign) {
          auto a = interpret(from_nest(nest), at(nest, n), {});
          auto b = interpret(res.program, at(nest, n), {});
          ok = ok && b.errors.empty() && a.arrays == b.arrays;
        }
      }
      if (!ok) {
        ++failed;
        notes += " " + label + " fails;";
      }
    } catch (const Error& e) {
      ++failed;
      notes += " " + label + ": " + e.what() + ";";
    }
  }
  return {failed == 0, std::to_string(cases.size()) + " transforms, " + std::to_string(failed) + " failed" + notes};
}

// 7. Random CADs: every probe in exactly one leaf, stored signs exact.
Outcome cad_invariants() {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> coef(-3, 3), count(1, 3), nvars(1, 2), deg(1, 3), terms(1, 4);
  std::uniform_int_distribution<long> num(-24, 24), den(1, 6);
  std::size_t sets = 0, probe_violations = 0, sign_violations = 0;
  while (sets < 25) {
    VarOrder o = nvars(rng) == 1 ? VarOrder({"x"}) : VarOrder({"x", "y"});
    std::vector<Polynomial> ps;
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
      unsigned d = deg(rng);
      int t = terms(rng);
      Polynomial p(o);
      for (int j = 0; j < t; ++j) {
        Exponents e(o.size(), 0);
        unsigned left = d;
        for (auto& x : e) {
          x = std::uniform_int_distribution<unsigned>(0, left)(rng);
          left -= x;
        }
        p += Polynomial::monomial(o, e, coef(rng));
      }
      if (!p.is_constant()) ps.push_back(p);
    }
    if (ps.empty()) continue;
    ++sets;
    CadTree t = build_cad(ps, o);
    for (const auto& c : t.cells()) {
      for (std::size_t i = 0; i < ps.size(); ++i) sign_violations += c.signs[i] != sign_at(ps[i], c.sample);
    }
    auto leaves = t.nodes_at(o.size());
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<Rational> pt;
      for (std::size_t v = 0; v < o.size(); ++v) pt.push_back(ratio(num(rng), den(rng)));
      std::size_t hits = 0;
      for (const auto& [path, node] : leaves) hits += cell_contains(t, path, pt);
      probe_violations += hits != 1;
    }
  }
  return {probe_violations == 0 && sign_violations == 0,
          std::to_string(sets) + " sets, 200 probes each: " + std::to_string(probe_violations) +
              " probe violations, " + std::to_string(sign_violations) + " sign mismatches"};
}

std::string run_cli(const std::string& cmd) {
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) throw Error(ErrorCode::Io, "cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
  pclose(f);
  return out;
}

// 8. Determinism of `salp verify`.
Outcome determinism() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(SALP_FIXTURE_DIR)) {
    if (e.path().extension() == ".loop") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::string cmd = std::string("'") + SALP_CLI_PATH + "' verify";
  for (const auto& f : files) cmd += " '" + f + "'";
  std::string a = run_cli(cmd), b = run_cli(cmd);
  bool ok = !a.empty() && a == b;
  return {ok, std::to_string(files.size()) + " fixtures, " + std::to_string(a.size()) + " bytes, " +
                  (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"circle CAD", circle},
      {"dependence cross-check", dependences},
      {"real vs integer gap", parity},
      {"E_V points order the dependences", validity_implies_order},
      {"shift validity region", shift_region},
      {"transform end to end", end_to_end},
      {"CAD structural invariants", cad_invariants},
      {"verify determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("criterion %zu [%s]: %s (%.2f s) %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
