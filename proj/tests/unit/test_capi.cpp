// Copyright 2026 The salp Authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// at http://www.apache.org/licenses/LICENSE-2.0
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "salp/salp.h"
#include "support.hpp"

namespace {

struct Text {
  char* s = nullptr;
  ~Text() { salp_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

salp_program* parse(const std::string& name) {
  salp_program* p = nullptr;
  REQUIRE(salp_program_parse(salp::test::fixture_text(name).c_str(), &p) == SALP_OK);
  return p;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("parse errors carry positions") {
    salp_program* p = nullptr;
    CHECK(salp_program_parse("param n: n >= 0;\nloop i 0..n;", &p) == SALP_ERR_SYNTAX);
    CHECK(p == nullptr);
    CHECK(std::strncmp(salp_last_error(), "2:", 2) == 0);
    CHECK(salp_program_parse(nullptr, &p) == SALP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(salp_status_name(SALP_ERR_SYNTAX)) == "syntax");
  }

  TEST_CASE("print round trip") {
    salp_program* p = parse("square");
    Text a;
    REQUIRE(salp_program_print(p, 0, &a.s) == SALP_OK);
    salp_program* q = nullptr;
    REQUIRE(salp_program_parse(a.s, &q) == SALP_OK);
    Text b;
    REQUIRE(salp_program_print(q, 0, &b.s) == SALP_OK);
    CHECK(a.str() == b.str());
    CHECK(std::string(salp_last_error()).empty());
    salp_program_free(q);
    salp_program_free(p);
  }

  TEST_CASE("config") {
    salp_config* c = nullptr;
    REQUIRE(salp_config_load(nullptr, &c) == SALP_OK);
    CHECK(salp_config_set_json(c, "{\"bound\": 16, \"n_grid\": [1, 2]}") == SALP_OK);
    Text t;
    REQUIRE(salp_config_to_json(c, &t.s) == SALP_OK);
    auto j = nlohmann::json::parse(t.str());
    CHECK(j["bound"] == 16);
    CHECK(j["n_grid"].size() == 2);
    CHECK(salp_config_set_json(c, "{\"bound\": -1}") == SALP_ERR_INVALID_ARGUMENT);
    CHECK(salp_config_set_json(c, "{\"colour\": 1}") == SALP_ERR_INVALID_ARGUMENT);
    CHECK(salp_config_set_json(c, "{") == SALP_ERR_INVALID_ARGUMENT);
    salp_config* missing = nullptr;
    CHECK(salp_config_load("/nonexistent/salp.json", &missing) == SALP_ERR_IO);
    salp_config_free(c);
  }

  TEST_CASE("analyze") {
    salp_program* p = parse("shift");
    Text t;
    REQUIRE(salp_analyze(p, nullptr, &t.s) == SALP_OK);
    auto j = nlohmann::json::parse(t.str());
    CHECK(j["schema_version"] == 1);
    bool raw_nonempty = false;
    for (const auto& e : j["edges"]) raw_nonempty = raw_nonempty || (e["kind"] == "RAW" && e["empty_real"] == false);
    CHECK(raw_nonempty);
    salp_program_free(p);
  }

  TEST_CASE("schedule and no-schedule") {
    salp_program* p = parse("square");
    Text t;
    REQUIRE(salp_schedule(p, nullptr, &t.s) == SALP_OK);
    auto j = nlohmann::json::parse(t.str());
    CHECK(j["level"] == 2);
    CHECK(j["schedule"] == nlohmann::json::array({"j", "i"}));
    salp_program_free(p);

    salp_program* q = parse("row_broadcast");
    Text u;
    CHECK(salp_schedule(q, nullptr, &u.s) == SALP_NO_SCHEDULE);
    CHECK(nlohmann::json::parse(u.str())["result"] == "no-schedule");
    salp_program_free(q);
  }

  TEST_CASE("transform") {
    salp_program* p = parse("square");
    Text t;
    REQUIRE(salp_transform(p, nullptr, "j, i", 1, &t.s) == SALP_OK);
    auto j = nlohmann::json::parse(t.str());
    CHECK(j["integer_validity"]["ok"] == true);
    CHECK(j["level"] == 2);
    CHECK(j.contains("cad"));
    Text bad;
    CHECK(salp_transform(p, nullptr, "i, i", 0, &bad.s) == SALP_ERR_TRANSFORM);
    Text inval;
    CHECK(salp_transform(p, nullptr, "-i, j", 0, &inval.s) == SALP_NO_SCHEDULE);
    salp_program_free(p);
  }

  TEST_CASE("multi-nest programs need a single nest for scheduling") {
    salp_program* p = nullptr;
    REQUIRE(salp_program_parse("param n: n >= 0;\nloop i: 0..n {\n  stmt: A[i] = f(A[i]);\n}\nloop j: 0..n;\n"
                               "stmt: B[j] = f(B[j]);\n",
                               &p) == SALP_OK);
    Text t;
    CHECK(salp_schedule(p, nullptr, &t.s) == SALP_ERR_SEMANTIC);
    salp_program_free(p);
  }

  TEST_CASE("verify") {
    std::string text = salp::test::fixture_text("shift");
    const char* names[] = {"shift"};
    const char* texts[] = {text.c_str()};
    Text t;
    REQUIRE(salp_verify(names, texts, 1, nullptr, &t.s) == SALP_OK);
    auto j = nlohmann::json::parse(t.str());
    CHECK(j["ok"] == true);
    CHECK(j["fixtures"][0]["name"] == "shift");
  }
}
