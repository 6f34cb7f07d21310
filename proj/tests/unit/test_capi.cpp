/*
 * Copyright 2026 The pdse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pdse/pdse.h"

using json = nlohmann::json;

namespace {

std::string take(char* s) {
  std::string r = s ? s : "";
  pdse_free(s);
  return r;
}

struct Model {
  pdse_model* m = nullptr;
  Model() { REQUIRE(pdse_model_create(&m) == PDSE_OK); }
  ~Model() { pdse_model_destroy(m); }
};

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(pdse_version()).size() > 0);
  CHECK(std::string(pdse_status_name(PDSE_ERR_INFEASIBLE)) == "infeasible");
  CHECK(std::string(pdse_status_name(PDSE_OK)) == "ok");
}

TEST_CASE("argument and configuration errors") {
  pdse_model* m = nullptr;
  CHECK(pdse_model_create(nullptr) == PDSE_ERR_ARGUMENT);
  CHECK(std::strlen(pdse_last_error()) > 0);
  CHECK(pdse_model_load("/nonexistent/x.ini", &m) == PDSE_ERR_CONFIG);
  CHECK(m == nullptr);
  CHECK(pdse_model_parse("[model]\nnope = 1\n", &m) == PDSE_ERR_CONFIG);
  REQUIRE(pdse_model_parse("[globals]\np_max_dbm = 19\n", &m) == PDSE_OK);
  char* ini = nullptr;
  REQUIRE(pdse_model_to_ini(m, &ini) == PDSE_OK);
  CHECK(take(ini).find("p_max_dbm = 19") != std::string::npos);
  pdse_model_destroy(m);
  pdse_model_destroy(nullptr);
}

TEST_CASE("a rejected override leaves the model unchanged") {
  Model h;
  char* before = nullptr;
  REQUIRE(pdse_model_to_ini(h.m, &before) == PDSE_OK);
  CHECK(pdse_model_set(h.m, "globals", "wallplug_efficiency", "0") == PDSE_ERR_CONFIG);
  CHECK(pdse_model_set(h.m, "globals", "no_such_key", "1") == PDSE_ERR_CONFIG);
  char* after = nullptr;
  REQUIRE(pdse_model_to_ini(h.m, &after) == PDSE_OK);
  CHECK(take(before) == take(after));
  CHECK(pdse_model_set(h.m, "globals", "p_max_dbm", "21") == PDSE_OK);
}

TEST_CASE("evaluate and optimize") {
  Model h;
  pdse_query q{"ook", "clos", "balanced", NAN};
  char* out = nullptr;
  REQUIRE(pdse_evaluate(h.m, &q, 64, 17.0, &out) == PDSE_OK);
  const json d = json::parse(take(out));
  CHECK(d["n_lambda"] == 64);
  CHECK(d["power_budget_db"].get<double>() == doctest::Approx(38.6).epsilon(1e-12));

  pdse_query bad{"qam16", "clos", "balanced", NAN};
  CHECK(pdse_evaluate(h.m, &bad, 64, 17.0, &out) == PDSE_ERR_ARGUMENT);
  CHECK(pdse_evaluate(h.m, &q, 64, 17.0, nullptr) == PDSE_ERR_ARGUMENT);

  const pdse_status s = pdse_optimize(h.m, &q, &out);
  CHECK((s == PDSE_OK || s == PDSE_ERR_INFEASIBLE));
  if (s == PDSE_OK) {
    const json o = json::parse(take(out));
    CHECK(o["feasible"] == true);
    CHECK(o["slack_db"].get<double>() >= 0.0);
  }
  REQUIRE(pdse_model_set(h.m, "globals", "p_max_dbm", "-40") == PDSE_OK);
  CHECK(pdse_optimize(h.m, &q, &out) == PDSE_ERR_INFEASIBLE);
  CHECK(std::string(pdse_last_error()).find("no feasible duplet") != std::string::npos);
}

TEST_CASE("report round trip through the C boundary") {
  Model h;
  pdse_query q{"pam4_edac", "swift", "ber_optimal", 9.0};
  char* out = nullptr;
  REQUIRE(pdse_evaluate(h.m, &q, 16, 20.0, &out) == PDSE_OK);
  const std::string design = take(out);
  REQUIRE(pdse_report(h.m, design.c_str(), &out) == PDSE_OK);
  CHECK(json::parse(take(out))["consistent"] == true);
  CHECK(pdse_report(h.m, "{not json", &out) == PDSE_ERR_ARGUMENT);
}

TEST_CASE("sweep, ledger and ber") {
  Model h;
  char* out = nullptr;
  REQUIRE(pdse_sweep(h.m, R"({"goals":["balanced"],"profiles":["clos"],"schemes":["ook"],"er_list":[5]})",
                     PDSE_FORMAT_CSV, &out) == PDSE_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("goal,profile,scheme,er_db,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  REQUIRE(pdse_ledger(h.m, "pam4_ss", 8, &out) == PDSE_OK);
  CHECK(json::parse(take(out))["counts"]["mr_modulators"] == 16);
  CHECK(pdse_ledger(h.m, "pam4_ss", -1, &out) == PDSE_ERR_DOMAIN);
  REQUIRE(pdse_ber(h.m, "ook", "clos", 8, 10.0, &out) == PDSE_OK);
  const json b = json::parse(take(out));
  CHECK(b["levels_m"] == 2);
  CHECK(b["fec_threshold"].get<double>() == doctest::Approx(1.0 / 576).epsilon(1e-14));
}

TEST_CASE("SECDED through the C API") {
  const uint64_t w = 0x0123456789abcdefULL;
  uint64_t data = 0, word = 0;
  uint8_t check = 0;
  pdse_secded_status st;
  int bit = -2;
  REQUIRE(pdse_secded_encode(w, &data, &check) == PDSE_OK);
  REQUIRE(pdse_secded_decode(data, check, &word, &st, &bit) == PDSE_OK);
  CHECK(word == w);
  CHECK(st == PDSE_SECDED_CLEAN);
  REQUIRE(pdse_secded_decode(data ^ (1ULL << 17), check, &word, &st, &bit) == PDSE_OK);
  CHECK(word == w);
  CHECK(st == PDSE_SECDED_CORRECTED);
  REQUIRE(pdse_secded_decode(data ^ 3ULL, check, &word, &st, &bit) == PDSE_OK);
  CHECK(st == PDSE_SECDED_UNCORRECTABLE);
  CHECK(pdse_secded_encode(w, nullptr, &check) == PDSE_ERR_ARGUMENT);
  double t = 0;
  REQUIRE(pdse_fec_threshold(576, &t) == PDSE_OK);
  CHECK(t == doctest::Approx(1.0 / 648));
  REQUIRE(pdse_fec_threshold(512, &t) == PDSE_OK);
  CHECK(t == 1.0 / 576);
  CHECK(pdse_fec_threshold(0, &t) == PDSE_ERR_DOMAIN);
}

TEST_CASE("single-packet simulation") {
  Model h;
  char* out = nullptr;
  const char* opts =
      R"({"scheme":"ook","profile":"clos","goal":"balanced","n_lambda":64,"baud_gbaud":17,)"
      R"("pattern":"single_packet","single_src":0,"single_dst":32})";
  REQUIRE(pdse_simulate(h.m, opts, &out) == PDSE_OK);
  const json r = json::parse(take(out));
  const double oracle = 1.6 + 9.0 / 17 + 0.045 / 8.6e7 * 1e9 + 0.4;
  CHECK(r["latency_ns"]["mean"].get<double>() == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(pdse_simulate(h.m, R"({"pattern":"tornado","n_lambda":4,"baud_gbaud":10})", &out) != PDSE_OK);
}
