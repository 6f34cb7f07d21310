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

#include "pdse/pdse.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <future>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "calibrate.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "golden.hpp"
#include "pnoc_sim.hpp"
#include "reliability.hpp"
#include "report.hpp"
#include "search.hpp"

struct pdse_model {
  pdse::ModelConfig cfg;
  std::shared_ptr<pdse::BankCache> cache = std::make_shared<pdse::BankCache>();
  std::unique_ptr<pdse::Explorer> ex;

  explicit pdse_model(pdse::ModelConfig c) : cfg(std::move(c)) { rebuild(); }
  // Banks are keyed on every geometric input, so the cache survives edits.
  void rebuild() { ex = std::make_unique<pdse::Explorer>(cfg, cache); }
};

namespace {

using pdse::json;

thread_local std::string g_last_error;

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

pdse_status fail(pdse_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

pdse_status status_of(pdse::ErrorKind k) {
  switch (k) {
    case pdse::ErrorKind::kConfig: return PDSE_ERR_CONFIG;
    case pdse::ErrorKind::kDomain: return PDSE_ERR_DOMAIN;
    case pdse::ErrorKind::kInfeasible:
    case pdse::ErrorKind::kInfeasibleDesign: return PDSE_ERR_INFEASIBLE;
    case pdse::ErrorKind::kNumerical: return PDSE_ERR_NUMERICAL;
    case pdse::ErrorKind::kIo: return PDSE_ERR_IO;
  }
  return PDSE_ERR_INTERNAL;
}

template <class F>
pdse_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return PDSE_OK;
  } catch (const ArgumentError& e) {
    return fail(PDSE_ERR_ARGUMENT, e.what());
  } catch (const pdse::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const json::exception& e) {
    return fail(PDSE_ERR_ARGUMENT, std::string("malformed JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(PDSE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PDSE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PDSE_ERR_INTERNAL, "unknown failure");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw ArgumentError(std::string(what) + " is null");
}

// Caller-supplied names are argument errors, not configuration errors.
template <class Parse>
auto parse_name(Parse parse, const char* s, const char* what) {
  need(s, what);
  try {
    return parse(s);
  } catch (const pdse::ConfigError& e) {
    throw ArgumentError(e.what());
  }
}

pdse::Scheme scheme_of(const char* s) { return parse_name(pdse::parse_scheme, s, "scheme"); }
pdse::Architecture profile_of(const char* s) { return parse_name(pdse::parse_architecture, s, "profile"); }
pdse::DesignGoal goal_of(const char* s) { return parse_name(pdse::parse_goal, s, "goal"); }

struct Query {
  pdse::Scheme scheme;
  pdse::Architecture profile;
  pdse::DesignGoal goal;
  std::optional<double> er_db;
};

Query query_of(const pdse_query* q) {
  need(q, "query");
  Query r{scheme_of(q->scheme), profile_of(q->profile), goal_of(q->goal), std::nullopt};
  if (!std::isnan(q->er_db)) r.er_db = q->er_db;
  return r;
}

json parse_json(const char* text, const char* what) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw ArgumentError(std::string(what) + " must be a JSON object");
  return j;
}

template <class T, class Parse>
std::vector<T> list_of(const json& j, const char* key, Parse parse, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<T> out;
  for (const auto& v : j.at(key)) {
    try {
      out.push_back(parse(v.get<std::string>()));
    } catch (const pdse::ConfigError& e) {
      throw ArgumentError(e.what());
    }
  }
  return out;
}

template <class T, std::size_t N>
std::vector<T> all_of(const std::array<T, N>& a) {
  return {a.begin(), a.end()};
}

std::string str_or(const json& j, const char* key, const char* fallback) {
  return j.contains(key) ? j.at(key).get<std::string>() : std::string(fallback);
}

// Design point for a simulation request: explicit record, forced duplet or searched optimum.
pdse::DesignPoint design_for(const pdse_model& m, const json& o) {
  if (o.contains("design")) return pdse::design_point_from_json(o.at("design"));
  const auto s = scheme_of(str_or(o, "scheme", "ook").c_str());
  const auto a = profile_of(str_or(o, "profile", "clos").c_str());
  const auto g = goal_of(str_or(o, "goal", "balanced").c_str());
  std::optional<double> er;
  if (o.contains("er_db") && !o.at("er_db").is_null()) er = pdse::number_from(o.at("er_db"));
  if (o.contains("n_lambda") || o.contains("baud_gbaud")) {
    if (!o.contains("n_lambda") || !o.contains("baud_gbaud"))
      throw ArgumentError("a forced duplet needs both n_lambda and baud_gbaud");
    return m.ex->evaluate(s, a, g, er, o.at("n_lambda").get<int>(), pdse::number_from(o.at("baud_gbaud")));
  }
  return m.ex->search_optimal(s, a, g, er);
}

}  // namespace

extern "C" {

const char* pdse_version(void) { return PDSE_VERSION; }

const char* pdse_last_error(void) { return g_last_error.c_str(); }

const char* pdse_status_name(pdse_status s) {
  switch (s) {
    case PDSE_OK: return "ok";
    case PDSE_ERR_ARGUMENT: return "argument";
    case PDSE_ERR_CONFIG: return "config";
    case PDSE_ERR_DOMAIN: return "domain";
    case PDSE_ERR_INFEASIBLE: return "infeasible";
    case PDSE_ERR_NUMERICAL: return "numerical";
    case PDSE_ERR_IO: return "io";
    case PDSE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void pdse_free(void* p) { std::free(p); }

pdse_status pdse_model_create(pdse_model** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pdse_model(pdse::ModelConfig{});
  });
}

pdse_status pdse_model_load(const char* ini_path, pdse_model** out) {
  return guarded([&] {
    need(ini_path, "path");
    need(out, "out");
    *out = new pdse_model(pdse::ModelConfig::from_ini_file(ini_path));
  });
}

pdse_status pdse_model_parse(const char* ini_text, pdse_model** out) {
  return guarded([&] {
    need(ini_text, "text");
    need(out, "out");
    *out = new pdse_model(pdse::ModelConfig::from_ini_text(ini_text));
  });
}

void pdse_model_destroy(pdse_model* m) { delete m; }

pdse_status pdse_model_set(pdse_model* m, const char* section, const char* key, const char* value) {
  return guarded([&] {
    need(m, "model");
    need(section, "section");
    need(key, "key");
    need(value, "value");
    pdse::ModelConfig next = m->cfg;  // leave the model untouched on failure
    next.set(section, key, value);
    next.validate();
    m->cfg = std::move(next);
    m->rebuild();
  });
}

pdse_status pdse_model_to_ini(const pdse_model* m, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    *out = dup(m->cfg.to_ini());
  });
}

pdse_status pdse_optimize(const pdse_model* m, const pdse_query* q, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const Query r = query_of(q);
    *out = dup(pdse::to_json(m->ex->search_optimal(r.scheme, r.profile, r.goal, r.er_db)).dump());
  });
}

pdse_status pdse_evaluate(const pdse_model* m, const pdse_query* q, int n_lambda, double baud_gbaud, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const Query r = query_of(q);
    if (n_lambda < 1) throw ArgumentError("n_lambda must be positive");
    if (!(baud_gbaud > 0.0)) throw ArgumentError("baud rate must be positive");
    *out = dup(pdse::to_json(m->ex->evaluate(r.scheme, r.profile, r.goal, r.er_db, n_lambda, baud_gbaud)).dump());
  });
}

pdse_status pdse_frontier(const pdse_model* m, const pdse_query* q, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const Query r = query_of(q);
    json arr = json::array();
    for (const auto& d : m->ex->ranked_frontier(r.scheme, r.profile, r.goal, r.er_db)) arr.push_back(pdse::to_json(d));
    *out = dup(arr.dump());
  });
}

pdse_status pdse_report(const pdse_model* m, const char* design_json, char** out) {
  return guarded([&] {
    need(m, "model");
    need(design_json, "design");
    need(out, "out");
    const json in = json::parse(design_json);
    const pdse::DesignPoint loaded = pdse::design_point_from_json(in);
    const pdse::DesignPoint again =
        m->ex->evaluate(loaded.scheme, loaded.profile, loaded.goal, loaded.er_db, loaded.n_lambda, loaded.baud_gbaud);
    json r;
    r["loaded"] = pdse::to_json(loaded);
    r["recomputed"] = pdse::to_json(again);
    // Bitwise comparison of the serialized records: the loader keeps full precision.
    r["consistent"] = pdse::to_json(loaded).dump() == pdse::to_json(again).dump();
    *out = dup(r.dump());
  });
}

pdse_status pdse_sweep(const pdse_model* m, const char* request_json, pdse_format fmt, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const json o = parse_json(request_json, "sweep request");
    pdse::SweepRequest req;
    req.goals = list_of(o, "goals", pdse::parse_goal, all_of(pdse::kAllGoals));
    req.profiles = list_of(o, "profiles", pdse::parse_architecture, all_of(pdse::kAllArchitectures));
    req.schemes = list_of(o, "schemes", pdse::parse_scheme, all_of(pdse::kAllSchemes));
    if (o.contains("er_list")) {
      std::vector<double> ers;
      for (const auto& v : o.at("er_list")) ers.push_back(pdse::number_from(v));
      req.er_list = ers;
    }
    const auto rows = m->ex->sweep(req);
    switch (fmt) {
      case PDSE_FORMAT_CSV: *out = dup(pdse::sweep_csv(rows)); break;
      case PDSE_FORMAT_TEXT: *out = dup(pdse::sweep_text(rows)); break;
      case PDSE_FORMAT_JSON: {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(pdse::to_json(r));
        *out = dup(arr.dump());
        break;
      }
      default: throw ArgumentError("unknown output format");
    }
  });
}

pdse_status pdse_ber(const pdse_model* m, const char* scheme, const char* profile, int n_lambda, double baud_gbaud,
                     char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    if (n_lambda < 1) throw ArgumentError("n_lambda must be positive");
    if (!(baud_gbaud > 0.0)) throw ArgumentError("baud rate must be positive");
    const auto s = scheme_of(scheme);
    const auto a = profile_of(profile);
    json r = pdse::to_json(m->ex->ber_at(s, n_lambda, baud_gbaud, a));
    r["scheme"] = pdse::to_string(s);
    r["profile"] = pdse::to_string(a);
    r["n_lambda"] = n_lambda;
    r["baud_gbaud"] = baud_gbaud;
    *out = dup(r.dump());
  });
}

pdse_status pdse_ledger(const pdse_model* m, const char* scheme, int n_lambda, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const auto s = scheme_of(scheme);
    const auto l = pdse::ledger_for(s, n_lambda, m->cfg.sim.packet_bits, m->cfg.energy);
    *out = dup(pdse::to_json(l, m->cfg.energy).dump());
  });
}

pdse_status pdse_simulate(const pdse_model* m, const char* options_json, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const json o = parse_json(options_json, "simulation options");
    const pdse::DesignPoint d = design_for(*m, o);
    pdse::SimConfig base = pdse::SimConfig::from_design(d, m->cfg);
    if (o.contains("pattern")) {
      try {
        base.pattern = pdse::parse_traffic_pattern(o.at("pattern").get<std::string>());
      } catch (const pdse::ConfigError& e) {
        throw ArgumentError(e.what());
      }
    }
    if (o.contains("seed")) base.seed = o.at("seed").get<std::uint64_t>();
    if (o.contains("single_src")) base.single_src = o.at("single_src").get<int>();
    if (o.contains("single_dst")) base.single_dst = o.at("single_dst").get<int>();
    if (o.contains("single_cycle")) base.single_cycle = o.at("single_cycle").get<long>();

    std::vector<double> rates;
    if (o.contains("injection_rates")) {
      for (const auto& v : o.at("injection_rates")) rates.push_back(v.get<double>());
      if (rates.empty()) throw ArgumentError("injection_rates is empty");
    } else {
      rates.push_back(o.value("injection_rate", 0.0));
    }
    for (double r : rates) {
      pdse::SimConfig c = base;
      c.injection_rate = r;
      c.validate();
    }
    // Independent runs; each is deterministic, results keep ladder order.
    std::vector<std::future<pdse::SimReport>> jobs;
    for (double r : rates) {
      pdse::SimConfig c = base;
      c.injection_rate = r;
      jobs.push_back(std::async(std::launch::async, [c] { return pdse::simulate(c); }));
    }
    std::vector<pdse::SimReport> runs;
    for (auto& j : jobs) runs.push_back(j.get());

    if (!o.contains("injection_rates")) {
      json r = pdse::to_json(runs.front());
      r["design"] = pdse::to_json(d);
      *out = dup(r.dump());
      return;
    }
    json r;
    r["design"] = pdse::to_json(d);
    r["runs"] = json::array();
    for (const auto& s : runs) r["runs"].push_back(pdse::to_json(s));
    r["ladder_csv"] = pdse::latency_ladder_csv(runs);
    *out = dup(r.dump());
  });
}

pdse_status pdse_compare_variants(const pdse_model* m, const char* options_json, char** out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const json o = parse_json(options_json, "comparison options");
    const auto schemes = list_of(o, "schemes", pdse::parse_scheme, all_of(pdse::kAllSchemes));
    if (schemes.empty()) throw ArgumentError("no schemes to compare");
    const auto a = profile_of(str_or(o, "profile", "clos").c_str());
    const auto g = goal_of(str_or(o, "goal", "balanced").c_str());
    pdse::TrafficPattern pat = pdse::TrafficPattern::kUniformRandom;
    if (o.contains("pattern")) {
      try {
        pat = pdse::parse_traffic_pattern(o.at("pattern").get<std::string>());
      } catch (const pdse::ConfigError& e) {
        throw ArgumentError(e.what());
      }
    }
    const auto res = pdse::compare_variants(*m->ex, schemes, a, g, o.value("injection_rate", 0.01),
                                            o.value("seed", std::uint64_t{1}), pat);
    json arr = json::array();
    for (const auto& v : res) arr.push_back(pdse::to_json(v));
    *out = dup(arr.dump());
  });
}

pdse_status pdse_calibrate(pdse_model* m, const char* golden_dir, char** report_out) {
  return guarded([&] {
    need(m, "model");
    need(golden_dir, "golden_dir");
    const auto rows = pdse::load_golden_dir(golden_dir);
    pdse::CalibrationReport rep = pdse::calibrate(m->cfg, rows, m->cache);
    const std::string text = report_out ? pdse::to_json(rep).dump() : std::string();
    m->cfg = std::move(rep.fitted);
    m->rebuild();
    if (report_out) *report_out = dup(text);
  });
}

pdse_status pdse_manifest(const pdse_model* m, const char* verb, const char* args_json, const char* outputs_json,
                          char** out) {
  return guarded([&] {
    need(m, "model");
    need(verb, "verb");
    need(out, "out");
    const json args = parse_json(args_json, "args");
    std::vector<std::string> outputs;
    if (outputs_json && *outputs_json) outputs = json::parse(outputs_json).get<std::vector<std::string>>();
    *out = dup(pdse::make_manifest(verb, m->cfg, args, outputs).dump());
  });
}

pdse_status pdse_secded_encode(uint64_t word, uint64_t* data_out, uint8_t* check_out) {
  return guarded([&] {
    need(data_out, "data_out");
    need(check_out, "check_out");
    const auto cw = pdse::secded::encode(word);
    *data_out = cw.data;
    *check_out = cw.check;
  });
}

pdse_status pdse_secded_decode(uint64_t data, uint8_t check, uint64_t* word_out, pdse_secded_status* status_out,
                               int* corrected_bit_out) {
  return guarded([&] {
    need(word_out, "word_out");
    need(status_out, "status_out");
    const auto d = pdse::secded::decode(pdse::secded::Codeword{data, check});
    *word_out = d.data;
    *status_out = static_cast<pdse_secded_status>(static_cast<int>(d.status));
    if (corrected_bit_out) *corrected_bit_out = d.corrected_bit;
  });
}

pdse_status pdse_fec_threshold(int packet_bits, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = pdse::fec_threshold(packet_bits);
  });
}

}  // extern "C"
