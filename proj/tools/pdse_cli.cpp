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

// pdse command-line front end. Talks to the library only through pdse.h.
//
// Each verb is driven by a JSON argument record built from the flags; the
// same record goes into the run manifest, so `pdse rerun --manifest FILE`
// replays a run through the identical code path.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdse/pdse.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit {
  kOk = 0,
  kUsage = 2,
  kConfig = 3,
  kInfeasible = 4,
  kNumerical = 5,
  kIo = 6,
  kDomain = 7,
  kInternal = 8,
};

struct Failure {
  int code;
  std::string kind;
  std::string message;
};

int exit_for(pdse_status s) {
  switch (s) {
    case PDSE_OK: return kOk;
    case PDSE_ERR_ARGUMENT: return kUsage;
    case PDSE_ERR_CONFIG: return kConfig;
    case PDSE_ERR_INFEASIBLE: return kInfeasible;
    case PDSE_ERR_NUMERICAL: return kNumerical;
    case PDSE_ERR_IO: return kIo;
    case PDSE_ERR_DOMAIN: return kDomain;
    default: return kInternal;
  }
}

[[noreturn]] void raise(int code, const std::string& kind, const std::string& msg) { throw Failure{code, kind, msg}; }

void check(pdse_status s) {
  if (s != PDSE_OK) raise(exit_for(s), pdse_status_name(s), pdse_last_error());
}

// Owns a string handed out by the library.
std::string take(char* p) {
  std::string s = p ? p : "";
  pdse_free(p);
  return s;
}

struct Model {
  pdse_model* h = nullptr;
  ~Model() { pdse_model_destroy(h); }
};

std::string read_file(const std::string& path, int code, const char* kind) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(code, kind, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Temp file in the target directory, then rename: readers never see a partial artifact.
void write_atomic(const std::string& path, const std::string& text) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) raise(kIo, "io", "cannot write '" + tmp.string() + "'");
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      raise(kIo, "io", "short write to '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(kIo, "io", "cannot rename onto '" + path + "'");
  }
}

std::string basename_of(const std::string& p) { return fs::path(p).filename().string(); }

// One artifact to emit. Names recorded in the manifest are base names so a
// rerun into another directory reproduces the bytes.
struct Artifact {
  std::string path;
  std::string text;
};

struct Outcome {
  std::vector<Artifact> files;  // written when --out is set
  std::string primary;          // printed when --out is absent
  std::string summary;          // printed when --out is set
};

std::string sidecar(const std::string& out, const char* suffix) {
  const fs::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

json parse_doc(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(kUsage, "argument", what + " is not valid JSON: " + e.what());
  }
}

// A result file is {"manifest":..., "result":...}; bare records are accepted too.
json unwrap(const json& doc) { return doc.is_object() && doc.contains("result") ? doc.at("result") : doc; }

std::string fmt2(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

pdse_query query_from(const json& a, std::string& scheme, std::string& profile, std::string& goal) {
  scheme = a.value("scheme", "ook");
  profile = a.value("profile", "clos");
  goal = a.value("goal", "balanced");
  pdse_query q{scheme.c_str(), profile.c_str(), goal.c_str(), std::numeric_limits<double>::quiet_NaN()};
  if (a.contains("er") && !a.at("er").is_null()) q.er_db = a.at("er").get<double>();
  return q;
}

std::string format_of(const json& a, const char* fallback, std::initializer_list<const char*> allowed) {
  const std::string f = a.value("format", fallback);
  for (const char* x : allowed)
    if (f == x) return f;
  raise(kUsage, "argument", "format '" + f + "' is not available for this verb");
}

std::string design_summary(const json& d) {
  std::ostringstream o;
  o << d.at("scheme").get<std::string>() << " " << d.at("profile").get<std::string>() << " "
    << d.at("goal").get<std::string>() << " ER=" << d.at("er_db").dump() << ": N=" << d.at("n_lambda").get<int>()
    << " BR=" << d.at("bitrate_gbps").dump() << " Gb/s, PP+10logN=" << d.at("penalty_plus_10logn_db").dump()
    << " dB, laser=" << d.at("laser_power_dbm").dump() << " dBm, slack=" << d.at("slack_db").dump() << " dB\n";
  return o.str();
}

json wrap(const json& manifest, const json& result) {
  json j;
  j["manifest"] = manifest;
  j["result"] = result;
  return j;
}

// ---- verbs ----------------------------------------------------------------

using Manifest = std::function<json(const std::vector<std::string>&)>;

Outcome run_optimize(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  const std::string f = format_of(a, "json", {"json", "csv"});
  std::string s, p, g;
  const pdse_query q = query_from(a, s, p, g);
  char* raw = nullptr;
  check(pdse_optimize(m, &q, &raw));
  const json d = json::parse(take(raw));
  Outcome o;
  o.summary = design_summary(d);
  if (f == "json") {
    const std::string text = wrap(manifest({basename_of(out)}), d).dump(2) + "\n";
    o.primary = text;
    o.files.push_back({out, text});
    return o;
  }
  json req;
  req["goals"] = {g};
  req["profiles"] = {p};
  req["schemes"] = {s};
  req["er_list"] = {d.at("er_db")};
  check(pdse_sweep(m, req.dump().c_str(), PDSE_FORMAT_CSV, &raw));
  o.primary = take(raw);
  const std::string mf = sidecar(out, ".manifest.json");
  o.files.push_back({out, o.primary});
  o.files.push_back({mf, manifest({basename_of(out), basename_of(mf)}).dump(2) + "\n"});
  return o;
}

Outcome run_sweep(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  const std::string f = format_of(a, "csv", {"csv", "json", "text"});
  json req = json::object();
  for (const char* k : {"goals", "profiles", "schemes", "er_list"})
    if (a.contains(k) && !a.at(k).empty()) req[k] = a.at(k);
  const std::string body = req.dump();
  char* raw = nullptr;
  Outcome o;
  if (f == "json") {
    check(pdse_sweep(m, body.c_str(), PDSE_FORMAT_JSON, &raw));
    o.primary = wrap(manifest({basename_of(out)}), json::parse(take(raw))).dump(2) + "\n";
    o.files.push_back({out, o.primary});
  } else {
    check(pdse_sweep(m, body.c_str(), f == "csv" ? PDSE_FORMAT_CSV : PDSE_FORMAT_TEXT, &raw));
    o.primary = take(raw);
    const std::string mf = sidecar(out, ".manifest.json");
    o.files.push_back({out, o.primary});
    o.files.push_back({mf, manifest({basename_of(out), basename_of(mf)}).dump(2) + "\n"});
  }
  if (f == "text") {
    o.summary = o.primary;
  } else {
    check(pdse_sweep(m, body.c_str(), PDSE_FORMAT_TEXT, &raw));  // banks are cached; this is cheap
    o.summary = take(raw);
  }
  return o;
}

Outcome run_ber(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  format_of(a, "json", {"json"});
  std::string s, p, g;
  pdse_query q = query_from(a, s, p, g);
  char* raw = nullptr;
  json result;
  int n = a.value("n_lambda", 0);
  double baud = a.value("baud_gbaud", 0.0);
  if (n == 0 && baud == 0.0) {
    check(pdse_optimize(m, &q, &raw));
    const json d = json::parse(take(raw));
    n = d.at("n_lambda").get<int>();
    baud = d.at("baud_gbaud").get<double>();
    result["design"] = d;
  } else if (n == 0 || baud == 0.0) {
    raise(kUsage, "argument", "ber needs both --n and --baud, or neither");
  }
  check(pdse_ber(m, q.scheme, q.profile, n, baud, &raw));
  result["ber"] = json::parse(take(raw));
  Outcome o;
  const json& b = result["ber"];
  o.summary = s + " " + p + " N=" + std::to_string(n) + " BaR=" + json(baud).dump() +
              " Gbaud: BER=" + b.at("ber").dump() + " (FEC threshold " + b.at("fec_threshold").dump() + ", " +
              (b.at("passes_fec").get<bool>() ? "passes" : "fails") + ")\n";
  o.primary = wrap(manifest({basename_of(out)}), result).dump(2) + "\n";
  o.files.push_back({out, o.primary});
  return o;
}

Outcome run_ledger(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  format_of(a, "json", {"json"});
  std::vector<std::string> schemes = a.value("schemes", std::vector<std::string>{});
  if (schemes.empty()) schemes = {"ook", "pam4_ss", "pam4_edac", "pam4_odac"};
  std::vector<int> ns = a.value("n_list", std::vector<int>{});
  if (ns.empty()) ns = {16, 32, 64};
  json arr = json::array();
  std::ostringstream sum;
  for (const auto& s : schemes)
    for (int n : ns) {
      char* raw = nullptr;
      check(pdse_ledger(m, s.c_str(), n, &raw));
      json l = json::parse(take(raw));
      sum << s << " N=" << n << ": " << l.at("counts").at("total_mrs").get<int>() << " MRs, raw EPB "
          << fmt2(l.at("epb_pj_per_bit").at("raw_total").get<double>()) << " pJ/bit\n";
      arr.push_back(std::move(l));
    }
  Outcome o;
  o.summary = sum.str();
  o.primary = wrap(manifest({basename_of(out)}), arr).dump(2) + "\n";
  o.files.push_back({out, o.primary});
  return o;
}

Outcome run_simulate(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  const std::string f = format_of(a, "json", {"json", "csv"});
  json opt;
  for (const char* k : {"scheme", "profile", "goal", "pattern", "seed", "n_lambda", "baud_gbaud", "design"})
    if (a.contains(k)) opt[k] = a.at(k);
  if (a.contains("er")) opt["er_db"] = a.at("er");
  const std::vector<double> rates = a.value("rates", std::vector<double>{0.01});
  const bool ladder = rates.size() > 1 || f == "csv";
  if (ladder) opt["injection_rates"] = rates;
  else opt["injection_rate"] = rates.front();
  char* raw = nullptr;
  check(pdse_simulate(m, opt.dump().c_str(), &raw));
  const json r = json::parse(take(raw));
  Outcome o;
  std::ostringstream sum;
  const json runs = ladder ? r.at("runs") : json::array({r});
  sum << design_summary(r.at("design"));
  for (const auto& run : runs)
    sum << "  rate " << run.at("config").at("injection_rate").dump() << ": mean "
        << run.at("latency_ns").at("mean").dump() << " ns, EPB " << run.at("epb_pj").at("total").dump()
        << " pJ/bit" << (run.at("throughput").at("saturated").get<bool>() ? " (saturated)" : "") << "\n";
  o.summary = sum.str();
  if (f == "csv") {
    o.primary = r.at("ladder_csv").get<std::string>();
    const std::string mf = sidecar(out, ".manifest.json");
    o.files.push_back({out, o.primary});
    o.files.push_back({mf, manifest({basename_of(out), basename_of(mf)}).dump(2) + "\n"});
    return o;
  }
  if (ladder) {
    const std::string lc = sidecar(out, ".ladder.csv");
    const json wrapped = wrap(manifest({basename_of(out), basename_of(lc)}), r);
    o.primary = wrapped.dump(2) + "\n";
    o.files.push_back({out, o.primary});
    o.files.push_back({lc, r.at("ladder_csv").get<std::string>()});
  } else {
    o.primary = wrap(manifest({basename_of(out)}), r).dump(2) + "\n";
    o.files.push_back({out, o.primary});
  }
  return o;
}

Outcome run_compare(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  format_of(a, "json", {"json"});
  json opt;
  for (const char* k : {"schemes", "profile", "goal", "pattern", "seed"})
    if (a.contains(k)) opt[k] = a.at(k);
  const std::vector<double> rates = a.value("rates", std::vector<double>{0.01});
  if (rates.size() != 1) raise(kUsage, "argument", "compare takes a single --rate");
  opt["injection_rate"] = rates.front();
  char* raw = nullptr;
  check(pdse_compare_variants(m, opt.dump().c_str(), &raw));
  const json r = json::parse(take(raw));
  std::ostringstream sum;
  for (const auto& v : r)
    sum << v.at("scheme").get<std::string>() << ": latency x" << v.at("latency_ratio").dump() << ", EPB x"
        << v.at("epb_ratio").dump() << "\n";
  Outcome o;
  o.summary = sum.str();
  o.primary = wrap(manifest({basename_of(out)}), r).dump(2) + "\n";
  o.files.push_back({out, o.primary});
  return o;
}

Outcome run_report(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  const std::string f = format_of(a, "json", {"json", "csv"});
  char* raw = nullptr;
  Outcome o;
  if (a.contains("design")) {
    if (f != "json") raise(kUsage, "argument", "a loaded design is reported as JSON");
    check(pdse_report(m, a.at("design").dump().c_str(), &raw));
    const json r = json::parse(take(raw));
    o.summary = design_summary(r.at("recomputed")) +
                (r.at("consistent").get<bool>() ? "loaded record matches the model\n"
                                                : "loaded record differs from the model\n");
    o.primary = wrap(manifest({basename_of(out)}), r).dump(2) + "\n";
    o.files.push_back({out, o.primary});
    return o;
  }
  std::string s, p, g;
  const pdse_query q = query_from(a, s, p, g);
  check(pdse_frontier(m, &q, &raw));
  const json fr = json::parse(take(raw));
  int feasible = 0;
  for (const auto& d : fr) feasible += d.at("feasible").get<bool>();
  o.summary = s + " " + p + " " + g + ": " + std::to_string(feasible) + " of " + std::to_string(fr.size()) +
              " duplets feasible\n";
  if (!fr.empty() && fr.front().at("feasible").get<bool>()) o.summary += "optimum " + design_summary(fr.front());
  if (f == "json") {
    o.primary = wrap(manifest({basename_of(out)}), fr).dump(2) + "\n";
    o.files.push_back({out, o.primary});
    return o;
  }
  std::ostringstream csv;
  csv << "rank,n_lambda,baud_gbaud,br_gbps,aggregate_gbps,p_budget_db,pp_plus_10logn_db,slack_db,feasible,reason\n";
  int rank = 0;
  for (const auto& d : fr) {
    auto num = [](const json& v) { return v.is_number() ? fmt2(v.get<double>()) : v.get<std::string>(); };
    csv << ++rank << "," << d.at("n_lambda").get<int>() << "," << d.at("baud_gbaud").dump() << ","
        << d.at("bitrate_gbps").dump() << "," << d.at("aggregate_gbps").dump() << "," << num(d.at("power_budget_db"))
        << "," << num(d.at("penalty_plus_10logn_db")) << "," << num(d.at("slack_db")) << ","
        << (d.at("feasible").get<bool>() ? 1 : 0) << ",\"" << d.at("infeasible_reason").get<std::string>() << "\"\n";
  }
  o.primary = csv.str();
  const std::string mf = sidecar(out, ".manifest.json");
  o.files.push_back({out, o.primary});
  o.files.push_back({mf, manifest({basename_of(out), basename_of(mf)}).dump(2) + "\n"});
  return o;
}

Outcome run_calibrate(pdse_model* m, const json& a, const std::string& out, const Manifest& manifest) {
  format_of(a, "ini", {"ini"});
  const std::string golden = a.value("golden", std::string(PDSE_DATA_DIR));
  // Manifest first: it records the configuration calibrate started from.
  const std::string rep_path = sidecar(out, ".calibration.json");
  const std::string mf = sidecar(out, ".manifest.json");
  const json man = manifest({basename_of(out), basename_of(rep_path), basename_of(mf)});
  char* raw = nullptr;
  check(pdse_calibrate(m, golden.c_str(), &raw));
  const json rep = json::parse(take(raw));
  check(pdse_model_to_ini(m, &raw));
  const std::string ini = take(raw);

  std::ostringstream sum;
  const json& ch = rep.at("chosen");
  sum << "chosen: xi=" << ch.at("xi_convention").get<std::string>()
      << " through=" << ch.at("through_loss_mode").get<std::string>() << ", " << ch.at("matched_rows").get<int>() << "/"
      << rep.at("rows_used").get<int>() << " calibration rows matched, residual " << ch.at("residual_db").dump()
      << " dB\n";
  Outcome o;
  o.summary = sum.str();
  o.primary = ini;
  o.files.push_back({out, ini});
  o.files.push_back({rep_path, wrap(man, rep).dump(2) + "\n"});
  o.files.push_back({mf, man.dump(2) + "\n"});
  return o;
}

Outcome dispatch(const std::string& verb, pdse_model* m, const json& args, const std::string& out,
                 const Manifest& manifest) {
  if (verb == "optimize") return run_optimize(m, args, out, manifest);
  if (verb == "sweep") return run_sweep(m, args, out, manifest);
  if (verb == "ber") return run_ber(m, args, out, manifest);
  if (verb == "ledger") return run_ledger(m, args, out, manifest);
  if (verb == "simulate") return run_simulate(m, args, out, manifest);
  if (verb == "compare") return run_compare(m, args, out, manifest);
  if (verb == "report") return run_report(m, args, out, manifest);
  if (verb == "calibrate") return run_calibrate(m, args, out, manifest);
  raise(kUsage, "argument", "unknown verb '" + verb + "'");
}

void emit(const Outcome& o, const std::string& out) {
  if (out.empty()) {
    std::cout << o.primary;
    if (!o.primary.empty() && o.primary.back() != '\n') std::cout << "\n";
    return;
  }
  for (const auto& f : o.files) write_atomic(f.path, f.text);
  std::cout << o.summary;
  for (const auto& f : o.files) std::cout << "wrote " << f.path << "\n";
}

void open_model(Model& m, const std::string& config_path, const std::vector<std::string>& sets) {
  if (config_path.empty()) check(pdse_model_create(&m.h));
  else {
    if (!fs::exists(config_path)) raise(kConfig, "config", "configuration file '" + config_path + "' does not exist");
    check(pdse_model_load(config_path.c_str(), &m.h));
  }
  for (const auto& s : sets) {
    const auto dot = s.find('.');
    const auto eq = s.find('=');
    if (dot == std::string::npos || eq == std::string::npos || eq < dot)
      raise(kUsage, "argument", "--set expects section.key=value, got '" + s + "'");
    // Section names may contain dots (scheme.ook); the key is after the last dot before '='.
    const auto key_dot = s.rfind('.', eq);
    check(pdse_model_set(m.h, s.substr(0, key_dot).c_str(), s.substr(key_dot + 1, eq - key_dot - 1).c_str(),
                         s.substr(eq + 1).c_str()));
  }
}

int run_verb(const std::string& verb, Model& model, const json& args, const std::string& out) {
  Manifest manifest = [&](const std::vector<std::string>& outputs) {
    char* raw = nullptr;
    const json outs = out.empty() ? json::array() : json(outputs);
    check(pdse_manifest(model.h, verb.c_str(), args.dump().c_str(), outs.dump().c_str(), &raw));
    return json::parse(take(raw));
  };
  const Outcome o = dispatch(verb, model.h, args, out, manifest);
  emit(o, out);
  return kOk;
}

void report_failure(const Failure& f) {
  json e;
  e["error"] = {{"kind", f.kind}, {"exit_code", f.code}, {"message", f.message}};
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdse: photonic link design-space explorer"};
  app.set_version_flag("--version", std::string(pdse_version()));
  app.require_subcommand(1);

  std::string config_path, out, format, golden, load, manifest_path;
  std::vector<std::string> sets, schemes, profiles, goals, patterns;
  std::vector<double> ers, rates;
  std::vector<int> n_list;
  std::optional<double> baud;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--config", config_path, "INI configuration (defaults when absent)")->envname("PDSE_CONFIG");
    sc->add_option("--set", sets, "Override one key: section.key=value (repeatable)");
    sc->add_option("--out", out, "Write artifacts here instead of printing to stdout");
    sc->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "text", "ini"}));
  };
  auto query = [&](CLI::App* sc, bool multi) {
    if (multi) {
      sc->add_option("--scheme", schemes, "Signaling scheme(s): ook, pam4_ss, pam4_edac, pam4_odac");
      sc->add_option("--profile", profiles, "PNoC profile(s): clos, swift");
      sc->add_option("--goal", goals, "Design goal(s): balanced, ber_optimal");
    } else {
      sc->add_option("--scheme", schemes, "Signaling scheme")->expected(1);
      sc->add_option("--profile", profiles, "PNoC profile")->expected(1);
      sc->add_option("--goal", goals, "Design goal")->expected(1);
    }
    sc->add_option("--er", ers, multi ? "Extinction ratio list, dB" : "Extinction ratio, dB")->expected(multi ? -1 : 1);
  };

  auto* opt = app.add_subcommand("optimize", "Minimum-slack feasible duplet for one configuration");
  common(opt);
  query(opt, false);
  auto* sweep = app.add_subcommand("sweep", "Optimal duplets over goals, profiles, schemes and ERs");
  common(sweep);
  query(sweep, true);
  auto* ber = app.add_subcommand("ber", "No-FEC BER at a duplet (the optimum when none is given)");
  common(ber);
  query(ber, false);
  ber->add_option("--n", n_list, "Wavelength count")->expected(1);
  ber->add_option("--baud", baud, "Baud rate, Gbaud");
  auto* ledger = app.add_subcommand("ledger", "Hardware counts, EPB and static power");
  common(ledger);
  ledger->add_option("--scheme", schemes, "Scheme(s); all when absent");
  ledger->add_option("--n", n_list, "Wavelength count(s); 16 32 64 when absent");
  auto* sim = app.add_subcommand("simulate", "Synthetic-traffic PNoC simulation");
  common(sim);
  query(sim, false);
  sim->add_option("--rate", rates, "Injection rate(s), packets/core/cycle; several form a ladder");
  sim->add_option("--pattern", patterns, "uniform_random, hotspot, permutation")->expected(1);
  sim->add_option("--seed", seed, "Traffic seed");
  sim->add_option("--load", load, "Simulate this DesignPoint record instead of searching");
  sim->add_option("--n", n_list, "Force the wavelength count")->expected(1);
  sim->add_option("--baud", baud, "Force the baud rate, Gbaud");
  auto* cmp = app.add_subcommand("compare", "Run scheme variants at a shared load and seed");
  common(cmp);
  cmp->add_option("--scheme", schemes, "Schemes; all when absent");
  cmp->add_option("--profile", profiles, "PNoC profile")->expected(1);
  cmp->add_option("--goal", goals, "Design goal")->expected(1);
  cmp->add_option("--rate", rates, "Injection rate")->expected(1);
  cmp->add_option("--pattern", patterns, "Traffic pattern")->expected(1);
  cmp->add_option("--seed", seed, "Traffic seed");
  auto* rep = app.add_subcommand("report", "Ranked frontier, or a consistency check of a loaded record");
  common(rep);
  query(rep, false);
  rep->add_option("--load", load, "DesignPoint record (bare or wrapped result file)");
  auto* cal = app.add_subcommand("calibrate", "Fit the open switches against the bundled golden tables");
  common(cal);
  cal->add_option("--golden", golden, "Directory holding golden_balanced.csv and golden_ber_optimal.csv")
      ->envname("PDSE_GOLDEN_DIR");
  auto* rerun = app.add_subcommand("rerun", "Replay a run from its manifest");
  rerun->add_option("--manifest", manifest_path, "Manifest, or a result file embedding one")->required();
  rerun->add_option("--out", out, "Write artifacts here instead of printing to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_failure({kUsage, "usage", e.what()});
    return kUsage;
  }

  try {
    Model model;
    CLI::App* sc = app.get_subcommands().front();
    const std::string verb = sc->get_name();

    if (verb == "rerun") {
      const json doc = parse_doc(read_file(manifest_path, kIo, "io"), "manifest");
      const json man = doc.contains("manifest") ? doc.at("manifest") : doc;
      if (!man.contains("config_ini") || !man.contains("verb") || !man.contains("args"))
        raise(kUsage, "argument", "'" + manifest_path + "' is not a run manifest");
      check(pdse_model_parse(man.at("config_ini").get<std::string>().c_str(), &model.h));
      return run_verb(man.at("verb").get<std::string>(), model, man.at("args"), out);
    }

    open_model(model, config_path, sets);
    json args = json::object();
    auto one = [](const std::vector<std::string>& v, const char* key, json& a) {
      if (!v.empty()) a[key] = v.front();
    };
    const bool multi = verb == "sweep";
    if (multi) {
      if (!schemes.empty()) args["schemes"] = schemes;
      if (!profiles.empty()) args["profiles"] = profiles;
      if (!goals.empty()) args["goals"] = goals;
      if (!ers.empty()) args["er_list"] = ers;
    } else if (verb == "ledger" || verb == "compare") {
      if (!schemes.empty()) args["schemes"] = schemes;
      if (verb == "ledger" && !n_list.empty()) args["n_list"] = n_list;
      one(profiles, "profile", args);
      one(goals, "goal", args);
    } else {
      one(schemes, "scheme", args);
      one(profiles, "profile", args);
      one(goals, "goal", args);
      if (!ers.empty()) args["er"] = ers.front();
      if (!n_list.empty()) args["n_lambda"] = n_list.front();
      if (baud) args["baud_gbaud"] = *baud;
    }
    if (!rates.empty()) args["rates"] = rates;
    one(patterns, "pattern", args);
    if (seed) args["seed"] = *seed;
    if (!format.empty()) args["format"] = format;
    if (!golden.empty()) args["golden"] = golden;
    // Loaded records are embedded so the manifest alone can replay the run.
    if (!load.empty()) args["design"] = unwrap(parse_doc(read_file(load, kIo, "io"), "'" + load + "'"));
    return run_verb(verb, model, args, out);
  } catch (const Failure& f) {
    report_failure(f);
    return f.code;
  } catch (const std::exception& e) {
    report_failure({kInternal, "internal", e.what()});
    return kInternal;
  }
}
