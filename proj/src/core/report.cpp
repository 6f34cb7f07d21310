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

#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace pdse {

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw ConfigError("expected a number in JSON record");
}

json to_json(const PenaltyBreakdown& b) {
  json j;
  j["goal"] = to_string(b.goal);
  j["p_mr_act"] = number(b.p_mr_act);
  j["p_mr_inact"] = number(b.p_mr_inact);
  j["p_wgp"] = number(b.p_wgp);
  j["p_wgb"] = number(b.p_wgb);
  j["p_sp"] = number(b.p_sp);
  j["p_c"] = number(b.p_c);
  j["pp_mod"] = number(b.pp_mod);
  j["pp_fil"] = number(b.pp_fil);
  j["pp_pam"] = number(b.pp_pam);
  j["pp_intrf"] = number(b.pp_intrf);
  j["pp_er"] = number(b.pp_er);
  j["total"] = number(b.total);
  j["included_crosstalk_terms"] = b.includes_crosstalk_terms();
  j["active_crosstalk_sum"] = number(b.active_sum);
  j["inactive_crosstalk_sum"] = number(b.inactive_sum);
  j["filter_crosstalk_sum"] = number(b.filter_sum);
  j["worst_filter"] = b.worst_filter;
  return j;
}

PenaltyBreakdown penalty_from_json(const json& j) {
  PenaltyBreakdown b;
  b.goal = parse_goal(j.at("goal").get<std::string>());
  b.p_mr_act = number_from(j.at("p_mr_act"));
  b.p_mr_inact = number_from(j.at("p_mr_inact"));
  b.p_wgp = number_from(j.at("p_wgp"));
  b.p_wgb = number_from(j.at("p_wgb"));
  b.p_sp = number_from(j.at("p_sp"));
  b.p_c = number_from(j.at("p_c"));
  b.pp_mod = number_from(j.at("pp_mod"));
  b.pp_fil = number_from(j.at("pp_fil"));
  b.pp_pam = number_from(j.at("pp_pam"));
  b.pp_intrf = number_from(j.at("pp_intrf"));
  b.pp_er = number_from(j.at("pp_er"));
  b.total = number_from(j.at("total"));
  b.active_sum = number_from(j.at("active_crosstalk_sum"));
  b.inactive_sum = number_from(j.at("inactive_crosstalk_sum"));
  b.filter_sum = number_from(j.at("filter_crosstalk_sum"));
  b.worst_filter = j.at("worst_filter").get<int>();
  return b;
}

json to_json(const DesignPoint& d) {
  json j;
  j["scheme"] = to_string(d.scheme);
  j["profile"] = to_string(d.profile);
  j["goal"] = to_string(d.goal);
  j["er_db"] = number(d.er_db);
  j["n_lambda"] = d.n_lambda;
  j["baud_gbaud"] = number(d.baud_gbaud);
  j["bitrate_gbps"] = number(d.bitrate_gbps);
  j["aggregate_gbps"] = number(d.aggregate_gbps);
  j["sensitivity_dbm"] = number(d.sensitivity_dbm);
  j["sensitivity_extrapolated"] = d.sensitivity_extrapolated;
  j["power_budget_db"] = number(d.power_budget_db);
  j["penalty_plus_10logn_db"] = number(d.penalty_plus_channels_db());
  j["slack_db"] = number(d.slack_db);
  j["laser_power_dbm"] = number(d.laser_power_dbm);
  j["feasible"] = d.feasible;
  j["infeasible_reason"] = d.infeasible_reason;
  j["penalty"] = to_json(d.penalty);
  return j;
}

DesignPoint design_point_from_json(const json& j) {
  DesignPoint d;
  d.scheme = parse_scheme(j.at("scheme").get<std::string>());
  d.profile = parse_architecture(j.at("profile").get<std::string>());
  d.goal = parse_goal(j.at("goal").get<std::string>());
  d.er_db = number_from(j.at("er_db"));
  d.n_lambda = j.at("n_lambda").get<int>();
  d.baud_gbaud = number_from(j.at("baud_gbaud"));
  d.bitrate_gbps = number_from(j.at("bitrate_gbps"));
  d.aggregate_gbps = number_from(j.at("aggregate_gbps"));
  d.sensitivity_dbm = number_from(j.at("sensitivity_dbm"));
  d.sensitivity_extrapolated = j.at("sensitivity_extrapolated").get<bool>();
  d.power_budget_db = number_from(j.at("power_budget_db"));
  d.slack_db = number_from(j.at("slack_db"));
  d.laser_power_dbm = number_from(j.at("laser_power_dbm"));
  d.feasible = j.at("feasible").get<bool>();
  d.infeasible_reason = j.at("infeasible_reason").get<std::string>();
  d.penalty = penalty_from_json(j.at("penalty"));
  return d;
}

json to_json(const BerReport& r) {
  json j;
  j["levels_m"] = r.levels_m;
  j["worst_snr"] = number(r.worst_snr);
  j["ber"] = number(r.ber);
  j["fec_threshold"] = number(r.fec_threshold);
  j["passes_fec"] = r.passes_fec;
  j["crosstalk_sum"] = number(r.crosstalk_sum);
  j["worst_filter"] = r.worst_filter;
  return j;
}

json to_json(const HardwareLedger& l, const EnergyConstants& e) {
  json j;
  j["scheme"] = to_string(l.scheme);
  j["n_lambda"] = l.n_lambda;
  j["packet_bits"] = l.packet_bits;
  j["counts"] = {{"mr_modulators", l.mr_modulators},   {"mr_filters", l.mr_filters},
                 {"photodetectors", l.photodetectors}, {"receiver_modules", l.receiver_modules},
                 {"serializers", l.serializers},       {"deserializers", l.deserializers},
                 {"modulator_drivers", l.modulator_drivers}, {"ti_opamps", l.ti_opamps},
                 {"co_opamps", l.co_opamps},           {"total_mrs", l.total_mrs}};
  j["buffer_width_bits"] = l.buffer_width_bits;
  j["buffer_width_rounded_up"] = l.buffer_width_rounded;
  j["epb_pj_per_bit"] = {{"driver", l.epb_driver_pj()},
                         {"serdes", l.epb_serdes_pj()},
                         {"co_opamp", l.epb_co_opamp_pj()},
                         {"ti_opamp", l.epb_ti_opamp_pj()},
                         {"raw_total", l.epb_raw_total_pj()},
                         {"per_transferred_bit", l.n_lambda > 0 ? l.epb_raw_total_pj() / l.n_lambda : 0.0}};
  j["epb_attojoule"] = {{"driver", l.epb_driver_aj},
                        {"serdes", l.epb_serdes_aj},
                        {"co_opamp", l.epb_co_opamp_aj},
                        {"ti_opamp", l.epb_ti_opamp_aj},
                        {"raw_total", l.epb_raw_total_aj()}};
  j["static"] = {{"tuning_control_uw", l.tuning_control_uw}, {"heater_uw_per_nm", l.heater_uw_per_nm}};
  if (l.heater_uw) j["static"]["heater_uw"] = *l.heater_uw;
  else j["static"]["heater_uw"] = nullptr;
  j["secded"] = {{"event_pj", e.secded_event_pj}, {"area_um2", e.secded_area_um2}, {"decode_cycles", e.secded_decode_cycles}};
  return j;
}

json to_json(const SweepRow& r) {
  json j;
  j["goal"] = to_string(r.goal);
  j["profile"] = to_string(r.profile);
  j["scheme"] = to_string(r.scheme);
  j["er_db"] = number(r.er_db);
  j["point"] = r.point ? to_json(*r.point) : json(nullptr);
  j["ber"] = r.ber ? to_json(*r.ber) : json(nullptr);
  j["error"] = r.error;
  return j;
}

json to_json(const SimConfig& c) {
  json j;
  j["architecture"] = to_string(c.architecture);
  j["scheme"] = to_string(c.scheme);
  j["goal"] = to_string(c.goal);
  j["n_lambda"] = c.n_lambda;
  j["baud_gbaud"] = number(c.baud_gbaud);
  j["laser_power_dbm"] = number(c.laser_power_dbm);
  j["injection_rate"] = c.injection_rate;
  j["pattern"] = to_string(c.pattern);
  j["seed"] = c.seed;
  if (c.pattern == TrafficPattern::kSinglePacket)
    j["single"] = {{"src", c.single_src}, {"dst", c.single_dst}, {"cycle", c.single_cycle}};
  j["warmup_cycles"] = c.sim.warmup_cycles;
  j["measure_cycles"] = c.sim.measure_cycles;
  j["drain_cycles"] = c.sim.drain_cycles;
  j["packet_bits"] = c.sim.packet_bits;
  j["wire_bits"] = wire_bits(c);
  j["router_cycles"] = c.sim.router_cycles;
  j["queue_capacity"] = c.sim.queue_capacity;
  return j;
}

json to_json(const SimReport& r) {
  json j;
  j["config"] = to_json(r.config);
  j["packets"] = {{"injected", r.packets_injected},
                  {"delivered", r.packets_delivered},
                  {"in_flight", r.packets_in_flight},
                  {"measured", r.packets_measured},
                  {"backpressure_stalls", r.backpressure_stalls},
                  {"max_queue_occupancy", r.max_queue_occupancy}};
  const double cyc = r.core_cycle_ns;
  j["latency_ns"] = {{"count", r.latency.count},   {"mean", r.latency.mean_ns}, {"median", r.latency.median_ns},
                     {"p99", r.latency.p99_ns},    {"min", r.latency.min_ns},   {"max", r.latency.max_ns}};
  j["latency_cycles"] = {{"mean", r.latency.mean_ns / cyc},
                         {"median", r.latency.median_ns / cyc},
                         {"p99", r.latency.p99_ns / cyc}};
  j["throughput"] = {{"offered", r.offered_rate}, {"accepted", r.accepted_rate}, {"saturated", r.saturated}};
  const auto& t = r.tally;
  j["energy_events"] = {{"photonic_packets", t.photonic_packets}, {"wire_bits", t.wire_bits},
                        {"payload_bits", t.payload_bits},         {"tsv_block_crossings", t.tsv_block_crossings},
                        {"secded_events", t.secded_events},       {"router_hops", t.router_hops}};
  j["energy_attojoule"] = {{"driver", t.driver_aj},  {"serdes", t.serdes_aj}, {"co_opamp", t.co_opamp_aj},
                           {"ti_opamp", t.ti_opamp_aj}, {"tsv", t.tsv_aj},     {"secded", t.secded_aj},
                           {"router", t.router_aj},  {"total", t.total_aj()}};
  j["epb_pj"] = {{"dynamic", r.epb_dynamic_pj}, {"total", r.epb_total_pj}};
  j["power_mw"] = {{"laser_wallplug", r.power.laser_wallplug_mw},
                   {"mr_tuning", r.power.mr_tuning_mw},
                   {"txrx_dynamic", r.power.txrx_dynamic_mw},
                   {"electrical", r.power.electrical_mw},
                   {"total", r.power.total_mw},
                   {"heater_included", r.heater_power_included},
                   {"laser_power_per_source", true}};
  return j;
}

json to_json(const VariantResult& v) {
  json j;
  j["scheme"] = to_string(v.scheme);
  j["design"] = to_json(v.design);
  j["latency_ratio"] = v.latency_ratio;
  j["epb_ratio"] = v.epb_ratio;
  j["report"] = to_json(v.report);
  return j;
}

json to_json(const RowOutcome& r) {
  json j;
  j["row"] = r.golden.key();
  j["reference"] = {{"n_lambda", r.golden.n_lambda}, {"br_gbps", r.golden.br_gbps},
                    {"pp_plus_10logn_db", r.golden.pp_plus_10logn_db}};
  j["found"] = r.found;
  j["n_lambda"] = r.n_lambda;
  j["br_gbps"] = r.br_gbps;
  j["duplet_match"] = r.duplet_match;
  j["forced_penalty_plus_10logn_db"] = r.forced_defined ? number(r.forced_penalty_db) : json(nullptr);
  j["error"] = r.error;
  return j;
}

json to_json(const CalibrationReport& r) {
  json j;
  auto cand = [](const CalibrationCandidate& c) {
    json k;
    k["xi_convention"] = to_string(c.xi);
    k["through_loss_mode"] = to_string(c.through);
    json df;
    for (Scheme s : kAllSchemes) df[std::string(to_string(s))] = c.delta_f_ghz[index_of(s)];
    k["delta_f_ghz"] = df;
    k["matched_rows"] = c.matched;
    k["residual_db"] = c.residual_db;
    return k;
  };
  j["rows_used"] = r.rows_used;
  j["chosen"] = cand(r.chosen);
  j["candidates"] = json::array();
  for (const auto& c : r.candidates) j["candidates"].push_back(cand(c));
  j["calibration_rows"] = json::array();
  for (const auto& o : r.calibration_rows) j["calibration_rows"].push_back(to_json(o));
  j["dropped_sensitivity_anchors"] = json::array();
  for (const auto& a : r.dropped_anchors) j["dropped_sensitivity_anchors"].push_back({a.baud_gbaud, a.s_dbm});
  return j;
}

const char* const kSweepCsvHeader =
    "goal,profile,scheme,er_db,p_budget_db,s_dbm,n_lambda,br_gbps,aggregate_gbps,pp_plus_10logn_db,laser_dbm,"
    "ber_no_fec,slack_db,error";

namespace {

std::string f2(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char b[48];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

std::string g(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  o << kSweepCsvHeader << "\n";
  for (const auto& r : rows) {
    o << to_string(r.goal) << "," << to_string(r.profile) << "," << to_string(r.scheme) << "," << g(r.er_db) << ",";
    if (r.point) {
      const DesignPoint& d = *r.point;
      o << f2(d.power_budget_db) << "," << f2(d.sensitivity_dbm) << "," << d.n_lambda << "," << g(d.bitrate_gbps)
        << "," << g(d.aggregate_gbps) << "," << f2(d.penalty_plus_channels_db()) << "," << f2(d.laser_power_dbm)
        << ",";
      if (r.ber) {
        char b[48];
        std::snprintf(b, sizeof b, "%.3e", r.ber->ber);
        o << b;
      }
      o << "," << f2(d.slack_db) << ",";
    } else {
      o << ",,,,,,,,,";
    }
    o << csv_field(r.error) << "\n";
  }
  return o.str();
}

const char* const kLadderCsvHeader =
    "injection_rate,offered,accepted,saturated,mean_latency_ns,median_latency_ns,p99_latency_ns,mean_latency_cycles,"
    "epb_dynamic_pj,epb_total_pj,total_power_mw";

std::string latency_ladder_csv(const std::vector<SimReport>& runs) {
  std::ostringstream o;
  o << kLadderCsvHeader << "\n";
  char b[512];
  for (const auto& r : runs) {
    std::snprintf(b, sizeof b, "%.6g,%.6g,%.6g,%d,%.4f,%.4f,%.4f,%.3f,%.4f,%.4f,%.3f\n", r.config.injection_rate,
                  r.offered_rate, r.accepted_rate, r.saturated ? 1 : 0, r.latency.mean_ns, r.latency.median_ns,
                  r.latency.p99_ns, r.mean_latency_cycles(), r.epb_dynamic_pj, r.epb_total_pj, r.power.total_mw);
    o << b;
  }
  return o.str();
}

std::string sweep_text(const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  char b[256];
  std::snprintf(b, sizeof b, "%-11s %-5s %-9s %5s %7s %7s %4s %6s %7s %8s %7s %10s\n", "goal", "prof", "scheme", "ER",
                "P_B", "S", "N", "BR", "N*BR", "PP+10lgN", "laser", "BER");
  o << b;
  for (const auto& r : rows) {
    if (!r.point) {
      std::snprintf(b, sizeof b, "%-11s %-5s %-9s %5s  %s\n", std::string(to_string(r.goal)).c_str(),
                    std::string(to_string(r.profile)).c_str(), std::string(to_string(r.scheme)).c_str(),
                    g(r.er_db).c_str(), r.error.c_str());
      o << b;
      continue;
    }
    const DesignPoint& d = *r.point;
    char ber[32] = "";
    if (r.ber) std::snprintf(ber, sizeof ber, "%.2e", r.ber->ber);
    std::snprintf(b, sizeof b, "%-11s %-5s %-9s %5s %7.2f %7.2f %4d %6g %7g %8.2f %7.2f %10s\n",
                  std::string(to_string(r.goal)).c_str(), std::string(to_string(r.profile)).c_str(),
                  std::string(to_string(r.scheme)).c_str(), g(r.er_db).c_str(), d.power_budget_db, d.sensitivity_dbm,
                  d.n_lambda, d.bitrate_gbps, d.aggregate_gbps, d.penalty_plus_channels_db(), d.laser_power_dbm, ber);
    o << b;
  }
  return o.str();
}

json make_manifest(const std::string& verb, const ModelConfig& cfg, const json& args,
                   const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "pdse";
  m["version"] = PDSE_VERSION;
  m["verb"] = verb;
  m["args"] = args;
  m["outputs"] = outputs;
  json sw;
  sw["xi_convention"] = to_string(cfg.xi);
  sw["through_loss_mode"] = to_string(cfg.through);
  sw["frequency_basis"] = to_string(cfg.frequency_basis);
  json df;
  for (Scheme s : kAllSchemes) df[std::string(to_string(s))] = cfg.schemes[index_of(s)].delta_f_hz / kGiga;
  sw["delta_f_ghz"] = df;
  sw["sensitivity_anchors"] = json::array();
  for (const auto& a : cfg.sensitivity.anchors()) sw["sensitivity_anchors"].push_back({a.baud_gbaud, a.s_dbm});
  sw["dropped_sensitivity_anchors"] = json::array();
  for (const auto& a : cfg.sensitivity.dropped()) sw["dropped_sensitivity_anchors"].push_back({a.baud_gbaud, a.s_dbm});
  m["switches"] = sw;
  m["config_ini"] = cfg.to_ini();
  return m;
}

}  // namespace pdse
