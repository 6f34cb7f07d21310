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

#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pdse {
namespace {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& where, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(where + ": expected a number, got '" + raw + "'");
  return v;
}

long to_long(const std::string& where, const std::string& raw) {
  const std::string s = trim(raw);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError(where + ": expected an integer, got '" + raw + "'");
  return v;
}

int to_int(const std::string& where, const std::string& raw) { return static_cast<int>(to_long(where, raw)); }

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : raw) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void apply_scheme(SignalingParams& p, const std::string& where, const std::string& key, const std::string& v) {
  if (key == "extinction_ratio_db") p.extinction_ratio_db = to_double(where, v);
  else if (key == "fwhm_ghz") p.fwhm_hz = to_double(where, v) * kGiga;
  else if (key == "q0") p.q0 = to_double(where, v);
  else if (key == "pp_pam_db") p.pp_pam_db = to_double(where, v);
  else if (key == "pp_intrf_db") p.pp_intrf_db = to_double(where, v);
  else if (key == "pp_er_db") p.pp_er_db = to_double(where, v);
  else if (key == "q_ber") p.q_ber = to_double(where, v);
  else if (key == "delta_f_ghz") p.delta_f_hz = to_double(where, v) * kGiga;
  else if (key == "e_mod_pj") p.e_mod_pj = to_double(where, v);
  else if (key == "drivers_per_modulator") p.drivers_per_modulator = to_int(where, v);
  else if (key == "modulators_per_channel") p.modulators_per_channel = to_int(where, v);
  else throw ConfigError("unknown key " + where);
}

void apply_profile(PnocProfile& p, const std::string& where, const std::string& key, const std::string& v) {
  if (key == "wg_length_cm") p.wg_length_cm = to_double(where, v);
  else if (key == "splitter_loss_db") p.splitter_loss_db = to_double(where, v);
  else if (key == "coupler_loss_db") p.coupler_loss_db = to_double(where, v);
  else if (key == "wg_prop_loss_db_per_cm") p.wg_prop_loss_db_per_cm = to_double(where, v);
  else if (key == "wg_bend_loss_db") p.wg_bend_loss_db = to_double(where, v);
  else if (key == "bend_count") p.bend_count = to_int(where, v);
  else if (key == "waveguide_count") p.waveguide_count = to_int(where, v);
  else if (key == "fsr_nm") p.fsr_nm = to_double(where, v);
  else if (key == "base_wavelength_nm") p.base_wavelength_nm = to_double(where, v);
  else if (key == "photonic_clock_ghz") p.photonic_clock_ghz = to_double(where, v);
  else if (key == "core_clock_ghz") p.core_clock_ghz = to_double(where, v);
  else throw ConfigError("unknown key " + where);
}

std::vector<SensitivityAnchor> parse_anchor_list(const std::string& where, const std::string& v) {
  std::vector<SensitivityAnchor> pts;
  for (const auto& item : split_list(v)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError(where + ": anchors are baud:dbm pairs");
    pts.push_back({to_double(where, item.substr(0, colon)), to_double(where, item.substr(colon + 1))});
  }
  return pts;
}

std::vector<SensitivityAnchor> raw_anchors(const SensitivityCurve& c) {
  std::vector<SensitivityAnchor> all = c.anchors();
  all.insert(all.end(), c.dropped().begin(), c.dropped().end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.baud_gbaud < b.baud_gbaud; });
  return all;
}

}  // namespace

ModelConfig::ModelConfig()
    : schemes{default_signaling(Scheme::kOok), default_signaling(Scheme::kPam4Ss),
              default_signaling(Scheme::kPam4Edac), default_signaling(Scheme::kPam4Odac)},
      clos(default_profile(Architecture::kClos)),
      swift(default_profile(Architecture::kSwift)),
      sensitivity(SensitivityCurve::from_anchors(default_sensitivity_anchors())) {}

double ModelConfig::pp_er(Scheme s, double er_db) const {
  if (!(er_db > 0.0)) throw DomainError("extinction ratio must be positive");
  const auto it = pp_er_table.find({s, er_db});
  if (it != pp_er_table.end()) return it->second;
  const SignalingParams& base = schemes[index_of(s)];
  if (er_db == base.extinction_ratio_db) return base.pp_er_db;
  auto term = [](double r_db) {
    const double r = db_to_linear(r_db);
    return linear_to_db((r + 1.0) / (r - 1.0));
  };
  return base.pp_er_db + term(er_db) - term(base.extinction_ratio_db);
}

SignalingParams ModelConfig::scheme_params(Scheme s, std::optional<double> er_db) const {
  SignalingParams p = schemes[index_of(s)];
  if (er_db) {
    p.pp_er_db = pp_er(s, *er_db);
    p.extinction_ratio_db = *er_db;
  }
  p.validate();
  return p;
}

std::vector<double> ModelConfig::default_er_list(Scheme s) const {
  if (s == Scheme::kPam4Odac) return {2.0, 6.0, 9.0};
  return {5.0, 9.0, 12.0};
}

void ModelConfig::validate() const {
  for (std::size_t k = 0; k < schemes.size(); ++k) {
    if (schemes[k].kind != kAllSchemes[k]) throw ConfigError("scheme table out of order");
    try {
      schemes[k].validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("[scheme.") + std::string(to_string(kAllSchemes[k])) + "] " + e.what());
    }
  }
  clos.validate();
  swift.validate();
  if (clos.name != Architecture::kClos || swift.name != Architecture::kSwift) throw ConfigError("profile names");
  if (!(globals.v_si > 0.0)) throw ConfigError("v_si must be positive");
  if (!(globals.wallplug_efficiency > 0.0 && globals.wallplug_efficiency <= 1.0))
    throw ConfigError("wallplug_efficiency must lie in (0,1]");
  if (!(ss_second_ring_scale >= 0.0)) throw ConfigError("ss_second_ring_scale must be non-negative");
  if (sensitivity.anchors().empty()) throw ConfigError("sensitivity calibration set is empty");
  if (energy.mr_tuning_range_nm && !(*energy.mr_tuning_range_nm >= 0.0))
    throw ConfigError("mr_tuning_range_nm must be non-negative");
  if (grid.lambda_set.empty() || !(grid.baud_step_gbaud > 0.0) || grid.baud_max_gbaud < grid.baud_min_gbaud)
    throw ConfigError("invalid search grid");
  if (sim.router_cycles < 0 || sim.rx_cycles < 0 || sim.packet_bits <= 0 || sim.packet_bits % 64 != 0)
    throw ConfigError("invalid simulator defaults");
}

void ModelConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  const std::string where = "[" + section + "] " + key;
  if (section == "globals") {
    if (key == "p_max_dbm") globals.p_max_dbm = to_double(where, value);
    else if (key == "s_baseline_dbm") globals.s_baseline_dbm = to_double(where, value);
    else if (key == "v_si_m_per_s") globals.v_si = to_double(where, value);
    else if (key == "wallplug_efficiency") globals.wallplug_efficiency = to_double(where, value);
    else throw ConfigError("unknown key " + where);
  } else if (section == "model") {
    if (key == "xi_convention") xi = parse_xi_convention(trim(value));
    else if (key == "through_loss_mode") through = parse_through_loss_mode(trim(value));
    else if (key == "frequency_basis") frequency_basis = parse_frequency_basis(trim(value));
    else if (key == "ss_second_ring_scale") ss_second_ring_scale = to_double(where, value);
    else throw ConfigError("unknown key " + where);
  } else if (section.rfind("scheme.", 0) == 0) {
    apply_scheme(schemes[index_of(parse_scheme(section.substr(7)))], where, key, value);
  } else if (section.rfind("profile.", 0) == 0) {
    const Architecture a = parse_architecture(section.substr(8));
    apply_profile(a == Architecture::kClos ? clos : swift, where, key, value);
  } else if (section == "pp_er") {
    const auto at = key.find('@');
    if (at == std::string::npos) throw ConfigError(where + ": keys are <scheme>@<er_db>");
    pp_er_table[{parse_scheme(key.substr(0, at)), to_double(where, key.substr(at + 1))}] = to_double(where, value);
  } else if (section == "sensitivity") {
    if (key == "anchors") sensitivity = SensitivityCurve::from_anchors(parse_anchor_list(where, value));
    else if (key == "csv") sensitivity = SensitivityCurve::from_csv_file(trim(value));
    else throw ConfigError("unknown key " + where);
  } else if (section == "energy") {
    auto& e = energy;
    if (key == "e_mod_ook_pj") e.e_mod_ook_pj = to_double(where, value);
    else if (key == "e_mod_edac_pj") e.e_mod_edac_pj = to_double(where, value);
    else if (key == "e_mod_odac_pj") e.e_mod_odac_pj = to_double(where, value);
    else if (key == "e_serdes_pj") e.e_serdes_pj = to_double(where, value);
    else if (key == "e_co_opamp_pj") e.e_co_opamp_pj = to_double(where, value);
    else if (key == "e_ti_opamp_pj") e.e_ti_opamp_pj = to_double(where, value);
    else if (key == "p_tuning_control_uw") e.p_tuning_control_uw = to_double(where, value);
    else if (key == "p_heater_uw_per_nm") e.p_heater_uw_per_nm = to_double(where, value);
    else if (key == "mr_tuning_range_nm") {
      if (trim(value).empty()) e.mr_tuning_range_nm.reset();
      else e.mr_tuning_range_nm = to_double(where, value);
    } else if (key == "secded_event_pj") e.secded_event_pj = to_double(where, value);
    else if (key == "secded_area_um2") e.secded_area_um2 = to_double(where, value);
    else if (key == "secded_decode_cycles") e.secded_decode_cycles = to_int(where, value);
    else if (key == "tsv_bundle_pj") e.tsv_bundle_pj = to_double(where, value);
    else if (key == "tsv_bundles_per_block") e.tsv_bundles_per_block = to_int(where, value);
    else if (key == "router_energy_pj_per_hop") e.router_energy_pj_per_hop = to_double(where, value);
    else if (key == "electrical_power_per_router_mw") e.electrical_power_per_router_mw = to_double(where, value);
    else if (key == "gi_power_mw") e.gi_power_mw = to_double(where, value);
    else throw ConfigError("unknown key " + where);
  } else if (section == "sim") {
    if (key == "router_cycles") sim.router_cycles = to_int(where, value);
    else if (key == "rx_cycles") sim.rx_cycles = to_int(where, value);
    else if (key == "packet_bits") sim.packet_bits = to_int(where, value);
    else if (key == "saturation_gap") sim.saturation_gap = to_double(where, value);
    else if (key == "warmup_cycles") sim.warmup_cycles = to_long(where, value);
    else if (key == "measure_cycles") sim.measure_cycles = to_long(where, value);
    else if (key == "drain_cycles") sim.drain_cycles = to_long(where, value);
    else if (key == "hotspot_fraction") sim.hotspot_fraction = to_double(where, value);
    else if (key == "queue_capacity") sim.queue_capacity = to_int(where, value);
    else throw ConfigError("unknown key " + where);
  } else if (section == "search") {
    if (key == "lambda_set") {
      grid.lambda_set.clear();
      for (const auto& s : split_list(value)) grid.lambda_set.push_back(to_int(where, s));
    } else if (key == "baud_min_gbaud") grid.baud_min_gbaud = to_double(where, value);
    else if (key == "baud_max_gbaud") grid.baud_max_gbaud = to_double(where, value);
    else if (key == "baud_step_gbaud") grid.baud_step_gbaud = to_double(where, value);
    else throw ConfigError("unknown key " + where);
  } else {
    throw ConfigError("unknown section [" + section + "]");
  }
}

ModelConfig ModelConfig::from_ini_text(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  ModelConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside of a section");
    for (const auto& [key, val] : body) cfg.set(section, key, val.data());
  }
  cfg.validate();
  return cfg;
}

ModelConfig ModelConfig::from_ini_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read configuration file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_ini_text(ss.str());
}

std::string ModelConfig::to_ini() const {
  std::ostringstream o;
  o << "[globals]\n"
    << "p_max_dbm = " << fmt(globals.p_max_dbm) << "\n"
    << "s_baseline_dbm = " << fmt(globals.s_baseline_dbm) << "\n"
    << "v_si_m_per_s = " << fmt(globals.v_si) << "\n"
    << "wallplug_efficiency = " << fmt(globals.wallplug_efficiency) << "\n\n";
  o << "[model]\n"
    << "xi_convention = " << to_string(xi) << "\n"
    << "through_loss_mode = " << to_string(through) << "\n"
    << "frequency_basis = " << to_string(frequency_basis) << "\n"
    << "ss_second_ring_scale = " << fmt(ss_second_ring_scale) << "\n\n";
  for (const auto& p : schemes) {
    o << "[scheme." << to_string(p.kind) << "]\n"
      << "extinction_ratio_db = " << fmt(p.extinction_ratio_db) << "\n"
      << "fwhm_ghz = " << fmt(p.fwhm_hz / kGiga) << "\n"
      << "q0 = " << fmt(p.q0) << "\n"
      << "pp_pam_db = " << fmt(p.pp_pam_db) << "\n"
      << "pp_intrf_db = " << fmt(p.pp_intrf_db) << "\n"
      << "pp_er_db = " << fmt(p.pp_er_db) << "\n"
      << "q_ber = " << fmt(p.q_ber) << "\n"
      << "delta_f_ghz = " << fmt(p.delta_f_hz / kGiga) << "\n"
      << "e_mod_pj = " << fmt(p.e_mod_pj) << "\n"
      << "drivers_per_modulator = " << p.drivers_per_modulator << "\n"
      << "modulators_per_channel = " << p.modulators_per_channel << "\n\n";
  }
  if (!pp_er_table.empty()) {
    o << "[pp_er]\n";
    for (const auto& [k, v] : pp_er_table) o << to_string(k.first) << "@" << fmt(k.second) << " = " << fmt(v) << "\n";
    o << "\n";
  }
  for (const PnocProfile* p : {&clos, &swift}) {
    o << "[profile." << to_string(p->name) << "]\n"
      << "wg_length_cm = " << fmt(p->wg_length_cm) << "\n"
      << "splitter_loss_db = " << fmt(p->splitter_loss_db) << "\n"
      << "coupler_loss_db = " << fmt(p->coupler_loss_db) << "\n"
      << "wg_prop_loss_db_per_cm = " << fmt(p->wg_prop_loss_db_per_cm) << "\n"
      << "wg_bend_loss_db = " << fmt(p->wg_bend_loss_db) << "\n"
      << "bend_count = " << p->bend_count << "\n"
      << "waveguide_count = " << p->waveguide_count << "\n"
      << "fsr_nm = " << fmt(p->fsr_nm) << "\n"
      << "base_wavelength_nm = " << fmt(p->base_wavelength_nm) << "\n"
      << "photonic_clock_ghz = " << fmt(p->photonic_clock_ghz) << "\n"
      << "core_clock_ghz = " << fmt(p->core_clock_ghz) << "\n\n";
  }
  o << "[sensitivity]\nanchors =";
  for (const auto& a : raw_anchors(sensitivity)) o << " " << fmt(a.baud_gbaud) << ":" << fmt(a.s_dbm);
  o << "\n\n";
  const auto& e = energy;
  o << "[energy]\n"
    << "e_mod_ook_pj = " << fmt(e.e_mod_ook_pj) << "\n"
    << "e_mod_edac_pj = " << fmt(e.e_mod_edac_pj) << "\n"
    << "e_mod_odac_pj = " << fmt(e.e_mod_odac_pj) << "\n"
    << "e_serdes_pj = " << fmt(e.e_serdes_pj) << "\n"
    << "e_co_opamp_pj = " << fmt(e.e_co_opamp_pj) << "\n"
    << "e_ti_opamp_pj = " << fmt(e.e_ti_opamp_pj) << "\n"
    << "p_tuning_control_uw = " << fmt(e.p_tuning_control_uw) << "\n"
    << "p_heater_uw_per_nm = " << fmt(e.p_heater_uw_per_nm) << "\n";
  if (e.mr_tuning_range_nm) o << "mr_tuning_range_nm = " << fmt(*e.mr_tuning_range_nm) << "\n";
  o << "secded_event_pj = " << fmt(e.secded_event_pj) << "\n"
    << "secded_area_um2 = " << fmt(e.secded_area_um2) << "\n"
    << "secded_decode_cycles = " << e.secded_decode_cycles << "\n"
    << "tsv_bundle_pj = " << fmt(e.tsv_bundle_pj) << "\n"
    << "tsv_bundles_per_block = " << e.tsv_bundles_per_block << "\n"
    << "router_energy_pj_per_hop = " << fmt(e.router_energy_pj_per_hop) << "\n"
    << "electrical_power_per_router_mw = " << fmt(e.electrical_power_per_router_mw) << "\n"
    << "gi_power_mw = " << fmt(e.gi_power_mw) << "\n\n";
  o << "[sim]\n"
    << "router_cycles = " << sim.router_cycles << "\n"
    << "rx_cycles = " << sim.rx_cycles << "\n"
    << "packet_bits = " << sim.packet_bits << "\n"
    << "saturation_gap = " << fmt(sim.saturation_gap) << "\n"
    << "warmup_cycles = " << sim.warmup_cycles << "\n"
    << "measure_cycles = " << sim.measure_cycles << "\n"
    << "drain_cycles = " << sim.drain_cycles << "\n"
    << "hotspot_fraction = " << fmt(sim.hotspot_fraction) << "\n"
    << "queue_capacity = " << sim.queue_capacity << "\n\n";
  o << "[search]\nlambda_set =";
  for (int n : grid.lambda_set) o << " " << n;
  o << "\nbaud_min_gbaud = " << fmt(grid.baud_min_gbaud) << "\n"
    << "baud_max_gbaud = " << fmt(grid.baud_max_gbaud) << "\n"
    << "baud_step_gbaud = " << fmt(grid.baud_step_gbaud) << "\n";
  return o.str();
}

}  // namespace pdse
