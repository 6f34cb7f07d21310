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

#include "params.hpp"

#include <algorithm>
#include <cctype>

#include "errors.hpp"

namespace pdse {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kOok: return "ook";
    case Scheme::kPam4Ss: return "pam4_ss";
    case Scheme::kPam4Edac: return "pam4_edac";
    case Scheme::kPam4Odac: return "pam4_odac";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  const std::string n = lower(name);
  if (n == "ook") return Scheme::kOok;
  if (n == "pam4_ss" || n == "ss" || n == "4pam_ss") return Scheme::kPam4Ss;
  if (n == "pam4_edac" || n == "edac" || n == "4pam_edac") return Scheme::kPam4Edac;
  if (n == "pam4_odac" || n == "odac" || n == "4pam_odac") return Scheme::kPam4Odac;
  throw ConfigError("unknown signaling scheme '" + std::string(name) + "'");
}

std::string_view to_string(Architecture a) { return a == Architecture::kClos ? "clos" : "swift"; }

Architecture parse_architecture(std::string_view name) {
  const std::string n = lower(name);
  if (n == "clos") return Architecture::kClos;
  if (n == "swift") return Architecture::kSwift;
  throw ConfigError("unknown PNoC profile '" + std::string(name) + "'");
}

std::string_view to_string(DesignGoal g) { return g == DesignGoal::kBerOptimal ? "ber_optimal" : "balanced"; }

DesignGoal parse_goal(std::string_view name) {
  const std::string n = lower(name);
  if (n == "ber_optimal" || n == "optimal" || n == "bero") return DesignGoal::kBerOptimal;
  if (n == "balanced" || n == "dr_ber_balanced") return DesignGoal::kBalanced;
  throw ConfigError("unknown design goal '" + std::string(name) + "'");
}

std::string_view to_string(XiConvention x) { return x == XiConvention::kHalfWidth ? "half_width" : "full_width"; }

XiConvention parse_xi_convention(std::string_view name) {
  const std::string n = lower(name);
  if (n == "half_width" || n == "half") return XiConvention::kHalfWidth;
  if (n == "full_width" || n == "full") return XiConvention::kFullWidth;
  throw ConfigError("unknown xi convention '" + std::string(name) + "'");
}

std::string_view to_string(ThroughLossMode m) {
  return m == ThroughLossMode::kTransmittedFraction ? "transmitted" : "literal";
}

ThroughLossMode parse_through_loss_mode(std::string_view name) {
  const std::string n = lower(name);
  if (n == "transmitted" || n == "transmitted_fraction") return ThroughLossMode::kTransmittedFraction;
  if (n == "literal") return ThroughLossMode::kLiteral;
  throw ConfigError("unknown through-loss mode '" + std::string(name) + "'");
}

std::string_view to_string(FrequencyBasis b) { return b == FrequencyBasis::kWaveguide ? "v_si" : "vacuum"; }

FrequencyBasis parse_frequency_basis(std::string_view name) {
  const std::string n = lower(name);
  if (n == "v_si" || n == "waveguide") return FrequencyBasis::kWaveguide;
  if (n == "vacuum" || n == "c") return FrequencyBasis::kVacuum;
  throw ConfigError("unknown frequency basis '" + std::string(name) + "'");
}

void SignalingParams::validate() const {
  const int expect_levels = kind == Scheme::kOok ? 2 : 4;
  if (levels_m != expect_levels) throw DomainError("levels_m inconsistent with scheme");
  if (!(fwhm_hz > 0.0)) throw DomainError("fwhm must be positive");
  if (!(q0 > 0.0 && q0 < 1.0)) throw DomainError("q0 must lie in (0,1)");
  if (!(pp_pam_db >= 0.0)) throw DomainError("pp_pam must be non-negative");
  if (!(pp_intrf_db >= 0.0)) throw DomainError("pp_intrf must be non-negative");
  if (pp_intrf_db > 0.0 && kind != Scheme::kPam4Ss) throw DomainError("pp_intrf is only defined for pam4_ss");
  if (kind == Scheme::kOok && pp_pam_db != 0.0) throw DomainError("pp_pam must be 0 for ook");
  if (!(extinction_ratio_db > 0.0)) throw DomainError("extinction ratio must be positive");
  if (!(q_ber > 0.0)) throw DomainError("q_ber must be positive");
  if (drivers_per_modulator < 1 || modulators_per_channel < 1) throw DomainError("instance multipliers must be >= 1");
}

void PnocProfile::validate() const {
  if (!(wg_length_cm > 0.0)) throw ConfigError("wg_length_cm must be positive");
  if (splitter_loss_db < 0.0 || coupler_loss_db < 0.0 || wg_prop_loss_db_per_cm < 0.0 || wg_bend_loss_db < 0.0)
    throw ConfigError("loss terms must be non-negative");
  if (bend_count < 0) throw ConfigError("bend_count must be non-negative");
  if (waveguide_count < 1) throw ConfigError("waveguide_count must be positive");
  if (!(fsr_nm > 0.0) || !(base_wavelength_nm > 0.0)) throw ConfigError("fsr and base wavelength must be positive");
  if (!(photonic_clock_ghz > 0.0) || !(core_clock_ghz > 0.0)) throw ConfigError("clocks must be positive");
}

SignalingParams default_signaling(Scheme s) {
  SignalingParams p;
  p.kind = s;
  p.levels_m = levels(s);
  p.q0 = 0.04;
  p.pp_pam_db = s == Scheme::kOok ? 0.0 : 3.3;
  p.pp_intrf_db = s == Scheme::kPam4Ss ? 4.8 : 0.0;
  p.q_ber = s == Scheme::kOok ? 6.0 : 12.5;
  switch (s) {
    case Scheme::kOok:
      p.extinction_ratio_db = 5.0;
      p.fwhm_hz = 30e9;
      p.pp_er_db = 4.2;
      p.e_mod_pj = 0.13;
      break;
    case Scheme::kPam4Ss:
      p.extinction_ratio_db = 5.0;
      p.fwhm_hz = 45e9;
      p.pp_er_db = 4.2;
      p.e_mod_pj = 0.13;
      p.modulators_per_channel = 2;
      break;
    case Scheme::kPam4Edac:
      p.extinction_ratio_db = 5.0;
      p.fwhm_hz = 18e9;
      p.pp_er_db = 4.2;
      p.e_mod_pj = 3.04;
      break;
    case Scheme::kPam4Odac:
      p.extinction_ratio_db = 2.0;
      p.fwhm_hz = 36e9;
      p.pp_er_db = 7.7;
      p.e_mod_pj = 0.04;
      p.drivers_per_modulator = 2;
      break;
  }
  p.delta_f_hz = p.fwhm_hz;
  return p;
}

PnocProfile default_profile(Architecture a) {
  PnocProfile p;
  p.name = a;
  if (a == Architecture::kSwift) {
    p.wg_length_cm = 12.0;
    p.splitter_loss_db = 1.2;
    p.waveguide_count = 32;
  }
  return p;
}

std::int64_t pj_to_aj(double pj) { return static_cast<std::int64_t>(std::llround(pj * 1e6)); }

}  // namespace pdse
