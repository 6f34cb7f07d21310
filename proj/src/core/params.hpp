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

/**
 * @file params.hpp
 * @brief Physical constants, signaling parameter sets and PNoC profiles.
 *
 * Internal units are SI (Hz, m, s) with dB/dBm views. Human units (GHz, nm,
 * cm) appear only in configuration files and reports.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pdse {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

constexpr double kGiga = 1e9;
constexpr double kNano = 1e-9;

enum class Scheme { kOok, kPam4Ss, kPam4Edac, kPam4Odac };
constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::kOok, Scheme::kPam4Ss, Scheme::kPam4Edac,
                                               Scheme::kPam4Odac};

std::string_view to_string(Scheme s);
/// Accepts canonical names (ook, pam4_ss, ...) and short aliases (ss, edac, odac).
Scheme parse_scheme(std::string_view name);
inline int levels(Scheme s) { return s == Scheme::kOok ? 2 : 4; }
inline int bits_per_symbol(Scheme s) { return s == Scheme::kOok ? 1 : 2; }
inline std::size_t index_of(Scheme s) { return static_cast<std::size_t>(s); }

enum class Architecture { kClos, kSwift };
constexpr std::array<Architecture, 2> kAllArchitectures = {Architecture::kClos, Architecture::kSwift};
std::string_view to_string(Architecture a);
Architecture parse_architecture(std::string_view name);

enum class DesignGoal { kBerOptimal, kBalanced };
constexpr std::array<DesignGoal, 2> kAllGoals = {DesignGoal::kBerOptimal, DesignGoal::kBalanced};
std::string_view to_string(DesignGoal g);
DesignGoal parse_goal(std::string_view name);

/// Lorentzian half-width normalization: FWHM/(2 BaR) or FWHM/BaR.
enum class XiConvention { kHalfWidth, kFullWidth };
std::string_view to_string(XiConvention x);
XiConvention parse_xi_convention(std::string_view name);

/// MR through-loss reading: -10log10(1 - sum) or the literal -10log10(sum).
enum class ThroughLossMode { kTransmittedFraction, kLiteral };
std::string_view to_string(ThroughLossMode m);
ThroughLossMode parse_through_loss_mode(std::string_view name);

/// Speed used to turn grid wavelengths into optical frequencies: the
/// waveguide speed v_si (default) or the vacuum speed of light.
enum class FrequencyBasis { kWaveguide, kVacuum };
std::string_view to_string(FrequencyBasis b);
FrequencyBasis parse_frequency_basis(std::string_view name);
constexpr double kSpeedOfLight = 299792458.0;

struct SignalingParams {
  Scheme kind = Scheme::kOok;
  int levels_m = 2;
  double extinction_ratio_db = 5.0;
  double fwhm_hz = 30e9;
  double q0 = 0.04;
  double pp_pam_db = 0.0;
  double pp_intrf_db = 0.0;
  double pp_er_db = 4.2;
  double q_ber = 6.0;
  double delta_f_hz = 30e9;  // modulator OFF/ON resonance spacing
  double e_mod_pj = 0.13;
  int drivers_per_modulator = 1;
  int modulators_per_channel = 1;

  /// Throws DomainError naming the first violated field invariant.
  void validate() const;
};

struct PnocProfile {
  Architecture name = Architecture::kClos;
  double wg_length_cm = 4.5;
  double splitter_loss_db = 5.6;
  double coupler_loss_db = 0.9;
  double wg_prop_loss_db_per_cm = 1.0;
  double wg_bend_loss_db = 0.005;
  int bend_count = 4;
  int waveguide_count = 56;
  double fsr_nm = 20.0;
  double base_wavelength_nm = 1550.0;
  double photonic_clock_ghz = 5.0;
  double core_clock_ghz = 2.5;

  void validate() const;
  bool operator==(const PnocProfile&) const = default;
};

struct GlobalConstants {
  double p_max_dbm = 20.0;
  double s_baseline_dbm = -22.5;
  double v_si = 8.6e7;  // m/s
  double wallplug_efficiency = 0.15;
  bool operator==(const GlobalConstants&) const = default;
};

/// Per-instance energies and static powers. Energies are in pJ; the ledger
/// converts them to integer attojoules so that tallies add exactly.
struct EnergyConstants {
  double e_mod_ook_pj = 0.13;
  double e_mod_edac_pj = 3.04;
  double e_mod_odac_pj = 0.04;
  double e_serdes_pj = 0.5;
  double e_co_opamp_pj = 0.21;
  double e_ti_opamp_pj = 0.24;
  double p_tuning_control_uw = 385.0;
  double p_heater_uw_per_nm = 800.0;
  std::optional<double> mr_tuning_range_nm;  // no default on purpose
  double secded_event_pj = 0.1;
  double secded_area_um2 = 1142.0;
  int secded_decode_cycles = 1;
  double tsv_bundle_pj = 6.7;
  int tsv_bundles_per_block = 8;
  double router_energy_pj_per_hop = 1.0;
  double electrical_power_per_router_mw = 5.0;
  double gi_power_mw = 2.0;
  bool operator==(const EnergyConstants&) const = default;
};

SignalingParams default_signaling(Scheme s);
PnocProfile default_profile(Architecture a);

/// Attojoule integer view of a pJ constant (1 pJ = 1e6 aJ).
std::int64_t pj_to_aj(double pj);

}  // namespace pdse
