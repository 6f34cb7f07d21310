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
 * @file config.hpp
 * @brief The resolved model configuration and its INI representation.
 *
 * Sections and keys are documented in docs/config.md. Loading is strict:
 * unknown sections or keys are configuration errors.
 */

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "params.hpp"
#include "sensitivity.hpp"

namespace pdse {

struct SimDefaults {
  int router_cycles = 2;      // core-clock cycles per router traversal
  int rx_cycles = 1;          // photonic cycles for receive/deserialize registration
  int packet_bits = 512;
  double saturation_gap = 0.1;
  long warmup_cycles = 2000;  // core-clock cycles
  long measure_cycles = 10000;
  long drain_cycles = 200000;
  double hotspot_fraction = 0.2;
  int queue_capacity = 0;  // packets per waveguide queue, 0 = unbounded
  bool operator==(const SimDefaults&) const = default;
};

struct SearchGrid {
  std::vector<int> lambda_set = {1, 2, 4, 8, 16, 32, 64, 128};
  double baud_min_gbaud = 10.0;
  double baud_max_gbaud = 30.0;
  double baud_step_gbaud = 0.5;
  bool operator==(const SearchGrid&) const = default;
};

class ModelConfig {
 public:
  ModelConfig();

  GlobalConstants globals;
  std::array<SignalingParams, 4> schemes;
  /// Explicit PP^ER values per (scheme, ER dB); they win over the model below.
  std::map<std::pair<Scheme, double>, double> pp_er_table;
  PnocProfile clos;
  PnocProfile swift;
  XiConvention xi = XiConvention::kHalfWidth;
  ThroughLossMode through = ThroughLossMode::kTransmittedFraction;
  FrequencyBasis frequency_basis = FrequencyBasis::kWaveguide;
  /// Weight of the second modulator ring of pam4_ss in the active through loss.
  double ss_second_ring_scale = 1.0;
  SensitivityCurve sensitivity;
  EnergyConstants energy;
  SimDefaults sim;
  SearchGrid grid;

  /// Speed for wavelength-to-frequency conversion on the channel grid.
  double frequency_speed() const {
    return frequency_basis == FrequencyBasis::kWaveguide ? globals.v_si : kSpeedOfLight;
  }
  const PnocProfile& profile(Architecture a) const { return a == Architecture::kClos ? clos : swift; }
  /// Parameter record for a scheme, optionally at a swept extinction ratio.
  SignalingParams scheme_params(Scheme s, std::optional<double> er_db = std::nullopt) const;
  /// PP^ER at an extinction ratio: table entry if present, otherwise the
  /// scheme default shifted by the change of 10log10((r+1)/(r-1)).
  double pp_er(Scheme s, double er_db) const;
  std::vector<double> default_er_list(Scheme s) const;

  void validate() const;

  static ModelConfig from_ini_text(const std::string& text);
  static ModelConfig from_ini_file(const std::string& path);
  std::string to_ini() const;

  /// Override one key, e.g. set("model", "xi_convention", "full_width").
  void set(const std::string& section, const std::string& key, const std::string& value);
};

}  // namespace pdse
