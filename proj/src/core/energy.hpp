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
 * @file energy.hpp
 * @brief Per-link hardware instance counts, energy-per-bit and static power.
 *
 * Energies are carried as integer attojoules (1 pJ = 1e6 aJ) so totals are
 * exact sums of count x per-instance value; pJ views are derived.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "params.hpp"

namespace pdse {

struct HardwareLedger {
  Scheme scheme = Scheme::kOok;
  int n_lambda = 0;
  int packet_bits = 0;

  int mr_modulators = 0;
  int mr_filters = 0;
  int photodetectors = 0;
  int receiver_modules = 0;
  int serializers = 0;
  int deserializers = 0;
  int modulator_drivers = 0;
  int ti_opamps = 0;
  int co_opamps = 0;
  int total_mrs = 0;
  int buffer_width_bits = 0;
  bool buffer_width_rounded = false;

  // Table-style EPB totals (per-instance value x instance count).
  std::int64_t epb_driver_aj = 0;
  std::int64_t epb_serdes_aj = 0;
  std::int64_t epb_co_opamp_aj = 0;
  std::int64_t epb_ti_opamp_aj = 0;

  double tuning_control_uw = 0.0;
  double heater_uw_per_nm = 0.0;       // total over all rings
  std::optional<double> heater_uw;     // only with a tuning range

  std::int64_t epb_raw_total_aj() const { return epb_driver_aj + epb_serdes_aj + epb_co_opamp_aj + epb_ti_opamp_aj; }
  double epb_driver_pj() const { return epb_driver_aj * 1e-6; }
  double epb_serdes_pj() const { return epb_serdes_aj * 1e-6; }
  double epb_co_opamp_pj() const { return epb_co_opamp_aj * 1e-6; }
  double epb_ti_opamp_pj() const { return epb_ti_opamp_aj * 1e-6; }
  double epb_raw_total_pj() const { return epb_raw_total_aj() * 1e-6; }
};

HardwareLedger ledger_for(Scheme s, int n_lambda, int packet_bits, const EnergyConstants& e);

struct LinkEpb {
  std::int64_t raw_total_aj = 0;     // summed as tabulated (scales with N)
  std::int64_t per_bit_aj = 0;       // raw total / N: energy per transferred bit
  double raw_total_pj() const { return raw_total_aj * 1e-6; }
  double per_bit_pj() const { return per_bit_aj * 1e-6; }
};

LinkEpb link_epb(Scheme s, int n_lambda, const EnergyConstants& e);

/// Optical power per source from its dBm figure, times the source count,
/// divided by the wall-plug efficiency.
double laser_wallplug_power_mw(double laser_power_dbm, int waveguide_count, double efficiency);

struct PowerBreakdown {
  double laser_wallplug_mw = 0.0;
  double mr_tuning_mw = 0.0;
  double txrx_dynamic_mw = 0.0;
  double electrical_mw = 0.0;
  double total_mw = 0.0;
};

}  // namespace pdse
