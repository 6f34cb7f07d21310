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

#include "energy.hpp"

#include "errors.hpp"

namespace pdse {

HardwareLedger ledger_for(Scheme s, int n, int packet_bits, const EnergyConstants& e) {
  if (n < 0) throw DomainError("n_lambda must be non-negative");
  if (packet_bits <= 0) throw DomainError("packet size must be positive");
  HardwareLedger l;
  l.scheme = s;
  l.n_lambda = n;
  l.packet_bits = packet_bits;
  const bool ook = s == Scheme::kOok;

  l.mr_modulators = s == Scheme::kPam4Ss ? 2 * n : n;
  l.mr_filters = n;
  l.photodetectors = n;
  l.receiver_modules = n;
  l.serializers = ook ? n : 2 * n;
  l.deserializers = l.serializers;
  switch (s) {
    case Scheme::kOok: l.modulator_drivers = n; break;
    case Scheme::kPam4Ss: l.modulator_drivers = 2 * n; break;
    case Scheme::kPam4Edac: l.modulator_drivers = n; break;
    case Scheme::kPam4Odac: l.modulator_drivers = 2 * n; break;
  }
  l.ti_opamps = n;
  l.co_opamps = ook ? n : 3 * n;
  l.total_mrs = l.mr_modulators + l.mr_filters;

  const int lanes = ook ? n : 2 * n;
  if (lanes > 0) {
    l.buffer_width_bits = (packet_bits + lanes - 1) / lanes;
    l.buffer_width_rounded = packet_bits % lanes != 0;
  }

  double e_mod = e.e_mod_ook_pj;
  if (s == Scheme::kPam4Edac) e_mod = e.e_mod_edac_pj;
  if (s == Scheme::kPam4Odac) e_mod = e.e_mod_odac_pj;
  l.epb_driver_aj = pj_to_aj(e_mod) * l.modulator_drivers;
  l.epb_serdes_aj = pj_to_aj(e.e_serdes_pj) * l.serializers;
  l.epb_co_opamp_aj = pj_to_aj(e.e_co_opamp_pj) * l.co_opamps;
  l.epb_ti_opamp_aj = pj_to_aj(e.e_ti_opamp_pj) * l.ti_opamps;

  l.tuning_control_uw = e.p_tuning_control_uw * l.total_mrs;
  l.heater_uw_per_nm = e.p_heater_uw_per_nm * l.total_mrs;
  if (e.mr_tuning_range_nm) l.heater_uw = l.heater_uw_per_nm * *e.mr_tuning_range_nm;
  return l;
}

LinkEpb link_epb(Scheme s, int n, const EnergyConstants& e) {
  LinkEpb r;
  if (n <= 0) return r;
  const HardwareLedger l = ledger_for(s, n, 64 * n, e);
  r.raw_total_aj = l.epb_raw_total_aj();
  r.per_bit_aj = r.raw_total_aj / n;  // every count is a multiple of n
  return r;
}

double laser_wallplug_power_mw(double laser_power_dbm, int waveguide_count, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("wall-plug efficiency must lie in (0,1]");
  if (waveguide_count < 0) throw DomainError("waveguide count must be non-negative");
  return dbm_to_mw(laser_power_dbm) * waveguide_count / efficiency;
}

}  // namespace pdse
