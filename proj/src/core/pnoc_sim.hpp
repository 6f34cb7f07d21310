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
 * @file pnoc_sim.hpp
 * @brief Event-driven model of the CLOS and SWIFT photonic NoC variants.
 *
 * 256 cores. CLOS groups them in 8 clusters of 32 behind one router and
 * one gateway each, with a dedicated waveguide per ordered cluster pair.
 * SWIFT has 64 four-core nodes, one gateway per four nodes, and 32 shared
 * waveguides (8 destination groups x 4) granted round-robin among the
 * writing gateways.
 *
 * Per packet: source router -> gateway queue -> serialization on the
 * waveguide -> flight -> receive -> SECDED decode (balanced goal) ->
 * destination router. Routers are fixed-latency pipelines; the waveguide
 * transmitter is the only contended resource. Time is carried in ns.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "energy.hpp"
#include "search.hpp"

namespace pdse {

enum class TrafficPattern { kUniformRandom, kHotspot, kPermutation, kSinglePacket };
std::string_view to_string(TrafficPattern p);
TrafficPattern parse_traffic_pattern(std::string_view name);

constexpr int kSimCores = 256;

struct SimConfig {
  Architecture architecture = Architecture::kClos;
  Scheme scheme = Scheme::kOok;
  DesignGoal goal = DesignGoal::kBalanced;
  int n_lambda = 1;
  double baud_gbaud = 10.0;
  double laser_power_dbm = 0.0;  // per-source optical power for the power breakdown

  double injection_rate = 0.0;  // packets per core per core cycle
  TrafficPattern pattern = TrafficPattern::kUniformRandom;
  std::uint64_t seed = 1;
  // single_packet pattern
  int single_src = 0;
  int single_dst = 255;
  long single_cycle = 0;

  SimDefaults sim;  // cycles, packet size, router depth, queue capacity
  PnocProfile profile;
  EnergyConstants energy;
  double v_si = 8.6e7;
  double wallplug_efficiency = 0.15;

  /// Fills the link fields from a search result and the rest from the model.
  static SimConfig from_design(const DesignPoint& d, const ModelConfig& cfg);
  void validate() const;
};

struct EnergyTally {
  // event counts
  std::int64_t photonic_packets = 0;
  std::int64_t wire_bits = 0;
  std::int64_t payload_bits = 0;
  std::int64_t tsv_block_crossings = 0;
  std::int64_t secded_events = 0;
  std::int64_t router_hops = 0;
  // charges, attojoules
  std::int64_t driver_aj = 0;
  std::int64_t serdes_aj = 0;
  std::int64_t co_opamp_aj = 0;
  std::int64_t ti_opamp_aj = 0;
  std::int64_t tsv_aj = 0;
  std::int64_t secded_aj = 0;
  std::int64_t router_aj = 0;

  std::int64_t link_aj() const { return driver_aj + serdes_aj + co_opamp_aj + ti_opamp_aj; }
  std::int64_t total_aj() const { return link_aj() + tsv_aj + secded_aj + router_aj; }
  bool operator==(const EnergyTally&) const = default;
};

struct LatencyStats {
  std::int64_t count = 0;
  double mean_ns = 0.0;
  double median_ns = 0.0;
  double p99_ns = 0.0;
  double min_ns = 0.0;
  double max_ns = 0.0;
  bool operator==(const LatencyStats&) const = default;
};

struct SimReport {
  SimConfig config;
  std::int64_t packets_injected = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_in_flight = 0;
  std::int64_t packets_measured = 0;
  std::int64_t backpressure_stalls = 0;
  int max_queue_occupancy = 0;

  LatencyStats latency;        // ns
  double core_cycle_ns = 0.0;  // for cycle views
  double offered_rate = 0.0;   // packets/core/cycle generated in the window
  double accepted_rate = 0.0;  // packets/core/cycle delivered in the window
  bool saturated = false;

  EnergyTally tally;  // packets generated in the measurement window
  double epb_dynamic_pj = 0.0;
  double epb_total_pj = 0.0;
  PowerBreakdown power;
  bool heater_power_included = false;

  double mean_latency_cycles() const { return core_cycle_ns > 0 ? latency.mean_ns / core_cycle_ns : 0.0; }
};

/// Stage delays of an uncontended packet, ns.
struct PathDelays {
  int router_hops = 0;
  bool photonic = false;
  double router_ns = 0.0;
  double serialization_ns = 0.0;
  double flight_ns = 0.0;
  double receive_ns = 0.0;
  double decode_ns = 0.0;
  double total_ns() const { return router_ns + serialization_ns + flight_ns + receive_ns + decode_ns; }
};

PathDelays path_delays(const SimConfig& c, int src_core, int dst_core);
/// Bits on the wire per packet: payload, or SECDED-coded payload for the balanced goal.
int wire_bits(const SimConfig& c);
int waveguide_count(Architecture a);

/// Deterministic for a given config; measure_cycles must be positive.
SimReport simulate(const SimConfig& c);

struct VariantResult {
  Scheme scheme = Scheme::kOok;
  DesignPoint design;
  SimReport report;
  double latency_ratio = 1.0;  // mean latency / reference mean latency
  double epb_ratio = 1.0;
};

/// Searches each scheme's optimum at its default ER, runs every variant at
/// the same load and seed, and normalizes to OOK (or to the first scheme
/// when OOK is absent). Sorted by mean latency.
std::vector<VariantResult> compare_variants(const Explorer& ex, const std::vector<Scheme>& schemes,
                                            Architecture a, DesignGoal goal, double injection_rate,
                                            std::uint64_t seed, TrafficPattern pattern = TrafficPattern::kUniformRandom);

}  // namespace pdse
