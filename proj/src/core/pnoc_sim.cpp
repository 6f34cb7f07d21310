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

#include "pnoc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "reliability.hpp"

namespace pdse {
namespace {

// SplitMix64 finalizer, used as a counter-based hash so that every
// (seed, core, cycle) draw is independent of the injection rate.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t draw(std::uint64_t seed, int core, long cycle, int stream) {
  return mix(mix(mix(seed) ^ static_cast<std::uint64_t>(core)) ^
             (static_cast<std::uint64_t>(cycle) * 4u + static_cast<std::uint64_t>(stream)));
}

double unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

int below(std::uint64_t x, int n) {
  return static_cast<int>((static_cast<unsigned __int128>(x) * static_cast<unsigned>(n)) >> 64);
}

struct Route {
  int hops = 1;
  bool photonic = false;
  int waveguide = -1;
  int writer = 0;  // gateway that writes the waveguide
};

Route route(Architecture a, int src, int dst) {
  Route r;
  if (a == Architecture::kClos) {
    const int sc = src / 32, dc = dst / 32;
    if (sc == dc) return r;
    r.hops = 2;
    r.photonic = true;
    r.waveguide = sc * 7 + (dc < sc ? dc : dc - 1);
    r.writer = sc;
    return r;
  }
  const int sn = src / 4, dn = dst / 4;
  if (sn == dn) return r;
  r.hops = 2;
  const int sg = sn / 4, dg = dn / 4;
  if (sg == dg) return r;
  r.photonic = true;
  r.waveguide = (dg % 8) * 4 + (sg % 4);
  r.writer = sg;
  return r;
}

int routers(Architecture a) { return a == Architecture::kClos ? 8 : 64; }
int gateways(Architecture a) { return a == Architecture::kClos ? 8 : 16; }
int writers_per_waveguide(Architecture a) { return a == Architecture::kClos ? 1 : 4; }
int readers_per_waveguide(Architecture a) { return a == Architecture::kClos ? 1 : 2; }

struct Packet {
  int src = 0;
  int dst = 0;
  long cycle = 0;
  double gen_ns = 0.0;
  bool measured = false;
  Route route;
  double tx_start_ns = 0.0;
  double deliver_ns = 0.0;
};

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, k == 0 ? 0 : k - 1)];
}

}  // namespace

std::string_view to_string(TrafficPattern p) {
  switch (p) {
    case TrafficPattern::kUniformRandom: return "uniform_random";
    case TrafficPattern::kHotspot: return "hotspot";
    case TrafficPattern::kPermutation: return "permutation";
    case TrafficPattern::kSinglePacket: return "single_packet";
  }
  return "?";
}

TrafficPattern parse_traffic_pattern(std::string_view n) {
  if (n == "uniform_random" || n == "uniform") return TrafficPattern::kUniformRandom;
  if (n == "hotspot") return TrafficPattern::kHotspot;
  if (n == "permutation") return TrafficPattern::kPermutation;
  if (n == "single_packet") return TrafficPattern::kSinglePacket;
  throw ConfigError("unknown traffic pattern '" + std::string(n) + "'");
}

int waveguide_count(Architecture a) { return a == Architecture::kClos ? 56 : 32; }

SimConfig SimConfig::from_design(const DesignPoint& d, const ModelConfig& cfg) {
  SimConfig c;
  c.architecture = d.profile;
  c.scheme = d.scheme;
  c.goal = d.goal;
  c.n_lambda = d.n_lambda;
  c.baud_gbaud = d.baud_gbaud;
  c.laser_power_dbm = d.laser_power_dbm;
  c.sim = cfg.sim;
  c.profile = cfg.profile(d.profile);
  c.energy = cfg.energy;
  c.v_si = cfg.globals.v_si;
  c.wallplug_efficiency = cfg.globals.wallplug_efficiency;
  return c;
}

void SimConfig::validate() const {
  if (n_lambda < 1) throw ConfigError("simulation needs n_lambda >= 1");
  if (!(baud_gbaud > 0.0)) throw ConfigError("simulation needs a positive baud rate");
  if (!(injection_rate >= 0.0 && injection_rate <= 1.0)) throw ConfigError("injection rate must lie in [0,1]");
  if (sim.measure_cycles <= 0) throw ConfigError("measure_cycles must be positive");
  if (sim.warmup_cycles < 0 || sim.drain_cycles < 0) throw ConfigError("cycle counts must be non-negative");
  if (sim.packet_bits <= 0 || sim.packet_bits % 64 != 0) throw ConfigError("packet_bits must be a multiple of 64");
  if (!(profile.core_clock_ghz > 0.0 && profile.photonic_clock_ghz > 0.0)) throw ConfigError("clocks must be positive");
  if (!(v_si > 0.0)) throw ConfigError("v_si must be positive");
  if (pattern == TrafficPattern::kSinglePacket) {
    if (single_src < 0 || single_src >= kSimCores || single_dst < 0 || single_dst >= kSimCores ||
        single_src == single_dst || single_cycle < 0)
      throw ConfigError("single packet needs distinct cores in [0,256) and a non-negative cycle");
  }
}

int wire_bits(const SimConfig& c) {
  return c.goal == DesignGoal::kBalanced ? secded::coded_bits(c.sim.packet_bits) : c.sim.packet_bits;
}

PathDelays path_delays(const SimConfig& c, int src, int dst) {
  const Route r = route(c.architecture, src, dst);
  PathDelays p;
  p.router_hops = r.hops;
  p.photonic = r.photonic;
  const double core_ns = 1.0 / c.profile.core_clock_ghz;
  const double phot_ns = 1.0 / c.profile.photonic_clock_ghz;
  p.router_ns = r.hops * c.sim.router_cycles * core_ns;
  if (!r.photonic) return p;
  const long lanes = static_cast<long>(c.n_lambda) * bits_per_symbol(c.scheme);
  const long symbols = (wire_bits(c) + lanes - 1) / lanes;
  p.serialization_ns = static_cast<double>(symbols) / c.baud_gbaud;
  p.flight_ns = c.profile.wg_length_cm * 1e-2 / c.v_si * 1e9;
  p.receive_ns = c.sim.rx_cycles * phot_ns;
  if (c.goal == DesignGoal::kBalanced) p.decode_ns = c.energy.secded_decode_cycles * phot_ns;
  return p;
}

SimReport simulate(const SimConfig& c) {
  c.validate();
  SimReport rep;
  rep.config = c;
  const double core_ns = 1.0 / c.profile.core_clock_ghz;
  rep.core_cycle_ns = core_ns;
  const long warm = c.sim.warmup_cycles;
  const long end_cycle = warm + c.sim.measure_cycles;

  // Generation.
  std::vector<Packet> pk;
  auto add = [&](int s, int d, long cyc, bool measured) {
    Packet p;
    p.src = s;
    p.dst = d;
    p.cycle = cyc;
    p.gen_ns = static_cast<double>(cyc) * core_ns;
    p.measured = measured;
    p.route = route(c.architecture, s, d);
    pk.push_back(p);
  };
  if (c.pattern == TrafficPattern::kSinglePacket) {
    add(c.single_src, c.single_dst, c.single_cycle, true);
  } else if (c.injection_rate > 0.0) {
    for (long cyc = 0; cyc < end_cycle; ++cyc) {
      for (int core = 0; core < kSimCores; ++core) {
        if (unit(draw(c.seed, core, cyc, 0)) >= c.injection_rate) continue;
        int dst = -1;
        if (c.pattern == TrafficPattern::kPermutation) {
          dst = kSimCores - 1 - core;
        } else if (c.pattern == TrafficPattern::kHotspot && core != 0 &&
                   unit(draw(c.seed, core, cyc, 2)) < c.sim.hotspot_fraction) {
          dst = 0;
        }
        if (dst < 0) {
          dst = below(draw(c.seed, core, cyc, 1), kSimCores - 1);
          if (dst >= core) ++dst;
        }
        add(core, dst, cyc, cyc >= warm);
      }
    }
  }

  // Waveguide service. Waveguides are independent: routers are uncontended
  // pipelines, so each transmitter is a single server fed by its writers.
  const double hop_ns = c.sim.router_cycles * core_ns;
  const int n_wg = waveguide_count(c.architecture);
  std::vector<std::vector<std::size_t>> by_wg(static_cast<std::size_t>(n_wg));
  for (std::size_t k = 0; k < pk.size(); ++k) {
    Packet& p = pk[k];
    if (p.route.photonic) {
      by_wg[static_cast<std::size_t>(p.route.waveguide)].push_back(k);
    } else {
      p.deliver_ns = p.gen_ns + p.route.hops * hop_ns;
    }
  }
  PathDelays stage{};
  if (!pk.empty()) {
    // Any photonic pair gives the per-packet constants.
    stage = path_delays(c, 0, c.architecture == Architecture::kClos ? 32 : 16);
  }
  const double tail_ns = stage.flight_ns + stage.receive_ns + stage.decode_ns + hop_ns;
  const int cap = c.sim.queue_capacity;

  for (auto& q : by_wg) {
    if (q.empty()) continue;
    // Arrival at the gateway queue, ties broken by generation order.
    std::stable_sort(q.begin(), q.end(), [&](std::size_t a, std::size_t b) {
      return pk[a].gen_ns + hop_ns < pk[b].gen_ns + hop_ns;
    });
    // Per-writer FIFOs.
    std::vector<int> writer_ids;
    for (auto k : q) writer_ids.push_back(pk[k].route.writer);
    std::sort(writer_ids.begin(), writer_ids.end());
    writer_ids.erase(std::unique(writer_ids.begin(), writer_ids.end()), writer_ids.end());
    std::vector<std::vector<std::size_t>> fifo(writer_ids.size());
    for (auto k : q) {
      const auto w = std::lower_bound(writer_ids.begin(), writer_ids.end(), pk[k].route.writer) - writer_ids.begin();
      fifo[static_cast<std::size_t>(w)].push_back(k);
    }
    std::vector<std::size_t> head(fifo.size(), 0);
    std::size_t remaining = q.size();
    std::size_t rr = fifo.size() - 1;  // last granted writer
    double free_ns = 0.0;
    while (remaining > 0) {
      // Earliest time at which some writer has a packet waiting.
      double earliest = INFINITY;
      for (std::size_t w = 0; w < fifo.size(); ++w)
        if (head[w] < fifo[w].size()) earliest = std::min(earliest, pk[fifo[w][head[w]]].gen_ns + hop_ns);
      const double t = std::max(free_ns, earliest);
      std::size_t grant = fifo.size();
      for (std::size_t step = 1; step <= fifo.size(); ++step) {
        const std::size_t w = (rr + step) % fifo.size();
        if (head[w] < fifo[w].size() && pk[fifo[w][head[w]]].gen_ns + hop_ns <= t) {
          grant = w;
          break;
        }
      }
      Packet& p = pk[fifo[grant][head[grant]]];
      ++head[grant];
      --remaining;
      rr = grant;
      p.tx_start_ns = t;
      free_ns = t + stage.serialization_ns;
      p.deliver_ns = free_ns + tail_ns;
    }
    // Queue occupancy seen by each arrival (FIFO per writer, so starts keep arrival order).
    for (const auto& f : fifo) {
      std::size_t started = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const double arr = pk[f[k]].gen_ns + hop_ns;
        while (started < k && pk[f[started]].tx_start_ns <= arr) ++started;
        const int occ = static_cast<int>(k - started);
        rep.max_queue_occupancy = std::max(rep.max_queue_occupancy, occ);
        if (cap > 0 && occ >= cap) ++rep.backpressure_stalls;
      }
    }
  }

  // Accounting.
  const double window_start = static_cast<double>(warm) * core_ns;
  const double window_end = static_cast<double>(end_cycle) * core_ns;
  const double horizon = window_end + static_cast<double>(c.sim.drain_cycles) * core_ns;
  const HardwareLedger led = ledger_for(c.scheme, c.n_lambda, c.sim.packet_bits, c.energy);
  const std::int64_t n = c.n_lambda;
  const std::int64_t wb = wire_bits(c);
  const std::int64_t tsv_aj = pj_to_aj(c.energy.tsv_bundle_pj) * c.energy.tsv_bundles_per_block;
  const std::int64_t secded_aj = pj_to_aj(c.energy.secded_event_pj);
  const std::int64_t hop_aj = pj_to_aj(c.energy.router_energy_pj_per_hop);

  std::vector<double> lat;
  std::int64_t delivered_in_window = 0;
  for (const Packet& p : pk) {
    ++rep.packets_injected;
    const bool delivered = c.pattern == TrafficPattern::kSinglePacket || p.deliver_ns <= horizon;
    if (!delivered) {
      ++rep.packets_in_flight;
      continue;
    }
    ++rep.packets_delivered;
    if (p.deliver_ns >= window_start && p.deliver_ns < window_end) ++delivered_in_window;
    if (!p.measured) continue;
    ++rep.packets_measured;
    lat.push_back(p.deliver_ns - p.gen_ns);
    EnergyTally& t = rep.tally;
    t.payload_bits += c.sim.packet_bits;
    t.router_hops += p.route.hops;
    t.router_aj += hop_aj * p.route.hops;
    if (p.route.photonic) {
      ++t.photonic_packets;
      t.wire_bits += wb;
      t.driver_aj += wb * (led.epb_driver_aj / n);
      t.serdes_aj += wb * (led.epb_serdes_aj / n);
      t.co_opamp_aj += wb * (led.epb_co_opamp_aj / n);
      t.ti_opamp_aj += wb * (led.epb_ti_opamp_aj / n);
      t.tsv_block_crossings += 2;
      t.tsv_aj += 2 * tsv_aj;
      if (c.goal == DesignGoal::kBalanced) {
        t.secded_events += 2;  // encode at the sender, decode at the receiver
        t.secded_aj += 2 * secded_aj;
      }
    }
  }
  if (!lat.empty()) {
    std::vector<double> s = lat;
    std::sort(s.begin(), s.end());
    rep.latency.count = static_cast<std::int64_t>(s.size());
    // Fixed-order summation keeps the mean bit-reproducible.
    rep.latency.mean_ns = std::accumulate(lat.begin(), lat.end(), 0.0) / static_cast<double>(lat.size());
    const std::size_t m = s.size() / 2;
    rep.latency.median_ns = s.size() % 2 ? s[m] : 0.5 * (s[m - 1] + s[m]);
    rep.latency.p99_ns = percentile(s, 0.99);
    rep.latency.min_ns = s.front();
    rep.latency.max_ns = s.back();
  }

  if (c.pattern != TrafficPattern::kSinglePacket) {
    const double denom = static_cast<double>(kSimCores) * static_cast<double>(c.sim.measure_cycles);
    std::int64_t generated_in_window = 0;
    for (const Packet& p : pk) generated_in_window += p.measured ? 1 : 0;
    rep.offered_rate = static_cast<double>(generated_in_window) / denom;
    rep.accepted_rate = static_cast<double>(delivered_in_window) / denom;
    rep.saturated = rep.packets_in_flight > 0 || rep.accepted_rate < rep.offered_rate * (1.0 - c.sim.saturation_gap);
  }

  // Power over the measurement window.
  const double window_ns = window_end - window_start;
  const auto to_mw = [&](std::int64_t aj) { return window_ns > 0 ? static_cast<double>(aj) / window_ns * 1e-6 : 0.0; };
  PowerBreakdown& pw = rep.power;
  const int n_wgs = waveguide_count(c.architecture);
  pw.laser_wallplug_mw = laser_wallplug_power_mw(c.laser_power_dbm, n_wgs, c.wallplug_efficiency);
  const double rings = static_cast<double>(n_wgs) * (writers_per_waveguide(c.architecture) * led.mr_modulators +
                                                     readers_per_waveguide(c.architecture) * led.mr_filters);
  double tuning_uw = rings * c.energy.p_tuning_control_uw;
  if (c.energy.mr_tuning_range_nm) {
    tuning_uw += rings * c.energy.p_heater_uw_per_nm * *c.energy.mr_tuning_range_nm;
    rep.heater_power_included = true;
  }
  pw.mr_tuning_mw = tuning_uw * 1e-3;
  pw.txrx_dynamic_mw = to_mw(rep.tally.link_aj() + rep.tally.secded_aj);
  pw.electrical_mw = routers(c.architecture) * c.energy.electrical_power_per_router_mw +
                     gateways(c.architecture) * c.energy.gi_power_mw + to_mw(rep.tally.router_aj + rep.tally.tsv_aj);
  pw.total_mw = pw.laser_wallplug_mw + pw.mr_tuning_mw + pw.txrx_dynamic_mw + pw.electrical_mw;

  if (rep.tally.payload_bits > 0) {
    const double bits = static_cast<double>(rep.tally.payload_bits);
    rep.epb_dynamic_pj = static_cast<double>(rep.tally.total_aj()) * 1e-6 / bits;
    const double static_mw = pw.laser_wallplug_mw + pw.mr_tuning_mw + routers(c.architecture) *
                                                                          c.energy.electrical_power_per_router_mw +
                             gateways(c.architecture) * c.energy.gi_power_mw;
    // mW x ns = pJ
    rep.epb_total_pj = rep.epb_dynamic_pj + static_mw * window_ns / bits;
  }
  return rep;
}

std::vector<VariantResult> compare_variants(const Explorer& ex, const std::vector<Scheme>& schemes, Architecture a,
                                            DesignGoal goal, double injection_rate, std::uint64_t seed,
                                            TrafficPattern pattern) {
  if (schemes.empty()) throw ConfigError("compare_variants needs at least one scheme");
  std::vector<VariantResult> out;
  for (Scheme s : schemes) {
    VariantResult v;
    v.scheme = s;
    v.design = ex.search_optimal(s, a, goal, std::nullopt);
    SimConfig c = SimConfig::from_design(v.design, ex.config());
    c.injection_rate = injection_rate;
    c.seed = seed;
    c.pattern = pattern;
    v.report = simulate(c);
    out.push_back(std::move(v));
  }
  const auto ref_it = std::find_if(out.begin(), out.end(), [](const VariantResult& v) { return v.scheme == Scheme::kOok; });
  const VariantResult& ref = ref_it != out.end() ? *ref_it : out.front();
  const double ref_lat = ref.report.latency.mean_ns;
  const double ref_epb = ref.report.epb_dynamic_pj;
  for (auto& v : out) {
    v.latency_ratio = ref_lat > 0 ? v.report.latency.mean_ns / ref_lat : 1.0;
    v.epb_ratio = ref_epb > 0 ? v.report.epb_dynamic_pj / ref_epb : 1.0;
  }
  std::stable_sort(out.begin(), out.end(), [](const VariantResult& x, const VariantResult& y) {
    return x.report.latency.mean_ns < y.report.latency.mean_ns;
  });
  return out;
}

}  // namespace pdse
