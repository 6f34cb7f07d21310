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

#include "search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace pdse {
namespace {

constexpr double kSlackTol = 1e-9;

// True when a should be preferred over b among feasible points.
bool better(const DesignPoint& a, const DesignPoint& b) {
  if (a.slack_db < b.slack_db - kSlackTol) return true;
  if (b.slack_db < a.slack_db - kSlackTol) return false;
  if (a.aggregate_gbps != b.aggregate_gbps) return a.aggregate_gbps > b.aggregate_gbps;
  if (a.n_lambda != b.n_lambda) return a.n_lambda > b.n_lambda;
  return a.baud_gbaud < b.baud_gbaud;
}

}  // namespace

SearchSpace SearchSpace::from_grid(const SearchGrid& g) {
  SearchSpace s;
  s.lambda_set = g.lambda_set;
  std::sort(s.lambda_set.begin(), s.lambda_set.end());
  const long steps = std::lround((g.baud_max_gbaud - g.baud_min_gbaud) / g.baud_step_gbaud);
  for (long k = 0; k <= steps; ++k) s.baud_set_gbaud.push_back(g.baud_min_gbaud + k * g.baud_step_gbaud);
  return s;
}

Explorer::Explorer(ModelConfig cfg) : Explorer(std::move(cfg), std::make_shared<BankCache>()) {}

Explorer::Explorer(ModelConfig cfg, std::shared_ptr<BankCache> cache)
    : cfg_(std::move(cfg)), space_(SearchSpace::from_grid(cfg_.grid)), cache_(std::move(cache)) {
  cfg_.validate();
}

DesignPoint Explorer::evaluate(Scheme s, Architecture a, DesignGoal goal, std::optional<double> er_db, int n_lambda,
                               double baud_gbaud) const {
  const SignalingParams p = cfg_.scheme_params(s, er_db);
  const PnocProfile& prof = cfg_.profile(a);
  const LinkGeometry g = LinkGeometry::make(n_lambda, baud_gbaud, prof, cfg_.frequency_speed());

  DesignPoint d;
  d.scheme = s;
  d.profile = a;
  d.goal = goal;
  d.er_db = p.extinction_ratio_db;
  d.n_lambda = n_lambda;
  d.baud_gbaud = baud_gbaud;
  d.bitrate_gbps = bitrate(baud_gbaud, p.levels_m);
  d.aggregate_gbps = n_lambda * d.bitrate_gbps;
  const auto sample = cfg_.sensitivity.at(baud_gbaud);
  d.sensitivity_dbm = sample.s_dbm;
  d.sensitivity_extrapolated = sample.extrapolated;
  d.power_budget_db = cfg_.globals.p_max_dbm - d.sensitivity_dbm;
  try {
    d.penalty = total_penalty(goal, p, prof, g, cfg_, *cache_);
    d.slack_db = d.power_budget_db - d.penalty.total - 10.0 * std::log10(n_lambda);
    d.laser_power_dbm = d.penalty.total + 10.0 * std::log10(n_lambda) + d.sensitivity_dbm;
    d.feasible = d.slack_db >= 0.0;
    if (!d.feasible) d.infeasible_reason = "budget exceeded";
  } catch (const PenaltyUndefined& e) {
    d.penalty.goal = goal;
    d.slack_db = -std::numeric_limits<double>::infinity();
    d.laser_power_dbm = std::numeric_limits<double>::infinity();
    d.feasible = false;
    d.infeasible_reason = e.what();
  }
  return d;
}

std::vector<DesignPoint> Explorer::frontier(Scheme s, Architecture a, DesignGoal goal,
                                            std::optional<double> er_db) const {
  std::vector<DesignPoint> out;
  out.reserve(space_.size());
  for (int n : space_.lambda_set)
    for (double b : space_.baud_set_gbaud) out.push_back(evaluate(s, a, goal, er_db, n, b));
  return out;
}

std::optional<DesignPoint> select_optimal(const std::vector<DesignPoint>& frontier) {
  const DesignPoint* best = nullptr;
  for (const auto& d : frontier) {
    if (!d.feasible) continue;
    if (!best || better(d, *best)) best = &d;
  }
  if (!best) return std::nullopt;
  return *best;
}

DesignPoint Explorer::search_optimal(Scheme s, Architecture a, DesignGoal goal, std::optional<double> er_db) const {
  const auto all = frontier(s, a, goal, er_db);
  if (auto best = select_optimal(all)) return *best;
  const DesignPoint* closest = nullptr;
  for (const auto& d : all)
    if (!closest || d.slack_db > closest->slack_db) closest = &d;
  std::ostringstream os;
  os << "no feasible duplet for " << to_string(s) << "/" << to_string(a) << "/" << to_string(goal);
  if (closest && std::isfinite(closest->slack_db)) {
    os << "; closest is N=" << closest->n_lambda << " at " << closest->baud_gbaud << " Gbaud, short by "
       << -closest->slack_db << " dB";
    throw InfeasibleDesign(os.str(), closest->n_lambda, closest->baud_gbaud, -closest->slack_db);
  }
  throw InfeasibleDesign(os.str() + "; every penalty evaluation was undefined", 0, 0.0,
                         std::numeric_limits<double>::infinity());
}

std::vector<DesignPoint> Explorer::ranked_frontier(Scheme s, Architecture a, DesignGoal goal,
                                                   std::optional<double> er_db) const {
  auto all = frontier(s, a, goal, er_db);
  std::stable_sort(all.begin(), all.end(), [](const DesignPoint& x, const DesignPoint& y) {
    if (x.feasible != y.feasible) return x.feasible;
    if (x.feasible) return better(x, y);
    return x.slack_db > y.slack_db;
  });
  return all;
}

BerReport Explorer::ber_at(Scheme s, int n_lambda, double baud_gbaud, Architecture a) const {
  const SignalingParams& p = cfg_.schemes[index_of(s)];
  const LinkGeometry g = LinkGeometry::make(n_lambda, baud_gbaud, cfg_.profile(a), cfg_.frequency_speed());
  const auto bank = cache_->get(g, p.fwhm_hz, DetuneMode::kFilter, cfg_.xi);
  return evaluate_ber(*bank, p.levels_m, cfg_.sim.packet_bits);
}

std::vector<SweepRow> Explorer::sweep(const SweepRequest& req) const {
  std::vector<SweepRow> rows;
  for (DesignGoal goal : req.goals) {
    for (Architecture a : req.profiles) {
      for (Scheme s : req.schemes) {
        const std::vector<double> ers = req.er_list ? *req.er_list : cfg_.default_er_list(s);
        for (double er : ers) {
          SweepRow row;
          row.goal = goal;
          row.profile = a;
          row.scheme = s;
          row.er_db = er;
          try {
            row.point = search_optimal(s, a, goal, er);
            if (goal == DesignGoal::kBalanced) row.ber = ber_at(s, row.point->n_lambda, row.point->baud_gbaud, a);
          } catch (const Error& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace pdse
