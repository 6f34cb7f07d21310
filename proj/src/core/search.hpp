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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "penalty.hpp"
#include "reliability.hpp"

namespace pdse {

struct SearchSpace {
  std::vector<int> lambda_set;
  std::vector<double> baud_set_gbaud;
  static SearchSpace from_grid(const SearchGrid& g);
  std::size_t size() const { return lambda_set.size() * baud_set_gbaud.size(); }
};

struct DesignPoint {
  Scheme scheme = Scheme::kOok;
  Architecture profile = Architecture::kClos;
  DesignGoal goal = DesignGoal::kBalanced;
  double er_db = 0.0;
  int n_lambda = 0;
  double baud_gbaud = 0.0;
  double bitrate_gbps = 0.0;
  double aggregate_gbps = 0.0;
  PenaltyBreakdown penalty;
  double sensitivity_dbm = 0.0;
  bool sensitivity_extrapolated = false;
  double power_budget_db = 0.0;
  double slack_db = 0.0;  // -inf when a penalty term is undefined
  double laser_power_dbm = 0.0;
  bool feasible = false;
  std::string infeasible_reason;

  /// PP + 10 log10 N, the penalty column of the published tables.
  double penalty_plus_channels_db() const { return penalty.total + 10.0 * std::log10(n_lambda); }
};

struct SweepRow {
  DesignGoal goal = DesignGoal::kBalanced;
  Architecture profile = Architecture::kClos;
  Scheme scheme = Scheme::kOok;
  double er_db = 0.0;
  std::optional<DesignPoint> point;
  std::optional<BerReport> ber;  // balanced goal only
  std::string error;
};

struct SweepRequest {
  std::vector<DesignGoal> goals;
  std::vector<Architecture> profiles;
  std::vector<Scheme> schemes;
  /// Per-row ER list; std::nullopt means each scheme's default list.
  std::optional<std::vector<double>> er_list;
};

/// Evaluates and searches duplets for one resolved configuration. Holds a
/// bank cache; const member functions are safe to call concurrently.
class Explorer {
 public:
  explicit Explorer(ModelConfig cfg);
  Explorer(ModelConfig cfg, std::shared_ptr<BankCache> cache);

  const ModelConfig& config() const { return cfg_; }
  const SearchSpace& space() const { return space_; }
  std::shared_ptr<BankCache> cache() const { return cache_; }

  DesignPoint evaluate(Scheme s, Architecture a, DesignGoal goal, std::optional<double> er_db, int n_lambda,
                       double baud_gbaud) const;
  /// Minimum non-negative slack; ties within 1e-9 dB go to higher aggregate
  /// rate, then higher N, then lower baud. Throws InfeasibleDesign.
  DesignPoint search_optimal(Scheme s, Architecture a, DesignGoal goal, std::optional<double> er_db) const;
  /// Every duplet in search order (N outer, baud inner), infeasible ones included.
  std::vector<DesignPoint> frontier(Scheme s, Architecture a, DesignGoal goal, std::optional<double> er_db) const;
  /// Frontier ranked: feasible by slack ascending, then infeasible by slack descending.
  std::vector<DesignPoint> ranked_frontier(Scheme s, Architecture a, DesignGoal goal,
                                           std::optional<double> er_db) const;

  BerReport ber_at(Scheme s, int n_lambda, double baud_gbaud, Architecture a) const;
  std::vector<SweepRow> sweep(const SweepRequest& req) const;

 private:
  ModelConfig cfg_;
  SearchSpace space_;
  std::shared_ptr<BankCache> cache_;
};

/// Picks the optimum from an already evaluated frontier.
std::optional<DesignPoint> select_optimal(const std::vector<DesignPoint>& frontier);

}  // namespace pdse
