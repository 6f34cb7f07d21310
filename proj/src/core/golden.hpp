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
 * @file golden.hpp
 * @brief Bundled reference rows of the published optimal-duplet tables.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "params.hpp"

namespace pdse {

struct GoldenRow {
  DesignGoal goal = DesignGoal::kBalanced;
  Architecture profile = Architecture::kClos;
  Scheme scheme = Scheme::kOok;
  double er_db = 0.0;
  double p_budget_db = 0.0;
  double s_dbm = 0.0;
  int n_lambda = 0;
  double br_gbps = 0.0;
  double aggregate_gbps = 0.0;
  double pp_plus_10logn_db = 0.0;
  double laser_dbm = 0.0;
  std::optional<double> ber;

  double baud_gbaud() const { return br_gbps / bits_per_symbol(scheme); }
  std::string key() const;  // e.g. "balanced/clos/ook@5"
};

std::vector<GoldenRow> parse_golden_csv(std::string_view text);
std::vector<GoldenRow> load_golden_csv(const std::string& path);
/// Both tables from a directory holding golden_balanced.csv and golden_ber_optimal.csv.
std::vector<GoldenRow> load_golden_dir(const std::string& dir);

/// The rows a calibration may fit against: the default-ER CLOS row of
/// every scheme in each table.
bool is_calibration_row(const GoldenRow& r);

}  // namespace pdse
