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
 * @file calibrate.hpp
 * @brief Fits the open model switches against the bundled reference rows.
 *
 * Free parameters: the Lorentzian width convention, the MR through-loss
 * reading and the modulator resonance shift per scheme. Only rows flagged
 * by is_calibration_row() are used for fitting; everything else stays
 * held out for evaluation.
 */

#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "golden.hpp"
#include "search.hpp"

namespace pdse {

struct CalibrationOptions {
  double delta_f_min_ghz = 0.0;
  double delta_f_max_ghz = 100.0;
  double delta_f_step_ghz = 0.5;
  bool fit_xi = true;
  bool fit_through = true;
  bool fit_delta_f = true;
};

struct RowOutcome {
  GoldenRow golden;
  bool found = false;  // search produced a feasible duplet
  int n_lambda = 0;
  double br_gbps = 0.0;
  bool duplet_match = false;  // N exact and BR within the tolerance
  double forced_penalty_db = 0.0;  // PP + 10log10 N at the reference duplet
  bool forced_defined = false;
  std::string error;
};

struct CalibrationCandidate {
  XiConvention xi = XiConvention::kHalfWidth;
  ThroughLossMode through = ThroughLossMode::kTransmittedFraction;
  std::array<double, 4> delta_f_ghz{};
  int matched = 0;
  double residual_db = 0.0;
};

struct CalibrationReport {
  ModelConfig fitted;
  std::vector<CalibrationCandidate> candidates;  // one per (xi, through) pair, best delta_f each
  CalibrationCandidate chosen;
  std::vector<RowOutcome> calibration_rows;
  std::vector<SensitivityAnchor> dropped_anchors;
  int rows_used = 0;
};

constexpr double kBitrateToleranceGbps = 3.0;

/// Search one reference row under cfg and compare.
RowOutcome evaluate_row(const Explorer& ex, const GoldenRow& row);

/// Grid fit. The cache is shared with the caller so a following sweep reuses banks.
CalibrationReport calibrate(const ModelConfig& base, const std::vector<GoldenRow>& golden,
                            std::shared_ptr<BankCache> cache, const CalibrationOptions& opt = {});

}  // namespace pdse
