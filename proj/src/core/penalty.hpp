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

#include <string>

#include "config.hpp"
#include "crosstalk.hpp"

namespace pdse {

struct PenaltyBreakdown {
  DesignGoal goal = DesignGoal::kBalanced;
  double p_mr_act = 0.0;
  double p_mr_inact = 0.0;
  double p_wgp = 0.0;
  double p_wgb = 0.0;
  double p_sp = 0.0;
  double p_c = 0.0;
  double pp_mod = 0.0;
  double pp_fil = 0.0;
  double pp_pam = 0.0;
  double pp_intrf = 0.0;
  double pp_er = 0.0;
  double total = 0.0;

  // Diagnostics.
  double active_sum = 0.0;    // worst-channel crosstalk sum, active rings
  double inactive_sum = 0.0;  // worst-channel crosstalk sum, parked rings
  double filter_sum = 0.0;    // worst-filter crosstalk sum (BER-optimal only)
  int worst_filter = 0;

  /// Modulator, filter and interference terms are part of the total.
  bool includes_crosstalk_terms() const { return goal == DesignGoal::kBerOptimal; }
  double sum_of_included_terms() const;
  std::string to_table() const;
};

/// -5 log10(((2K/FWHM)^2 + q0) / ((2K/FWHM)^2 + 1)).
double modulator_penalty_for_detuning(double k_hz, double fwhm_hz, double q0);
/// Uses the adjacent-channel spacing at the band centre as f_delta.
double modulator_penalty(const SignalingParams& p, const LinkGeometry& g);

/// -10 log10(1 - 0.5 Q (r+1)/(r-1) sum). Throws PenaltyUndefined when the
/// bracket is not positive.
double filter_penalty_from_sum(double crosstalk_sum, const SignalingParams& p);
/// i is 1-based.
double filter_penalty(int i, const SignalingParams& p, const LinkGeometry& g, XiConvention xi);
double worst_filter_penalty(const SignalingParams& p, const LinkGeometry& g, XiConvention xi);

/// Through loss for a summed dropped fraction under the chosen reading.
double mr_through_loss_from_sum(double crosstalk_sum, ThroughLossMode mode);
double mr_through_loss(const LinkGeometry& g, double fwhm_hz, bool active, XiConvention xi, ThroughLossMode mode);

/// Goal-dependent total. Crosstalk banks come from the cache.
PenaltyBreakdown total_penalty(DesignGoal goal, const SignalingParams& p, const PnocProfile& profile,
                               const LinkGeometry& g, const ModelConfig& cfg, BankCache& cache);

}  // namespace pdse
