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

#include "penalty.hpp"

#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace pdse {

double PenaltyBreakdown::sum_of_included_terms() const {
  double s = p_mr_act + p_mr_inact + p_wgp + p_wgb + p_sp + p_c + pp_pam + pp_er;
  if (includes_crosstalk_terms()) s += pp_mod + pp_fil + pp_intrf;
  return s;
}

std::string PenaltyBreakdown::to_table() const {
  std::ostringstream o;
  char line[96];
  auto row = [&](const char* name, double v, bool included) {
    std::snprintf(line, sizeof line, "  %-26s %9.2f dB%s\n", name, v, included ? "" : "  (excluded)");
    o << line;
  };
  const bool x = includes_crosstalk_terms();
  o << "penalty breakdown (" << to_string(goal) << ")\n";
  row("MR through loss, active", p_mr_act, true);
  row("MR through loss, inactive", p_mr_inact, true);
  row("waveguide propagation", p_wgp, true);
  row("waveguide bends", p_wgb, true);
  row("splitters", p_sp, true);
  row("coupler", p_c, true);
  row("modulator crosstalk", pp_mod, x);
  row("filter crosstalk", pp_fil, x);
  row("4-PAM levels", pp_pam, true);
  row("4-PAM interference", pp_intrf, x);
  row("extinction ratio", pp_er, true);
  row("total", total, true);
  return o.str();
}

double modulator_penalty_for_detuning(double k_hz, double fwhm_hz, double q0) {
  if (!(fwhm_hz > 0.0)) throw DomainError("fwhm must be positive");
  const double a = 2.0 * k_hz / fwhm_hz;
  const double a2 = a * a;
  return -5.0 * std::log10((a2 + q0) / (a2 + 1.0));
}

double modulator_penalty(const SignalingParams& p, const LinkGeometry& g) {
  if (!(p.fwhm_hz > 0.0)) throw DomainError("fwhm must be positive");
  const double f_delta = g.adjacent_spacing_hz();
  const double k = f_delta > 0.0 ? f_delta - p.delta_f_hz : f_delta;
  return modulator_penalty_for_detuning(k, p.fwhm_hz, p.q0);
}

double filter_penalty_from_sum(double crosstalk_sum, const SignalingParams& p) {
  const double r = db_to_linear(p.extinction_ratio_db);
  const double arg = 1.0 - 0.5 * p.q_ber * crosstalk_sum * (r + 1.0) / (r - 1.0);
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "filter penalty undefined: crosstalk sum " << crosstalk_sum << " too large for Q=" << p.q_ber;
    throw PenaltyUndefined(os.str());
  }
  return -10.0 * std::log10(arg);
}

double filter_penalty(int i, const SignalingParams& p, const LinkGeometry& g, XiConvention xi) {
  if (i < 1 || i > g.n_lambda) throw DomainError("filter index out of range");
  const BankCrosstalk bank = evaluate_bank(g, p.fwhm_hz, DetuneMode::kFilter, xi);
  return filter_penalty_from_sum(bank.filter_sums[static_cast<std::size_t>(i - 1)], p);
}

double worst_filter_penalty(const SignalingParams& p, const LinkGeometry& g, XiConvention xi) {
  const BankCrosstalk bank = evaluate_bank(g, p.fwhm_hz, DetuneMode::kFilter, xi);
  return filter_penalty_from_sum(bank.max_filter_sum(), p);
}

double mr_through_loss_from_sum(double crosstalk_sum, ThroughLossMode mode) {
  if (mode == ThroughLossMode::kTransmittedFraction) {
    if (!(crosstalk_sum < 1.0)) throw PenaltyUndefined("through loss undefined: dropped fraction reaches 1");
    return -10.0 * std::log10(1.0 - crosstalk_sum);
  }
  if (!(crosstalk_sum > 0.0)) throw PenaltyUndefined("literal through loss undefined for zero crosstalk");
  return -10.0 * std::log10(crosstalk_sum);
}

double mr_through_loss(const LinkGeometry& g, double fwhm_hz, bool active, XiConvention xi, ThroughLossMode mode) {
  const BankCrosstalk bank =
      evaluate_bank(g, fwhm_hz, active ? DetuneMode::kActiveMr : DetuneMode::kInactiveMr, xi);
  return mr_through_loss_from_sum(bank.max_channel_sum(), mode);
}

PenaltyBreakdown total_penalty(DesignGoal goal, const SignalingParams& p, const PnocProfile& profile,
                               const LinkGeometry& g, const ModelConfig& cfg, BankCache& cache) {
  PenaltyBreakdown b;
  b.goal = goal;
  const auto act = cache.get(g, p.fwhm_hz, DetuneMode::kActiveMr, cfg.xi);
  const auto inact = cache.get(g, p.fwhm_hz, DetuneMode::kInactiveMr, cfg.xi);
  b.active_sum = act->max_channel_sum();
  b.inactive_sum = inact->max_channel_sum();
  const double ring_weight = 1.0 + cfg.ss_second_ring_scale * (p.modulators_per_channel - 1);
  b.p_mr_act = ring_weight * mr_through_loss_from_sum(b.active_sum, cfg.through);
  b.p_mr_inact = mr_through_loss_from_sum(b.inactive_sum, cfg.through);
  b.p_wgp = profile.wg_length_cm * profile.wg_prop_loss_db_per_cm;
  b.p_wgb = profile.wg_bend_loss_db * profile.bend_count;
  b.p_sp = profile.splitter_loss_db;
  b.p_c = profile.coupler_loss_db;
  b.pp_pam = p.pp_pam_db;
  b.pp_er = p.pp_er_db;
  if (goal == DesignGoal::kBerOptimal) {
    const auto fil = cache.get(g, p.fwhm_hz, DetuneMode::kFilter, cfg.xi);
    b.filter_sum = fil->max_filter_sum();
    b.worst_filter = fil->worst_filter();
    b.pp_fil = filter_penalty_from_sum(b.filter_sum, p);
    b.pp_mod = modulator_penalty(p, g);
    b.pp_intrf = p.pp_intrf_db;
  }
  b.total = b.sum_of_included_terms();
  return b;
}

}  // namespace pdse
