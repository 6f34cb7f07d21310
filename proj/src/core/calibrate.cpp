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

#include "calibrate.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace pdse {
namespace {

// Residual charged for a row whose penalty is undefined at the reference duplet.
constexpr double kUndefinedResidualDb = 100.0;

double row_residual(const RowOutcome& r) {
  return r.forced_defined ? std::abs(r.forced_penalty_db - r.golden.pp_plus_10logn_db) : kUndefinedResidualDb;
}

struct Score {
  int matched = 0;
  double residual = 0.0;
};

bool better(const Score& a, const Score& b) {
  if (a.matched != b.matched) return a.matched > b.matched;
  return a.residual < b.residual - 1e-12;
}

Score score_rows(const Explorer& ex, const std::vector<GoldenRow>& rows, std::vector<RowOutcome>* out) {
  Score s;
  for (const auto& r : rows) {
    RowOutcome o = evaluate_row(ex, r);
    s.matched += o.duplet_match ? 1 : 0;
    s.residual += row_residual(o);
    if (out) out->push_back(std::move(o));
  }
  return s;
}

}  // namespace

RowOutcome evaluate_row(const Explorer& ex, const GoldenRow& row) {
  RowOutcome o;
  o.golden = row;
  try {
    const DesignPoint d = ex.search_optimal(row.scheme, row.profile, row.goal, row.er_db);
    o.found = true;
    o.n_lambda = d.n_lambda;
    o.br_gbps = d.bitrate_gbps;
    o.duplet_match = d.n_lambda == row.n_lambda && std::abs(d.bitrate_gbps - row.br_gbps) <= kBitrateToleranceGbps;
  } catch (const InfeasibleDesign& e) {
    o.error = e.what();
  }
  const DesignPoint f = ex.evaluate(row.scheme, row.profile, row.goal, row.er_db, row.n_lambda, row.baud_gbaud());
  o.forced_defined = std::isfinite(f.slack_db);
  if (o.forced_defined) o.forced_penalty_db = f.penalty_plus_channels_db();
  return o;
}

CalibrationReport calibrate(const ModelConfig& base, const std::vector<GoldenRow>& golden,
                            std::shared_ptr<BankCache> cache, const CalibrationOptions& opt) {
  if (!(opt.delta_f_step_ghz > 0.0) || opt.delta_f_max_ghz < opt.delta_f_min_ghz)
    throw ConfigError("invalid delta_f calibration grid");
  std::vector<GoldenRow> cal;
  for (const auto& r : golden)
    if (is_calibration_row(r)) cal.push_back(r);
  if (cal.empty()) throw ConfigError("no calibration rows in the reference tables");

  std::vector<XiConvention> xis = {base.xi};
  if (opt.fit_xi) xis = {XiConvention::kHalfWidth, XiConvention::kFullWidth};
  std::vector<ThroughLossMode> modes = {base.through};
  if (opt.fit_through) modes = {ThroughLossMode::kTransmittedFraction, ThroughLossMode::kLiteral};
  std::vector<double> shifts;
  const long steps = std::lround((opt.delta_f_max_ghz - opt.delta_f_min_ghz) / opt.delta_f_step_ghz);
  for (long k = 0; k <= steps; ++k) shifts.push_back(opt.delta_f_min_ghz + k * opt.delta_f_step_ghz);

  CalibrationReport rep;
  rep.rows_used = static_cast<int>(cal.size());
  rep.dropped_anchors = base.sensitivity.dropped();
  Score best_score{-1, 0.0};

  for (XiConvention xi : xis) {
    for (ThroughLossMode mode : modes) {
      ModelConfig cfg = base;
      cfg.xi = xi;
      cfg.through = mode;
      CalibrationCandidate cand;
      cand.xi = xi;
      cand.through = mode;
      Score total;
      for (Scheme s : kAllSchemes) {
        std::vector<GoldenRow> rows_balanced, rows_optimal;
        for (const auto& r : cal) {
          if (r.scheme != s) continue;
          (r.goal == DesignGoal::kBalanced ? rows_balanced : rows_optimal).push_back(r);
        }
        // The shift only enters the modulator term, which the balanced goal leaves out.
        const Score sb = score_rows(Explorer(cfg, cache), rows_balanced, nullptr);
        double best_shift = cfg.schemes[index_of(s)].delta_f_hz / kGiga;
        Score so = score_rows(Explorer(cfg, cache), rows_optimal, nullptr);
        if (opt.fit_delta_f && !rows_optimal.empty()) {
          const double fwhm_ghz = cfg.schemes[index_of(s)].fwhm_hz / kGiga;
          Score best{-1, 0.0};
          for (double df : shifts) {
            ModelConfig trial = cfg;
            trial.schemes[index_of(s)].delta_f_hz = df * kGiga;
            const Score sc = score_rows(Explorer(trial, cache), rows_optimal, nullptr);
            // Ties keep the shift closest to the FWHM default.
            const bool tie = sc.matched == best.matched && std::abs(sc.residual - best.residual) <= 1e-12;
            if (better(sc, best) || (tie && std::abs(df - fwhm_ghz) < std::abs(best_shift - fwhm_ghz))) {
              best = sc;
              best_shift = df;
            }
          }
          so = best;
        }
        cfg.schemes[index_of(s)].delta_f_hz = best_shift * kGiga;
        cand.delta_f_ghz[index_of(s)] = best_shift;
        total.matched += sb.matched + so.matched;
        total.residual += sb.residual + so.residual;
      }
      cand.matched = total.matched;
      cand.residual_db = total.residual;
      rep.candidates.push_back(cand);
      if (better(total, best_score)) {
        best_score = total;
        rep.chosen = cand;
        rep.fitted = cfg;
      }
    }
  }
  rep.calibration_rows.clear();
  score_rows(Explorer(rep.fitted, cache), cal, &rep.calibration_rows);
  return rep;
}

}  // namespace pdse
