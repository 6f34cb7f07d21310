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
#include <string_view>
#include <vector>

namespace pdse {

struct SensitivityAnchor {
  double baud_gbaud;
  double s_dbm;
  bool operator==(const SensitivityAnchor&) const = default;
};

/// Detector sensitivity versus baud rate: monotone piecewise-linear through
/// a calibration set, clamped below the first anchor and linearly
/// extrapolated (flagged) above the last one.
class SensitivityCurve {
 public:
  struct Sample {
    double s_dbm;
    bool extrapolated;
  };

  SensitivityCurve() = default;

  /// Sorts, rejects duplicate bauds and drops anchors that would break
  /// monotonicity (any anchor above a later one). Dropped anchors are kept
  /// for the calibration report.
  static SensitivityCurve from_anchors(std::vector<SensitivityAnchor> raw);
  static SensitivityCurve from_csv(std::string_view text);
  static SensitivityCurve from_csv_file(const std::string& path);

  Sample at(double baud_gbaud) const;

  const std::vector<SensitivityAnchor>& anchors() const { return anchors_; }
  const std::vector<SensitivityAnchor>& dropped() const { return dropped_; }
  std::string to_csv() const;

  bool operator==(const SensitivityCurve& o) const { return anchors_ == o.anchors_; }

 private:
  std::vector<SensitivityAnchor> anchors_;
  std::vector<SensitivityAnchor> dropped_;
};

/// Raw default set, including the (16.5, -18.5) point that regularization drops.
std::vector<SensitivityAnchor> default_sensitivity_anchors();

/// BaR = BR / (M/2).
double baud_rate(double bitrate_gbps, int levels_m);
double bitrate(double baud_gbaud, int levels_m);

}  // namespace pdse
