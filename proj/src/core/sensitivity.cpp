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

#include "sensitivity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pdse {
namespace {

double parse_double(std::string_view tok, int line) {
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ConfigError("sensitivity csv line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  return v;
}

}  // namespace

SensitivityCurve SensitivityCurve::from_anchors(std::vector<SensitivityAnchor> raw) {
  if (raw.empty()) throw ConfigError("sensitivity calibration set is empty");
  for (const auto& a : raw) {
    if (!(a.baud_gbaud > 0.0) || !std::isfinite(a.s_dbm)) throw ConfigError("invalid sensitivity anchor");
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.baud_gbaud < b.baud_gbaud; });
  for (std::size_t k = 1; k < raw.size(); ++k) {
    if (raw[k].baud_gbaud == raw[k - 1].baud_gbaud) throw ConfigError("duplicate sensitivity anchor baud");
  }
  // Suffix-minimum filter: an anchor survives only if no later anchor is lower.
  SensitivityCurve c;
  std::vector<bool> keep(raw.size(), true);
  double suffix_min = INFINITY;
  for (std::size_t k = raw.size(); k-- > 0;) {
    if (raw[k].s_dbm > suffix_min) keep[k] = false;
    suffix_min = std::min(suffix_min, raw[k].s_dbm);
  }
  for (std::size_t k = 0; k < raw.size(); ++k) (keep[k] ? c.anchors_ : c.dropped_).push_back(raw[k]);
  return c;
}

SensitivityCurve SensitivityCurve::from_csv(std::string_view text) {
  std::vector<SensitivityAnchor> pts;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("sensitivity csv line " + std::to_string(lineno) + ": expected two columns");
    std::string_view lhs(line.data(), comma);
    std::string_view rhs(line.data() + comma + 1, line.size() - comma - 1);
    // Header row: first field not numeric.
    if (lineno == 1 && lhs.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string_view::npos) continue;
    pts.push_back({parse_double(lhs, lineno), parse_double(rhs, lineno)});
  }
  return from_anchors(std::move(pts));
}

SensitivityCurve SensitivityCurve::from_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read sensitivity csv '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_csv(ss.str());
}

SensitivityCurve::Sample SensitivityCurve::at(double baud_gbaud) const {
  if (anchors_.empty()) throw ConfigError("sensitivity calibration set is empty");
  if (!(baud_gbaud > 0.0)) throw DomainError("baud rate must be positive");
  if (baud_gbaud <= anchors_.front().baud_gbaud) return {anchors_.front().s_dbm, false};
  if (anchors_.size() == 1) return {anchors_.front().s_dbm, baud_gbaud > anchors_.front().baud_gbaud};
  auto hi = std::lower_bound(anchors_.begin(), anchors_.end(), baud_gbaud,
                             [](const SensitivityAnchor& a, double b) { return a.baud_gbaud < b; });
  bool extrapolated = false;
  if (hi == anchors_.end()) {
    hi = anchors_.end() - 1;
    extrapolated = true;
  }
  if (hi->baud_gbaud == baud_gbaud) return {hi->s_dbm, false};
  const auto lo = hi - 1;
  const double t = (baud_gbaud - lo->baud_gbaud) / (hi->baud_gbaud - lo->baud_gbaud);
  return {lo->s_dbm + t * (hi->s_dbm - lo->s_dbm), extrapolated};
}

std::string SensitivityCurve::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "baud_gbaud,s_dbm\n";
  for (const auto& a : anchors_) out << a.baud_gbaud << ',' << a.s_dbm << '\n';
  return out.str();
}

std::vector<SensitivityAnchor> default_sensitivity_anchors() {
  return {{10, -22.5}, {10.5, -22.3}, {11, -22.1}, {12, -21.7},  {13.5, -21.0}, {15, -20.35}, {16, -19.1},
          {16.5, -18.5}, {17, -18.6}, {17.5, -17.9}, {18, -17.8}, {19, -17.1},  {20, -16.1},   {21, -15.3},
          {23, -13.4}, {24, -12.3}, {25, -11.5}, {27, -10.1},  {30, -8.2},    {32, -6.6}};
}

double baud_rate(double bitrate_gbps, int levels_m) {
  if (!(bitrate_gbps > 0.0)) throw DomainError("bitrate must be positive");
  if (levels_m != 2 && levels_m != 4) throw DomainError("levels_M must be 2 or 4");
  return bitrate_gbps / (levels_m / 2.0);
}

double bitrate(double baud_gbaud, int levels_m) {
  if (!(baud_gbaud > 0.0)) throw DomainError("baud rate must be positive");
  if (levels_m != 2 && levels_m != 4) throw DomainError("levels_M must be 2 or 4");
  return baud_gbaud * (levels_m / 2.0);
}

}  // namespace pdse
