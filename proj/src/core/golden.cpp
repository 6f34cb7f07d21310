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

#include "golden.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace pdse {
namespace {

constexpr std::string_view kHeader =
    "goal,profile,scheme,er_db,p_budget_db,s_dbm,n_lambda,br_gbps,aggregate_gbps,pp_plus_10logn_db,"
    "laser_dbm,ber";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> f;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      f.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  f.push_back(cur);
  return f;
}

double num(const std::string& s, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw ConfigError("golden csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

std::string GoldenRow::key() const {
  std::ostringstream o;
  o << to_string(goal) << "/" << to_string(profile) << "/" << to_string(scheme) << "@" << er_db;
  return o.str();
}

std::vector<GoldenRow> parse_golden_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<GoldenRow> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1) {
      if (line != kHeader) throw ConfigError("golden csv: unexpected header");
      continue;
    }
    const auto f = split(line);
    if (f.size() != 12) throw ConfigError("golden csv line " + std::to_string(lineno) + ": expected 12 fields");
    GoldenRow r;
    r.goal = parse_goal(f[0]);
    r.profile = parse_architecture(f[1]);
    r.scheme = parse_scheme(f[2]);
    r.er_db = num(f[3], lineno);
    r.p_budget_db = num(f[4], lineno);
    r.s_dbm = num(f[5], lineno);
    r.n_lambda = static_cast<int>(num(f[6], lineno));
    r.br_gbps = num(f[7], lineno);
    r.aggregate_gbps = num(f[8], lineno);
    r.pp_plus_10logn_db = num(f[9], lineno);
    r.laser_dbm = num(f[10], lineno);
    if (!f[11].empty()) r.ber = num(f[11], lineno);
    rows.push_back(r);
  }
  return rows;
}

std::vector<GoldenRow> load_golden_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read golden table '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_golden_csv(ss.str());
}

std::vector<GoldenRow> load_golden_dir(const std::string& dir) {
  auto rows = load_golden_csv(dir + "/golden_balanced.csv");
  auto ber = load_golden_csv(dir + "/golden_ber_optimal.csv");
  rows.insert(rows.end(), ber.begin(), ber.end());
  return rows;
}

bool is_calibration_row(const GoldenRow& r) {
  if (r.profile != Architecture::kClos) return false;
  return r.er_db == (r.scheme == Scheme::kPam4Odac ? 2.0 : 5.0);
}

}  // namespace pdse
