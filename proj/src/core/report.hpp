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
 * @file report.hpp
 * @brief JSON records, table-layout CSV and run manifests.
 *
 * JSON keeps full precision (shortest round-trip doubles); non-finite
 * values are written as the strings "inf", "-inf" and "nan". CSV prints
 * dB values with two decimals.
 */

#pragma once

#include <string>
#include <vector>

#include "calibrate.hpp"
#include "energy.hpp"
#include "json.hpp"
#include "pnoc_sim.hpp"
#include "search.hpp"

namespace pdse {

using json = nlohmann::ordered_json;

json number(double v);
double number_from(const json& j);

json to_json(const PenaltyBreakdown& b);
json to_json(const DesignPoint& d);
json to_json(const BerReport& r);
json to_json(const HardwareLedger& l, const EnergyConstants& e);
json to_json(const SweepRow& r);
json to_json(const SimConfig& c);
json to_json(const SimReport& r);
json to_json(const VariantResult& v);
json to_json(const RowOutcome& r);
json to_json(const CalibrationReport& r);

PenaltyBreakdown penalty_from_json(const json& j);
DesignPoint design_point_from_json(const json& j);

/// Sweep table: one row per (goal, profile, scheme, ER) in the published column order.
extern const char* const kSweepCsvHeader;
std::string sweep_csv(const std::vector<SweepRow>& rows);

extern const char* const kLadderCsvHeader;
std::string latency_ladder_csv(const std::vector<SimReport>& runs);

/// Plain-text view of a sweep for terminals.
std::string sweep_text(const std::vector<SweepRow>& rows);

/// Everything needed to rerun a verb: resolved configuration, switches and arguments.
json make_manifest(const std::string& verb, const ModelConfig& cfg, const json& args, const std::vector<std::string>& outputs);

}  // namespace pdse
