/*
 * Copyright (C) 2026 The DroidRisk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

#include "droidrisk/model_store.hpp"
#include "droidrisk/risk.hpp"

namespace droidrisk {

struct RiskReport {
  std::string apk_path;
  std::string package_name;
  double likelihood = 0.0;
  RiskBand band = RiskBand::Low;
  // the app's nonzero features ranked by model MDI, top 10
  std::vector<std::pair<std::string, double>> top_contributing_features;
  double extraction_seconds = 0.0;      // timer around open + parse + vector
  double classification_seconds = 0.0;  // timer around vector -> risk score
  std::vector<std::string> warnings;
};

struct ScanError {
  std::string apk_path;
  std::string message;
};

struct ScanSummary {
  std::vector<RiskReport> reports;
  std::vector<ScanError> errors;
  uint64_t low = 0, medium = 0, high = 0;
  double wall_seconds = 0.0;
};

// Scans one APK; never mutates the target (read-only by construction).
RiskReport scan_one(const ModelBundle& bundle, const std::string& path);

// Scans files in parallel (reports stay in target order); an unreadable or
// malformed APK becomes an error entry, never an abort.
ScanSummary scan_paths(const ModelBundle& bundle,
                       const std::vector<std::string>& targets, int jobs = 1);

// Expands directories to the .apk files inside them (sorted); files pass
// through untouched.
std::vector<std::string> collect_apk_targets(const std::vector<std::string>& targets);

// 0 all Low, 1 any Medium, 2 any High, 3 nothing scanned — a pure function of
// the band multiset and error presence.
int scan_exit_code(const ScanSummary& summary);

std::string format_report_text(const RiskReport& report);
std::string format_report_jsonl(const RiskReport& report);
std::string format_summary_text(const ScanSummary& summary);

}  // namespace droidrisk
