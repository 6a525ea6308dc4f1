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

#include "droidrisk/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "droidrisk/apk.hpp"
#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

RiskReport scan_one(const ModelBundle& bundle, const std::string& path) {
  RiskReport report;
  report.apk_path = path;

  // Extraction timing starts before the container is opened and stops when
  // the feature vector exists; classification timing covers exactly the
  // interval from handing the vector to the model until the score is back.
  auto t0 = Clock::now();
  ApkArchive apk = open_apk(path);
  ExtractionResult extraction = extract_app(apk, bundle.vocabulary);
  report.extraction_seconds = seconds_since(t0);

  auto t1 = Clock::now();
  report.likelihood = predict_proba(bundle.forest, extraction.vector.values);
  report.band = score_to_risk(report.likelihood, bundle.risk_thresholds);
  report.classification_seconds = seconds_since(t1);

  report.package_name = extraction.manifest.package_name;
  report.warnings = std::move(extraction.warnings);

  const std::vector<double>& importances = bundle.forest.importances;
  std::vector<size_t> nonzero;
  for (size_t i = 0; i < extraction.vector.values.size(); ++i)
    if (extraction.vector.values[i] != 0.0) nonzero.push_back(i);
  std::stable_sort(nonzero.begin(), nonzero.end(), [&](size_t a, size_t b) {
    return importances[a] > importances[b];
  });
  if (nonzero.size() > 10) nonzero.resize(10);
  for (size_t i : nonzero)
    report.top_contributing_features.emplace_back(bundle.vocabulary.feature_name(i),
                                                  extraction.vector.values[i]);
  return report;
}

ScanSummary scan_paths(const ModelBundle& bundle,
                       const std::vector<std::string>& targets, int jobs) {
  ScanSummary summary;
  auto start = Clock::now();

  struct Slot {
    bool ok = false;
    RiskReport report;
    ScanError error;
  };
  std::vector<Slot> slots(targets.size());

  auto work = [&](size_t i) {
    try {
      slots[i].report = scan_one(bundle, targets[i]);
      slots[i].ok = true;
    } catch (const Error& e) {
      slots[i].error = ScanError{targets[i], e.what()};
    }
  };

  jobs = std::max(1, jobs);
  if (jobs == 1 || targets.size() <= 1) {
    for (size_t i = 0; i < targets.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    size_t count = std::min<size_t>(jobs, targets.size());
    for (size_t w = 0; w < count; ++w) {
      workers.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < targets.size();
             i = next.fetch_add(1))
          work(i);
      });
    }
    for (auto& th : workers) th.join();
  }

  for (Slot& slot : slots) {
    if (!slot.ok) {
      summary.errors.push_back(std::move(slot.error));
      continue;
    }
    switch (slot.report.band) {
      case RiskBand::Low:
        ++summary.low;
        break;
      case RiskBand::Medium:
        ++summary.medium;
        break;
      case RiskBand::High:
        ++summary.high;
        break;
    }
    summary.reports.push_back(std::move(slot.report));
  }
  summary.wall_seconds = seconds_since(start);
  return summary;
}

std::vector<std::string> collect_apk_targets(const std::vector<std::string>& targets) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const std::string& t : targets) {
    std::error_code ec;
    if (fs::is_directory(t, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(t, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".apk")
          found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(t);
    }
  }
  return files;
}

int scan_exit_code(const ScanSummary& summary) {
  if (summary.reports.empty()) return 3;
  if (summary.high > 0) return 2;
  if (summary.medium > 0) return 1;
  return 0;
}

std::string format_report_text(const RiskReport& r) {
  std::ostringstream out;
  out << r.apk_path << "\n";
  out << "  package        " << (r.package_name.empty() ? "(none)" : r.package_name)
      << "\n";
  out << "  likelihood     " << format_real(r.likelihood) << "\n";
  out << "  risk           " << band_name(r.band) << "\n";
  out << "  extraction     " << format_real(r.extraction_seconds) << " s\n";
  out << "  classification " << format_real(r.classification_seconds) << " s\n";
  for (const std::string& w : r.warnings) out << "  warning        " << w << "\n";
  if (!r.top_contributing_features.empty()) {
    out << "  top features\n";
    for (const auto& [name, value] : r.top_contributing_features)
      out << "    " << name << " = " << format_real(value) << "\n";
  }
  return out.str();
}

std::string format_report_jsonl(const RiskReport& r) {
  nlohmann::json j;
  j["apk_path"] = r.apk_path;
  j["package_name"] = r.package_name;
  j["likelihood"] = r.likelihood;
  j["band"] = band_name(r.band);
  j["extraction_seconds"] = r.extraction_seconds;
  j["classification_seconds"] = r.classification_seconds;
  j["warnings"] = r.warnings;
  nlohmann::json top = nlohmann::json::array();
  for (const auto& [name, value] : r.top_contributing_features)
    top.push_back({{"feature", name}, {"value", value}});
  j["top_contributing_features"] = top;
  return j.dump();
}

std::string format_summary_text(const ScanSummary& s) {
  std::ostringstream out;
  out << "scanned " << s.reports.size() << " ok, " << s.errors.size()
      << " failed; low " << s.low << ", medium " << s.medium << ", high "
      << s.high << "; wall " << format_real(s.wall_seconds) << " s\n";
  for (const ScanError& e : s.errors)
    out << "error: " << e.apk_path << ": " << e.message << "\n";
  return out.str();
}

}  // namespace droidrisk
