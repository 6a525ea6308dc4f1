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

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "droidrisk/dataset.hpp"
#include "droidrisk/forest.hpp"

namespace droidrisk {

struct EvalMetrics {
  double tpr = 0.0;  // detection rate: tp / (tp + fn)
  double fpr = 0.0;  // fp / (fp + tn)
  double threshold = 0.0;
  uint64_t tp = 0, fn = 0, fp = 0, tn = 0;
};

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) to (1,1)
  double auc = 0.0;
};

struct CvReport {
  int k = 0;
  std::vector<EvalMetrics> per_fold;
  RocCurve pooled_roc;
  uint64_t seed = 0;
  // pooled held-out scores in sample index order; the data behind pooled_roc
  std::vector<double> pooled_scores;
  std::vector<int> pooled_labels;
};

// Stratified k-fold assignment: per-class counts per fold differ by at most
// one, fold sizes differ by at most one, deterministic in seed. Each sample
// lands in exactly one test fold.
std::vector<std::vector<size_t>> kfold_split(const std::vector<int>& labels,
                                             int k, uint64_t seed);

// Threshold sweep over descending scores with tied scores moving together;
// AUC by the trapezoid rule (equals tie-aware pairwise concordance).
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels);

// Confusion and rates with "positive" meaning score >= threshold.
EvalMetrics metrics_at(std::span<const double> scores, std::span<const int> labels,
                       double threshold);

// k-fold cross-validation: each fold is scored by a forest trained on the
// other k-1 folds; held-out scores pool into one ROC. Per-fold metrics are
// taken at decision_threshold.
CvReport cross_validate(const Dataset& data, const ForestParams& params, int k,
                        uint64_t seed, double decision_threshold = 0.4,
                        int n_jobs = 1);

std::string format_cv_report(const CvReport& report);
void write_roc_points(const RocCurve& curve, const std::string& path);

}  // namespace droidrisk
