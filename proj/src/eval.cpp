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

#include "droidrisk/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"
#include "droidrisk/rng.hpp"

namespace droidrisk {

namespace {

void require_both_classes(std::span<const int> labels) {
  bool pos = false, neg = false;
  for (int y : labels) (y == 1 ? pos : neg) = true;
  if (!pos || !neg)
    fail(ErrorCode::SingleClassLabels, "both classes required");
}

}  // namespace

std::vector<std::vector<size_t>> kfold_split(const std::vector<int>& labels,
                                             int k, uint64_t seed) {
  if (k < 2) fail(ErrorCode::TooFewSamples, "k must be at least 2");
  std::vector<size_t> pos_idx, neg_idx;
  for (size_t i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? pos_idx : neg_idx).push_back(i);
  if (pos_idx.size() < static_cast<size_t>(k) ||
      neg_idx.size() < static_cast<size_t>(k))
    fail(ErrorCode::TooFewSamples,
         "each class needs at least k=" + std::to_string(k) + " members");

  SplitMix64 rng(derive_stream_seed(seed, 0));
  rng.shuffle(neg_idx);
  rng.shuffle(pos_idx);

  // One continuous round-robin across both classes: per-class counts per
  // fold differ by <= 1, and so do total fold sizes.
  std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
  size_t cursor = 0;
  for (const auto* cls : {&neg_idx, &pos_idx}) {
    for (size_t i : *cls) {
      folds[cursor % static_cast<size_t>(k)].push_back(i);
      ++cursor;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    fail(ErrorCode::ShapeMismatch, "scores/labels length mismatch");
  require_both_classes(labels);

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  uint64_t total_pos = 0, total_neg = 0;
  for (int y : labels) (y == 1 ? total_pos : total_neg)++;

  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  uint64_t tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    // tied scores move across the threshold together
    double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      if (labels[order[i]] == 1)
        ++tp;
      else
        ++fp;
      ++i;
    }
    curve.points.emplace_back(static_cast<double>(fp) / total_neg,
                              static_cast<double>(tp) / total_pos);
  }

  double auc = 0.0;
  for (size_t j = 1; j < curve.points.size(); ++j) {
    auto [x0, y0] = curve.points[j - 1];
    auto [x1, y1] = curve.points[j];
    auc += (x1 - x0) * (y0 + y1) / 2.0;
  }
  curve.auc = auc;
  return curve;
}

EvalMetrics metrics_at(std::span<const double> scores, std::span<const int> labels,
                       double threshold) {
  if (scores.size() != labels.size())
    fail(ErrorCode::ShapeMismatch, "scores/labels length mismatch");
  require_both_classes(labels);
  EvalMetrics m;
  m.threshold = threshold;
  for (size_t i = 0; i < scores.size(); ++i) {
    bool flagged = scores[i] >= threshold;
    if (labels[i] == 1)
      flagged ? ++m.tp : ++m.fn;
    else
      flagged ? ++m.fp : ++m.tn;
  }
  m.tpr = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  m.fpr = static_cast<double>(m.fp) / static_cast<double>(m.fp + m.tn);
  return m;
}

CvReport cross_validate(const Dataset& data, const ForestParams& params, int k,
                        uint64_t seed, double decision_threshold, int n_jobs) {
  std::vector<std::vector<size_t>> folds = kfold_split(data.labels, k, seed);

  CvReport report;
  report.k = k;
  report.seed = seed;
  report.pooled_scores.assign(data.rows, 0.0);
  report.pooled_labels = data.labels;

  for (int f = 0; f < k; ++f) {
    const std::vector<size_t>& test = folds[static_cast<size_t>(f)];
    std::vector<uint8_t> in_test(data.rows, 0);
    for (size_t i : test) in_test[i] = 1;

    Dataset train;
    train.cols = data.cols;
    for (size_t r = 0; r < data.rows; ++r) {
      if (in_test[r]) continue;
      train.values.insert(train.values.end(), data.values.begin() + r * data.cols,
                          data.values.begin() + (r + 1) * data.cols);
      train.labels.push_back(data.labels[r]);
      ++train.rows;
    }

    ForestParams fold_params = params;
    fold_params.seed = derive_stream_seed(seed, static_cast<uint64_t>(f) + 1);
    Forest forest = train_forest(train, fold_params, n_jobs);

    std::vector<double> fold_scores;
    std::vector<int> fold_labels;
    fold_scores.reserve(test.size());
    for (size_t r : test) {
      double s = predict_proba(
          forest, std::span<const double>(data.values.data() + r * data.cols,
                                          data.cols));
      report.pooled_scores[r] = s;
      fold_scores.push_back(s);
      fold_labels.push_back(data.labels[r]);
    }
    report.per_fold.push_back(
        metrics_at(fold_scores, fold_labels, decision_threshold));
  }

  report.pooled_roc = roc_curve(report.pooled_scores, report.pooled_labels);
  return report;
}

std::string format_cv_report(const CvReport& report) {
  std::ostringstream out;
  out << "cv folds " << report.k << " seed " << report.seed << "\n";
  for (size_t f = 0; f < report.per_fold.size(); ++f) {
    const EvalMetrics& m = report.per_fold[f];
    out << "fold " << f << " tpr " << format_real(m.tpr) << " fpr "
        << format_real(m.fpr) << " tp " << m.tp << " fn " << m.fn << " fp "
        << m.fp << " tn " << m.tn << "\n";
  }
  out << "pooled auc " << format_real(report.pooled_roc.auc) << "\n";
  return out.str();
}

void write_roc_points(const RocCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot create " + path);
  for (auto [fpr, tpr] : curve.points)
    out << format_real(fpr) << " " << format_real(tpr) << "\n";
  if (!out) fail(ErrorCode::IoError, "short write on " + path);
}

}  // namespace droidrisk
