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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "droidrisk/error.hpp"
#include "droidrisk/eval.hpp"
#include "droidrisk/rng.hpp"
#include "support/synthetic.hpp"

using namespace droidrisk;

namespace {

#define CHECK_FAILS_WITH(code_, expr)                  \
  do {                                                 \
    try {                                              \
      (void)(expr);                                    \
      FAIL_CHECK("expected " #code_ ", got no error"); \
    } catch (const Error& e) {                         \
      CHECK(e.code() == ErrorCode::code_);             \
    }                                                  \
  } while (0)

// tie-aware pairwise concordance: P(score_pos > score_neg) + 0.5 P(equal)
double concordance(const std::vector<double>& scores, const std::vector<int>& labels) {
  double num = 0.0;
  uint64_t pairs = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j])
        num += 1.0;
      else if (scores[i] == scores[j])
        num += 0.5;
    }
  }
  return num / static_cast<double>(pairs);
}

}  // namespace

TEST_CASE("stratified folds balance both classes") {
  SUBCASE("ten samples five folds") {
    std::vector<int> labels = {1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    auto folds = kfold_split(labels, 5, 9);
    REQUIRE(folds.size() == 5);
    for (const auto& fold : folds) {
      REQUIRE(fold.size() == 2);
      int pos = 0;
      for (size_t i : fold) pos += labels[i];
      CHECK(pos == 1);
    }
  }
  SUBCASE("eleven samples five folds") {
    std::vector<int> labels = {1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    auto folds = kfold_split(labels, 5, 9);
    std::multiset<size_t> sizes;
    for (const auto& fold : folds) sizes.insert(fold.size());
    CHECK(sizes == std::multiset<size_t>{3, 2, 2, 2, 2});
  }
  SUBCASE("deterministic in seed") {
    std::vector<int> labels(40);
    for (size_t i = 0; i < labels.size(); ++i) labels[i] = i % 3 == 0;
    CHECK(kfold_split(labels, 4, 77) == kfold_split(labels, 4, 77));
    CHECK(kfold_split(labels, 4, 77) != kfold_split(labels, 4, 78));
  }
  SUBCASE("too few samples") {
    std::vector<int> labels = {1, 0, 1, 0};
    CHECK_FAILS_WITH(TooFewSamples, kfold_split(labels, 5, 0));
    CHECK_FAILS_WITH(TooFewSamples, kfold_split(labels, 1, 0));
  }
}

TEST_CASE("folds partition the index set") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    size_t n = 20 + rng.bounded(180);
    std::vector<int> labels(n);
    for (auto& y : labels) y = rng.bounded(2);
    int pos = 0;
    for (int y : labels) pos += y;
    int k = 2 + static_cast<int>(rng.bounded(4));
    if (pos < k || static_cast<int>(n) - pos < k) continue;

    auto folds = kfold_split(labels, k, rep);
    std::set<size_t> seen;
    size_t total = 0, min_size = n, max_size = 0;
    for (const auto& fold : folds) {
      total += fold.size();
      min_size = std::min(min_size, fold.size());
      max_size = std::max(max_size, fold.size());
      for (size_t i : fold) CHECK(seen.insert(i).second);  // disjoint
    }
    CHECK(total == n);  // union covers everything
    CHECK(max_size - min_size <= 1);

    // per-class counts per fold within one of each other
    for (int cls : {0, 1}) {
      size_t lo = n, hi = 0;
      for (const auto& fold : folds) {
        size_t c = 0;
        for (size_t i : fold) c += labels[i] == cls;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      CHECK(hi - lo <= 1);
    }
  }
}

TEST_CASE("roc of a perfect ranking") {
  std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
  std::vector<int> labels = {1, 1, 0, 0};
  RocCurve roc = roc_curve(scores, labels);
  CHECK(roc.auc == 1.0);
  CHECK(roc.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(roc.points.back() == std::pair<double, double>{1.0, 1.0});
}

TEST_CASE("all-equal scores give chance auc") {
  std::vector<double> scores = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  std::vector<int> labels = {1, 0, 1, 0, 1, 0};
  CHECK(roc_curve(scores, labels).auc == 0.5);
}

TEST_CASE("auc equals pairwise concordance") {
  SUBCASE("the worked example") {
    std::vector<double> scores = {0.9, 0.4, 0.6, 0.1};
    std::vector<int> labels = {1, 0, 1, 0};
    CHECK(roc_curve(scores, labels).auc == 1.0);
    CHECK(concordance(scores, labels) == 1.0);
  }
  SUBCASE("random score sets with ties") {
    SplitMix64 rng(17);
    for (int rep = 0; rep < 30; ++rep) {
      size_t n = 10 + rng.bounded(90);
      std::vector<double> scores(n);
      std::vector<int> labels(n);
      bool pos = false, neg = false;
      for (size_t i = 0; i < n; ++i) {
        // quantized scores force tie groups
        scores[i] = static_cast<double>(rng.bounded(16)) / 15.0;
        labels[i] = static_cast<int>(rng.bounded(2));
        (labels[i] ? pos : neg) = true;
      }
      if (!pos || !neg) continue;
      double auc = roc_curve(scores, labels).auc;
      CHECK(std::abs(auc - concordance(scores, labels)) <= 1e-12);
    }
  }
}

TEST_CASE("roc points are monotone") {
  SplitMix64 rng(23);
  std::vector<double> scores(60);
  std::vector<int> labels(60);
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] = rng.uniform();
    labels[i] = i % 2;
  }
  RocCurve roc = roc_curve(scores, labels);
  for (size_t i = 1; i < roc.points.size(); ++i) {
    CHECK(roc.points[i].first >= roc.points[i - 1].first);
    CHECK(roc.points[i].second >= roc.points[i - 1].second);
  }
}

TEST_CASE("metrics at a threshold") {
  std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
  std::vector<int> labels = {1, 1, 0, 0};

  EvalMetrics perfect = metrics_at(scores, labels, 0.5);
  CHECK(perfect.tpr == 1.0);
  CHECK(perfect.fpr == 0.0);
  CHECK(perfect.tp == 2);
  CHECK(perfect.tn == 2);

  EvalMetrics flag_all = metrics_at(scores, labels, 0.0);
  CHECK(flag_all.tpr == 1.0);
  CHECK(flag_all.fpr == 1.0);

  EvalMetrics flag_none = metrics_at(scores, labels, 0.95);
  CHECK(flag_none.tpr == 0.0);
  CHECK(flag_none.fpr == 0.0);
}

TEST_CASE("raising the threshold never raises the rates") {
  SplitMix64 rng(41);
  std::vector<double> scores(80);
  std::vector<int> labels(80);
  for (size_t i = 0; i < scores.size(); ++i) {
    scores[i] = rng.uniform();
    labels[i] = static_cast<int>(rng.bounded(2));
  }
  labels[0] = 1;
  labels[1] = 0;
  double prev_tpr = 2.0, prev_fpr = 2.0;
  for (double t = 0.0; t <= 1.01; t += 0.05) {
    EvalMetrics m = metrics_at(scores, labels, t);
    CHECK(m.tpr <= prev_tpr);
    CHECK(m.fpr <= prev_fpr);
    prev_tpr = m.tpr;
    prev_fpr = m.fpr;
  }
}

TEST_CASE("single-class label sets are rejected") {
  std::vector<double> scores = {0.1, 0.2};
  std::vector<int> ones = {1, 1};
  CHECK_FAILS_WITH(SingleClassLabels, roc_curve(scores, ones));
  CHECK_FAILS_WITH(SingleClassLabels, metrics_at(scores, ones, 0.5));
}

TEST_CASE("cross validation separates separable data") {
  Dataset d = testsupport::make_blobs(300, 6, {0, 1, 2}, 1.5, 77);
  ForestParams p;
  p.n_trees = 16;
  p.seed = 77;
  CvReport report = cross_validate(d, p, 5, 77);
  CHECK(report.k == 5);
  CHECK(report.per_fold.size() == 5);
  CHECK(report.pooled_roc.auc >= 0.99);

  // deterministic in seed
  CvReport again = cross_validate(d, p, 5, 77);
  CHECK(report.pooled_scores == again.pooled_scores);
}

TEST_CASE("label-shuffled data scores near chance") {
  Dataset d = testsupport::make_blobs(240, 6, {0, 1, 2}, 1.5, 78);
  SplitMix64 rng(123);
  rng.shuffle(d.labels);  // break the feature-label link
  ForestParams p;
  p.n_trees = 16;
  p.seed = 78;
  CvReport report = cross_validate(d, p, 5, 78);
  CHECK(report.pooled_roc.auc >= 0.35);
  CHECK(report.pooled_roc.auc <= 0.65);
}

TEST_CASE("cross validation runs at the published corpus shape") {
  // 2311 + 2898 samples; nothing is claimed about the metrics, only that the
  // machinery completes
  Dataset d = testsupport::make_blobs(5209, 10, {0, 1}, 1.0, 99);
  size_t pos = 0;
  for (size_t i = 0; i < d.labels.size(); ++i) {
    d.labels[i] = i < 2311 ? 1 : 0;
    pos += d.labels[i];
  }
  CHECK(pos == 2311);
  ForestParams p;
  p.n_trees = 4;
  p.max_depth = 6;
  p.seed = 99;
  CvReport report = cross_validate(d, p, 5, 99);
  CHECK(report.per_fold.size() == 5);
  size_t total = 0;
  for (const EvalMetrics& m : report.per_fold) total += m.tp + m.fn + m.fp + m.tn;
  CHECK(total == 5209);
}

TEST_CASE("report formatting and roc file output") {
  Dataset d = testsupport::make_blobs(100, 3, {0}, 2.0, 7);
  ForestParams p;
  p.n_trees = 4;
  p.seed = 7;
  CvReport report = cross_validate(d, p, 2, 7);
  std::string text = format_cv_report(report);
  CHECK(text.find("cv folds 2") != std::string::npos);
  CHECK(text.find("pooled auc") != std::string::npos);

  std::string path = (std::filesystem::temp_directory_path() / "droidrisk_roc.txt").string();
  write_roc_points(report.pooled_roc, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  double fpr, tpr;
  size_t lines = 0;
  while (in >> fpr >> tpr) ++lines;
  CHECK(lines == report.pooled_roc.points.size());
  std::filesystem::remove(path);
}
