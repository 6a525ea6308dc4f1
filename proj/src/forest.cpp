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

#include "droidrisk/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "droidrisk/error.hpp"
#include "droidrisk/rng.hpp"

namespace droidrisk {

double gini(uint64_t neg_count, uint64_t pos_count) {
  uint64_t total = neg_count + pos_count;
  if (total == 0) fail(ErrorCode::EmptyNode, "gini of an empty node");
  double p0 = static_cast<double>(neg_count) / static_cast<double>(total);
  double p1 = static_cast<double>(pos_count) / static_cast<double>(total);
  return 1.0 - p0 * p0 - p1 * p1;
}

namespace {

using int128 = __int128;

// Exact split-gain comparison. With class counts (a, b) in the parent and
// (al, bl) / (ar, br) in the children, the weighted impurity decrease is
//   delta = K / (n^2 * nl * nr),
//   K = n*nr*(al^2+bl^2) + n*nl*(ar^2+br^2) - nl*nr*(a^2+b^2).
// n^2 is shared by all candidate splits of one node, so two candidates
// compare as K1*(nl2*nr2) vs K2*(nl1*nr1) — pure integers, no rounding.
// delta > 0 iff K > 0.
struct ExactGain {
  int128 k = 0;
  int64_t nl = 0;
  int64_t nr = 0;
};

ExactGain exact_gain(int64_t n, int64_t a, int64_t b, int64_t al, int64_t bl) {
  int64_t ar = a - al;
  int64_t br = b - bl;
  int64_t nl = al + bl;
  int64_t nr = ar + br;
  int128 k = static_cast<int128>(n) * nr * (al * al + bl * bl) +
             static_cast<int128>(n) * nl * (ar * ar + br * br) -
             static_cast<int128>(nl) * nr * (a * a + b * b);
  return ExactGain{k, nl, nr};
}

bool strictly_better(const ExactGain& lhs, const ExactGain& rhs) {
  return lhs.k * (static_cast<int128>(rhs.nl) * rhs.nr) >
         rhs.k * (static_cast<int128>(lhs.nl) * lhs.nr);
}

struct GrowContext {
  const Dataset& data;
  int max_depth;
  int min_samples_leaf;
  size_t mtry;
  SplitMix64& rng;
  Tree& tree;
  std::vector<double>& raw_importance;  // per-feature, this tree
  size_t n_total;                       // samples the tree was fit on
};

// Depth-first preorder growth; the recursion owns its index range in place
// and partitions it for the children.
int32_t grow_node(GrowContext& ctx, std::span<size_t> rows, int depth) {
  uint64_t pos = 0;
  for (size_t r : rows) pos += static_cast<uint64_t>(ctx.data.labels[r]);
  uint64_t neg = rows.size() - pos;

  int32_t node_index = static_cast<int32_t>(ctx.tree.nodes.size());
  ctx.tree.nodes.push_back(TreeNode{});
  {
    TreeNode& node = ctx.tree.nodes.back();
    node.n_samples = static_cast<uint32_t>(rows.size());
    node.positive_fraction =
        static_cast<double>(pos) / static_cast<double>(rows.size());
  }

  bool pure = pos == 0 || neg == 0;
  bool splittable = depth < ctx.max_depth &&
                    rows.size() >= 2 * static_cast<size_t>(ctx.min_samples_leaf) &&
                    rows.size() >= 2;
  if (pure || !splittable) return node_index;

  std::vector<size_t> candidates =
      ctx.rng.sample_indices(ctx.mtry, ctx.data.cols);
  std::optional<SplitChoice> choice =
      best_split(ctx.data, rows, candidates, ctx.min_samples_leaf);
  if (!choice) return node_index;

  auto mid = std::partition(rows.begin(), rows.end(), [&](size_t r) {
    return ctx.data.at(r, choice->feature) <= choice->threshold;
  });
  size_t left_count = static_cast<size_t>(mid - rows.begin());

  ctx.raw_importance[choice->feature] +=
      (static_cast<double>(rows.size()) / static_cast<double>(ctx.n_total)) *
      choice->impurity_decrease;

  {
    TreeNode& node = ctx.tree.nodes[node_index];
    node.feature_index = static_cast<int32_t>(choice->feature);
    node.threshold = choice->threshold;
    node.impurity_decrease = choice->impurity_decrease;
  }
  int32_t left = grow_node(ctx, rows.subspan(0, left_count), depth + 1);
  int32_t right = grow_node(ctx, rows.subspan(left_count), depth + 1);
  ctx.tree.nodes[node_index].left = left;
  ctx.tree.nodes[node_index].right = right;
  return node_index;
}

}  // namespace

std::optional<SplitChoice> best_split(const Dataset& data,
                                      std::span<const size_t> sample_rows,
                                      std::span<const size_t> candidate_features,
                                      int min_samples_leaf) {
  const size_t n = sample_rows.size();
  if (n == 0) return std::nullopt;

  int64_t total_pos = 0;
  for (size_t r : sample_rows) total_pos += data.labels[r];
  int64_t total_neg = static_cast<int64_t>(n) - total_pos;
  if (total_pos == 0 || total_neg == 0) return std::nullopt;

  const int64_t msl = min_samples_leaf;
  bool have_best = false;
  ExactGain best_gain;
  SplitChoice best;

  std::vector<std::pair<double, int>> column(n);
  for (size_t f : candidate_features) {
    for (size_t i = 0; i < n; ++i) {
      size_t r = sample_rows[i];
      column[i] = {data.at(r, f), data.labels[r]};
    }
    std::sort(column.begin(), column.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    int64_t left_pos = 0;
    for (size_t i = 1; i < n; ++i) {
      left_pos += column[i - 1].second;
      if (column[i].first == column[i - 1].first) continue;
      int64_t nl = static_cast<int64_t>(i);
      int64_t nr = static_cast<int64_t>(n) - nl;
      if (nl < msl || nr < msl) continue;
      int64_t left_neg = nl - left_pos;
      ExactGain gain = exact_gain(static_cast<int64_t>(n), total_neg, total_pos,
                                  left_neg, left_pos);
      if (gain.k <= 0) continue;
      // candidates arrive in ascending (feature, threshold) order, so a
      // strict comparison implements the tie rule by itself
      if (!have_best || strictly_better(gain, best_gain)) {
        have_best = true;
        best_gain = gain;
        best.feature = f;
        best.threshold = column[i - 1].first +
                         (column[i].first - column[i - 1].first) / 2.0;
        double parent = gini(static_cast<uint64_t>(total_neg),
                             static_cast<uint64_t>(total_pos));
        double left = gini(static_cast<uint64_t>(left_neg),
                           static_cast<uint64_t>(left_pos));
        double right = gini(static_cast<uint64_t>(total_neg - left_neg),
                            static_cast<uint64_t>(total_pos - left_pos));
        double wl = static_cast<double>(nl) / static_cast<double>(n);
        double wr = static_cast<double>(nr) / static_cast<double>(n);
        best.impurity_decrease = parent - wl * left - wr * right;
      }
    }
  }
  if (!have_best) return std::nullopt;
  return best;
}

Forest train_forest(const Dataset& data, const ForestParams& params, int n_jobs) {
  if (data.rows == 0 || data.cols == 0)
    fail(ErrorCode::ShapeMismatch, "empty training matrix");
  if (data.labels.size() != data.rows || data.values.size() != data.rows * data.cols)
    fail(ErrorCode::ShapeMismatch, "matrix/label shapes disagree");
  if (params.n_trees < 1 || params.max_depth < 1 || params.min_samples_leaf < 1)
    fail(ErrorCode::ShapeMismatch, "forest parameters out of range");

  bool has_pos = false, has_neg = false;
  for (int y : data.labels) {
    if (y == 0)
      has_neg = true;
    else if (y == 1)
      has_pos = true;
    else
      fail(ErrorCode::ShapeMismatch, "labels must be 0 or 1");
  }
  if (!has_pos || !has_neg)
    fail(ErrorCode::SingleClassTraining, "training set holds a single class");

  size_t mtry = params.features_per_split > 0
                    ? std::min<size_t>(params.features_per_split, data.cols)
                    : static_cast<size_t>(
                          std::ceil(std::sqrt(static_cast<double>(data.cols))));

  Forest forest;
  forest.params = params;
  forest.n_features = data.cols;
  forest.trees.resize(params.n_trees);
  std::vector<std::vector<double>> per_tree_importance(
      params.n_trees, std::vector<double>(data.cols, 0.0));

  auto build_tree = [&](int t) {
    SplitMix64 rng(derive_stream_seed(params.seed, static_cast<uint64_t>(t)));
    std::vector<size_t> rows(data.rows);
    if (params.bootstrap) {
      for (size_t i = 0; i < data.rows; ++i)
        rows[i] = static_cast<size_t>(rng.bounded(data.rows));
    } else {
      std::iota(rows.begin(), rows.end(), size_t{0});
    }
    GrowContext ctx{data,
                    params.max_depth,
                    params.min_samples_leaf,
                    mtry,
                    rng,
                    forest.trees[t],
                    per_tree_importance[t],
                    data.rows};
    grow_node(ctx, rows, 0);
  };

  int jobs = std::max(1, n_jobs);
  if (jobs == 1) {
    for (int t = 0; t < params.n_trees; ++t) build_tree(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    int worker_count = std::min(jobs, params.n_trees);
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&]() {
        for (int t = next.fetch_add(1); t < params.n_trees; t = next.fetch_add(1))
          build_tree(t);
      });
    }
    for (auto& th : workers) th.join();
  }

  // Mean decrease impurity: per-tree accumulated weighted decreases averaged
  // over trees, then normalized to sum 1. Reduction runs in tree order so
  // the result does not depend on the thread schedule.
  forest.importances.assign(data.cols, 0.0);
  for (int t = 0; t < params.n_trees; ++t) {
    for (size_t f = 0; f < data.cols; ++f)
      forest.importances[f] += per_tree_importance[t][f];
  }
  double total = 0.0;
  for (double v : forest.importances) total += v;
  if (total > 0.0) {
    for (double& v : forest.importances) v /= total;
  }
  return forest;
}

double predict_proba(const Forest& forest, std::span<const double> x) {
  if (x.size() != forest.n_features)
    fail(ErrorCode::ShapeMismatch,
         "vector width " + std::to_string(x.size()) + " != training width " +
             std::to_string(forest.n_features));
  double sum = 0.0;
  for (const Tree& tree : forest.trees) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
      node = x[static_cast<size_t>(node->feature_index)] <= node->threshold
                 ? &tree.nodes[node->left]
                 : &tree.nodes[node->right];
    }
    sum += node->positive_fraction;
  }
  return sum / static_cast<double>(forest.trees.size());
}

const std::vector<double>& feature_importances(const Forest& forest) {
  return forest.importances;
}

}  // namespace droidrisk
