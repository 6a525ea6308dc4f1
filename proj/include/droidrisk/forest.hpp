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
#include <optional>
#include <span>
#include <vector>

#include "droidrisk/dataset.hpp"

namespace droidrisk {

// Random Forest binary classifier with Gini splits and mean-decrease-impurity
// importances. Everything is deterministic in (data, params): bootstrap and
// per-node feature subsets come from per-tree SplitMix64 streams derived from
// (seed, tree_index), so trees may be built on any number of threads without
// changing the result.
struct ForestParams {
  int n_trees = 64;
  int max_depth = 32;
  int min_samples_leaf = 1;
  int features_per_split = 0;  // 0 means ceil(sqrt(n_features))
  bool bootstrap = true;
  uint64_t seed = 0;
};

// Flat node record; nodes of one tree live in preorder in Tree::nodes.
// feature_index < 0 marks a leaf. impurity_decrease and n_samples are
// fit-time metadata; prediction needs only feature/threshold/children and
// leaf positive fractions.
struct TreeNode {
  int32_t feature_index = -1;
  double threshold = 0.0;
  int32_t left = -1;
  int32_t right = -1;
  double impurity_decrease = 0.0;
  double positive_fraction = 0.0;
  uint32_t n_samples = 0;

  bool is_leaf() const { return feature_index < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0
};

struct Forest {
  std::vector<Tree> trees;
  ForestParams params;
  size_t n_features = 0;
  uint32_t vocabulary_version = 0;
  std::vector<double> importances;  // normalized MDI, sums to 1 or all-zero
};

// Gini impurity 1 - p_neg^2 - p_pos^2 of a two-class node.
double gini(uint64_t neg_count, uint64_t pos_count);

struct SplitChoice {
  size_t feature = 0;
  double threshold = 0.0;
  double impurity_decrease = 0.0;  // weighted: G(p) - nL/n G(L) - nR/n G(R)
};

// Best threshold over the candidate features, evaluated at midpoints between
// consecutive distinct sorted values. Split quality is compared in exact
// integer arithmetic (the decrease is a ratio of integer class counts), so
// the argmax and its tie-breaking — lower feature index, then lower
// threshold — are platform-independent. Returns nullopt when no split has a
// strictly positive decrease.
std::optional<SplitChoice> best_split(const Dataset& data,
                                      std::span<const size_t> sample_rows,
                                      std::span<const size_t> candidate_features,
                                      int min_samples_leaf = 1);

Forest train_forest(const Dataset& data, const ForestParams& params, int n_jobs = 1);

double predict_proba(const Forest& forest, std::span<const double> x);

const std::vector<double>& feature_importances(const Forest& forest);

}  // namespace droidrisk
