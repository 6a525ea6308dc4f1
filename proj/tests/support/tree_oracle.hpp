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

#include "droidrisk/dataset.hpp"
#include "droidrisk/forest.hpp"

// Brute-force CART reference: enumerates every (feature, threshold) pair per
// node, recomputing the class counts from scratch and comparing impurity
// decreases as exact rational numbers. Ties resolve to the lower feature
// index, then the lower threshold. Structurally independent of the library's
// incremental sweep; the two must produce identical trees.

namespace testsupport {

droidrisk::Tree oracle_single_tree(const droidrisk::Dataset& data, int max_depth,
                                   int min_samples_leaf);

// Empty string when equal, otherwise a human-readable first difference.
std::string compare_trees(const droidrisk::Tree& a, const droidrisk::Tree& b);

}  // namespace testsupport
