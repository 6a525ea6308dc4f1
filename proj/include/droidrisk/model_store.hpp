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
#include <string>

#include "droidrisk/features.hpp"
#include "droidrisk/forest.hpp"
#include "droidrisk/risk.hpp"

namespace droidrisk {

// One self-contained model artifact: the forest, the vocabulary it was
// trained against, and the risk thresholds — a line-oriented text file so
// diffs stay reviewable and external compression works well. Reals are
// written with 17 significant digits and round-trip exactly; saving a loaded
// bundle reproduces the file byte for byte.
struct ModelBundle {
  Forest forest;
  FeatureVocabulary vocabulary;
  RiskThresholds risk_thresholds;
  uint32_t format_version = 1;
  std::string created_at;       // ISO-8601 UTC, an explicit input for
                                // reproducible artifacts
  std::string training_digest;  // "fnv1a64:<16 hex>" of the training matrix
};

std::string serialize_model(const ModelBundle& bundle);
ModelBundle parse_model(const std::string& text, const std::string& where);

// Returns bytes written.
uint64_t save_model(const ModelBundle& bundle, const std::string& path);
ModelBundle load_model(const std::string& path);

// Size of the serialized model after deflate, for model-budget reporting.
uint64_t deflate_compressed_size(const std::string& text);

std::string current_utc_timestamp();

}  // namespace droidrisk
