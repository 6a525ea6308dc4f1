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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "droidrisk/apk.hpp"
#include "droidrisk/axml.hpp"
#include "droidrisk/dex.hpp"

namespace droidrisk {

// Ordered feature dictionary. The vector layout is fixed: permissions
// (lexicographic), intent action/category names (lexicographic), the four
// component statistics, then the API watchlist in file order. Permission and
// API slots are binary; intent and stat slots are non-negative counts.
// A freshly built vocabulary always carries all four stat slots; a reduced
// one may have dropped some, tracked by stat_mask.
struct FeatureVocabulary {
  std::vector<std::string> permissions;
  std::vector<std::string> intent_names;
  std::array<uint8_t, 4> stat_mask = {1, 1, 1, 1};
  ApiWatchlist api_watchlist;
  uint32_t version = 1;

  static constexpr std::array<const char*, 4> kStatNames = {
      "activities", "services", "receivers", "providers"};

  size_t stat_count() const {
    return static_cast<size_t>(stat_mask[0]) + stat_mask[1] + stat_mask[2] +
           stat_mask[3];
  }
  size_t size() const {
    return permissions.size() + intent_names.size() + stat_count() +
           api_watchlist.entries.size();
  }
  size_t stat_offset() const { return permissions.size() + intent_names.size(); }
  size_t api_offset() const { return stat_offset() + stat_count(); }

  // Category-qualified name of feature i: "PERM:...", "INTENT:...",
  // "STAT:activities", "API:Lcls;->method".
  std::string feature_name(size_t i) const;
};

struct FeatureVector {
  std::vector<double> values;
  uint32_t vocabulary_version = 0;
};

// Importance-based selection. kept_indices is the ranking (descending
// importance, ties by ascending index); projection and the reduced
// vocabulary both use the canonical ascending-index order so that a
// projected vector and a vector extracted under the reduced vocabulary are
// identical.
struct SelectionResult {
  std::vector<size_t> kept_indices;
  double fraction = 1.0;
  std::vector<double> importances;
  size_t parent_size = 0;
  uint32_t parent_version = 0;
  uint32_t reduced_version = 0;
};

// Union of the corpus' permission and intent names plus the fixed slots.
// When the union exceeds cap, the rarest intent names go first, then the
// rarest permissions, until the total equals cap (rarity by number of apps
// using the name; ties drop the lexicographically greater name first).
FeatureVocabulary build_vocabulary(const std::vector<ManifestModel>& manifests,
                                   ApiWatchlist watchlist, size_t cap);

FeatureVector extract_features(const ApkArchive& apk, const FeatureVocabulary& vocab);

// Extraction plus the pieces the scanner reports: parsed manifest and
// non-fatal warnings (e.g. a stale dex checksum).
struct ExtractionResult {
  FeatureVector vector;
  ManifestModel manifest;
  std::vector<std::string> warnings;
};
ExtractionResult extract_app(const ApkArchive& apk, const FeatureVocabulary& vocab);

std::pair<SelectionResult, FeatureVocabulary> select_features(
    const FeatureVocabulary& vocab, std::span<const double> importances,
    double fraction);

FeatureVector project(const FeatureVector& vector, const SelectionResult& selection);

// Vocabulary file: "droidrisk-vocab 1" / "version N" / "size N" then one
// "<category>:<name>" line per feature in vector order.
void save_vocabulary(const FeatureVocabulary& vocab, const std::string& path);
FeatureVocabulary load_vocabulary(const std::string& path);
void write_vocabulary_lines(const FeatureVocabulary& vocab, std::ostream& out);
FeatureVocabulary read_vocabulary_lines(std::istream& in, size_t n_lines,
                                        uint32_t version, const std::string& where);

}  // namespace droidrisk
