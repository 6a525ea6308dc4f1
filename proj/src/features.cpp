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

#include "droidrisk/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "droidrisk/error.hpp"

namespace droidrisk {

std::string FeatureVocabulary::feature_name(size_t i) const {
  if (i < permissions.size()) return "PERM:" + permissions[i];
  i -= permissions.size();
  if (i < intent_names.size()) return "INTENT:" + intent_names[i];
  i -= intent_names.size();
  if (i < stat_count()) {
    for (size_t s = 0; s < 4; ++s) {
      if (!stat_mask[s]) continue;
      if (i == 0) return std::string("STAT:") + kStatNames[s];
      --i;
    }
  }
  i -= stat_count();
  if (i < api_watchlist.entries.size()) {
    const MethodRef& m = api_watchlist.entries[i];
    return "API:" + m.class_descriptor + "->" + m.method_name;
  }
  fail(ErrorCode::OutOfRange, "feature index past vocabulary size");
}

FeatureVocabulary build_vocabulary(const std::vector<ManifestModel>& manifests,
                                   ApiWatchlist watchlist, size_t cap) {
  const size_t fixed = 4 + watchlist.entries.size();
  if (cap < fixed)
    fail(ErrorCode::CapTooSmall, "cap " + std::to_string(cap) +
                                     " below fixed slot count " +
                                     std::to_string(fixed));

  // document frequency per name
  std::map<std::string, size_t> perm_freq;
  std::map<std::string, size_t> intent_freq;
  for (const ManifestModel& m : manifests) {
    for (const std::string& p : m.permissions) perm_freq[p]++;
    for (const auto& [name, count] : m.intent_entries) intent_freq[name]++;
  }

  FeatureVocabulary vocab;
  vocab.api_watchlist = std::move(watchlist);
  vocab.version = 1;
  for (const auto& [name, freq] : perm_freq) vocab.permissions.push_back(name);
  for (const auto& [name, freq] : intent_freq) vocab.intent_names.push_back(name);

  size_t total = vocab.size();
  if (total > cap) {
    size_t to_drop = total - cap;
    // rarest first; equal frequency drops the lexicographically greater name
    auto drop_from = [&](std::vector<std::string>& names,
                         std::map<std::string, size_t>& freq, size_t count) {
      std::vector<std::string> order = names;
      std::sort(order.begin(), order.end(),
                [&](const std::string& a, const std::string& b) {
                  if (freq[a] != freq[b]) return freq[a] < freq[b];
                  return a > b;
                });
      order.resize(count);
      std::set<std::string> dropped(order.begin(), order.end());
      names.erase(std::remove_if(names.begin(), names.end(),
                                 [&](const std::string& n) {
                                   return dropped.count(n) != 0;
                                 }),
                  names.end());
    };
    size_t from_intents = std::min(to_drop, vocab.intent_names.size());
    drop_from(vocab.intent_names, intent_freq, from_intents);
    to_drop -= from_intents;
    if (to_drop > 0) drop_from(vocab.permissions, perm_freq, to_drop);
  }
  return vocab;
}

ExtractionResult extract_app(const ApkArchive& apk, const FeatureVocabulary& vocab) {
  if (!apk.has_entry("AndroidManifest.xml"))
    fail(ErrorCode::ManifestMissing, "no AndroidManifest.xml entry");

  ExtractionResult result;
  std::vector<uint8_t> manifest_bytes = apk.read_entry("AndroidManifest.xml");
  result.manifest = parse_manifest(manifest_bytes);

  std::vector<DexIndex> dexes;
  for (const std::string& name : apk.dex_entry_names()) {
    std::vector<uint8_t> dex_bytes = apk.read_entry(name);
    DexIndex index = parse_dex(dex_bytes);
    if (!index.checksum_ok)
      result.warnings.push_back(name + ": adler-32 checksum mismatch");
    dexes.push_back(std::move(index));
  }

  std::unordered_map<std::string, size_t> perm_idx;
  for (size_t i = 0; i < vocab.permissions.size(); ++i)
    perm_idx.emplace(vocab.permissions[i], i);
  std::unordered_map<std::string, size_t> intent_idx;
  for (size_t i = 0; i < vocab.intent_names.size(); ++i)
    intent_idx.emplace(vocab.intent_names[i], vocab.permissions.size() + i);

  FeatureVector vec;
  vec.vocabulary_version = vocab.version;
  vec.values.assign(vocab.size(), 0.0);

  for (const std::string& p : result.manifest.permissions) {
    auto it = perm_idx.find(p);
    if (it != perm_idx.end()) vec.values[it->second] = 1.0;
  }
  for (const auto& [name, count] : intent_counts(result.manifest)) {
    auto it = intent_idx.find(name);
    if (it != intent_idx.end()) vec.values[it->second] = static_cast<double>(count);
  }
  const ComponentCounts& cc = result.manifest.component_counts;
  const double stats[4] = {static_cast<double>(cc.activities),
                           static_cast<double>(cc.services),
                           static_cast<double>(cc.receivers),
                           static_cast<double>(cc.providers)};
  size_t slot = vocab.stat_offset();
  for (size_t s = 0; s < 4; ++s) {
    if (vocab.stat_mask[s]) vec.values[slot++] = stats[s];
  }

  std::vector<uint8_t> bits = api_presence(dexes, vocab.api_watchlist);
  size_t a = vocab.api_offset();
  for (size_t i = 0; i < bits.size(); ++i) vec.values[a + i] = bits[i];

  result.vector = std::move(vec);
  return result;
}

FeatureVector extract_features(const ApkArchive& apk, const FeatureVocabulary& vocab) {
  return extract_app(apk, vocab).vector;
}

std::pair<SelectionResult, FeatureVocabulary> select_features(
    const FeatureVocabulary& vocab, std::span<const double> importances,
    double fraction) {
  const size_t size = vocab.size();
  if (importances.size() != size)
    fail(ErrorCode::LengthMismatch,
         "importances length " + std::to_string(importances.size()) +
             " != vocabulary size " + std::to_string(size));
  if (!(fraction > 0.0) || fraction > 1.0)
    fail(ErrorCode::OutOfRange, "fraction must be in (0, 1]");

  size_t keep = static_cast<size_t>(std::llround(fraction * static_cast<double>(size)));
  keep = std::min(std::max<size_t>(keep, 1), size);

  std::vector<size_t> ranked(size);
  std::iota(ranked.begin(), ranked.end(), size_t{0});
  std::stable_sort(ranked.begin(), ranked.end(), [&](size_t a, size_t b) {
    if (importances[a] != importances[b]) return importances[a] > importances[b];
    return a < b;
  });
  ranked.resize(keep);

  SelectionResult sel;
  sel.kept_indices = ranked;
  sel.fraction = fraction;
  sel.importances.assign(importances.begin(), importances.end());
  sel.parent_size = size;
  sel.parent_version = vocab.version;
  sel.reduced_version = vocab.version + 1;

  std::vector<bool> kept(size, false);
  for (size_t i : ranked) kept[i] = true;

  FeatureVocabulary reduced;
  reduced.version = sel.reduced_version;
  for (size_t i = 0; i < vocab.permissions.size(); ++i)
    if (kept[i]) reduced.permissions.push_back(vocab.permissions[i]);
  for (size_t i = 0; i < vocab.intent_names.size(); ++i)
    if (kept[vocab.permissions.size() + i])
      reduced.intent_names.push_back(vocab.intent_names[i]);
  reduced.stat_mask = {0, 0, 0, 0};
  {
    size_t slot = vocab.stat_offset();
    for (size_t s = 0; s < 4; ++s) {
      if (!vocab.stat_mask[s]) continue;
      if (kept[slot]) reduced.stat_mask[s] = 1;
      ++slot;
    }
  }
  reduced.api_watchlist.source = vocab.api_watchlist.source;
  for (size_t i = 0; i < vocab.api_watchlist.entries.size(); ++i)
    if (kept[vocab.api_offset() + i])
      reduced.api_watchlist.entries.push_back(vocab.api_watchlist.entries[i]);
  return {std::move(sel), std::move(reduced)};
}

FeatureVector project(const FeatureVector& vector, const SelectionResult& selection) {
  if (vector.values.size() != selection.parent_size)
    fail(ErrorCode::LengthMismatch,
         "vector width " + std::to_string(vector.values.size()) +
             " != selection parent size " + std::to_string(selection.parent_size));
  std::vector<size_t> order = selection.kept_indices;
  std::sort(order.begin(), order.end());
  FeatureVector out;
  out.vocabulary_version = selection.reduced_version;
  out.values.reserve(order.size());
  for (size_t i : order) out.values.push_back(vector.values[i]);
  return out;
}

void write_vocabulary_lines(const FeatureVocabulary& vocab, std::ostream& out) {
  for (const std::string& p : vocab.permissions) out << "PERM:" << p << "\n";
  for (const std::string& n : vocab.intent_names) out << "INTENT:" << n << "\n";
  for (size_t s = 0; s < 4; ++s)
    if (vocab.stat_mask[s])
      out << "STAT:" << FeatureVocabulary::kStatNames[s] << "\n";
  for (const MethodRef& m : vocab.api_watchlist.entries)
    out << "API:" << m.class_descriptor << "->" << m.method_name << "\n";
}

FeatureVocabulary read_vocabulary_lines(std::istream& in, size_t n_lines,
                                        uint32_t version, const std::string& where) {
  FeatureVocabulary vocab;
  vocab.version = version;
  vocab.stat_mask = {0, 0, 0, 0};
  vocab.api_watchlist.source = where;
  int stage = 0;  // 0 PERM, 1 INTENT, 2 STAT, 3 API
  size_t stat_cursor = 0;
  for (size_t i = 0; i < n_lines; ++i) {
    std::string line;
    if (!std::getline(in, line))
      fail(ErrorCode::CorruptModel, where + ": vocabulary block truncated");
    if (line.size() && line.back() == '\r') line.pop_back();
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::CorruptModel, where + ": bad vocabulary line '" + line + "'");
    std::string cat = line.substr(0, colon);
    std::string name = line.substr(colon + 1);
    int want;
    if (cat == "PERM")
      want = 0;
    else if (cat == "INTENT")
      want = 1;
    else if (cat == "STAT")
      want = 2;
    else if (cat == "API")
      want = 3;
    else
      fail(ErrorCode::CorruptModel, where + ": unknown category '" + cat + "'");
    if (want < stage)
      fail(ErrorCode::CorruptModel, where + ": categories out of order");
    stage = want;
    switch (want) {
      case 0:
        vocab.permissions.push_back(name);
        break;
      case 1:
        vocab.intent_names.push_back(name);
        break;
      case 2: {
        // stat lines must be a subsequence of the canonical four
        while (stat_cursor < 4 && name != FeatureVocabulary::kStatNames[stat_cursor])
          ++stat_cursor;
        if (stat_cursor >= 4)
          fail(ErrorCode::CorruptModel, where + ": bad stat slot '" + name + "'");
        vocab.stat_mask[stat_cursor] = 1;
        ++stat_cursor;
        break;
      }
      case 3: {
        size_t arrow = name.find("->");
        if (arrow == std::string::npos)
          fail(ErrorCode::CorruptModel, where + ": bad API line '" + name + "'");
        vocab.api_watchlist.entries.push_back(
            MethodRef{name.substr(0, arrow), name.substr(arrow + 2)});
        break;
      }
    }
  }
  return vocab;
}

void save_vocabulary(const FeatureVocabulary& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot create " + path);
  out << "droidrisk-vocab 1\n";
  out << "version " << vocab.version << "\n";
  out << "size " << vocab.size() << "\n";
  write_vocabulary_lines(vocab, out);
  if (!out) fail(ErrorCode::IoError, "short write on " + path);
}

FeatureVocabulary load_vocabulary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "droidrisk-vocab 1")
    fail(ErrorCode::CorruptModel, path + ": not a vocabulary file");
  uint32_t version = 0;
  size_t size = 0;
  if (!std::getline(in, line) || sscanf(line.c_str(), "version %u", &version) != 1)
    fail(ErrorCode::CorruptModel, path + ": missing version line");
  if (!std::getline(in, line) || sscanf(line.c_str(), "size %zu", &size) != 1)
    fail(ErrorCode::CorruptModel, path + ": missing size line");
  FeatureVocabulary vocab = read_vocabulary_lines(in, size, version, path);
  if (vocab.size() != size)
    fail(ErrorCode::CorruptModel, path + ": size line disagrees with content");
  return vocab;
}

}  // namespace droidrisk
