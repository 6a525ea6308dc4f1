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
#include <map>
#include <set>
#include <span>
#include <string>

namespace droidrisk {

struct ComponentCounts {
  uint32_t activities = 0;
  uint32_t services = 0;
  uint32_t receivers = 0;
  uint32_t providers = 0;
};

// The manifest-side feature sources: declared permissions (a set — declaring
// one twice changes nothing), per-name occurrence counts of intent-filter
// actions and categories, and the four component statistics.
struct ManifestModel {
  std::string package_name;
  std::set<std::string> permissions;
  std::map<std::string, uint32_t> intent_entries;
  ComponentCounts component_counts;
};

// Parses AndroidManifest.xml from either encoding. A buffer starting with the
// AXML magic (little-endian 0x00080003) takes the binary path: string pool,
// optional resource map, namespace and element chunks. Anything else must be
// well-formed text XML (the fixture path). Both paths produce the same model
// for the same document.
ManifestModel parse_manifest(std::span<const uint8_t> bytes);

// Occurrence count per intent action/category name; two separate filters
// declaring action X yield X -> 2.
const std::map<std::string, uint32_t>& intent_counts(const ManifestModel& model);

}  // namespace droidrisk
