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
#include <set>
#include <span>
#include <string>
#include <vector>

namespace droidrisk {

// A referenced framework method: class descriptor plus method name, e.g.
// ("Ljava/lang/reflect/Method;", "invoke"). Reference presence in the
// method_ids table is the whole signal — no bytecode decoding.
struct MethodRef {
  std::string class_descriptor;
  std::string method_name;

  auto operator<=>(const MethodRef&) const = default;
};

// Identifier tables of one DEX file. Only the header-level tables are read;
// class data and code sections never are, which keeps extraction fast.
struct DexIndex {
  std::string version;                        // "035".."039"
  std::vector<std::string> string_items;      // decoded MUTF-8 strings
  std::vector<std::string> type_descriptors;  // resolved via string_items
  std::vector<MethodRef> method_refs;
  bool checksum_ok = true;  // Adler-32 mismatch is a warning, not a failure
};

// Ordered watchlist of (class, method) pairs; feature index == position in
// the file. Lines are "Lcls;->method", '#' starts a comment.
struct ApiWatchlist {
  std::vector<MethodRef> entries;
  std::string source;
};

DexIndex parse_dex(std::span<const uint8_t> bytes);

std::set<MethodRef> referenced_methods(const DexIndex& index);

// Bit i set iff watchlist entry i is referenced by any DEX in the list —
// the union over all classes*.dex of a multidex app. Presence only, never
// counts.
std::vector<uint8_t> api_presence(const std::vector<DexIndex>& dex_list,
                                  const ApiWatchlist& watchlist);

ApiWatchlist load_watchlist(const std::string& path);
ApiWatchlist parse_watchlist(const std::string& text, const std::string& source);

}  // namespace droidrisk
