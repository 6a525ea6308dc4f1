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
#include <unordered_map>
#include <vector>

#include "droidrisk/error.hpp"

namespace droidrisk {

// Read-only access to APK (ZIP) containers. Only the subset of the format
// that APKs use in practice is supported: Stored and Deflated entries, no
// ZIP64, no encryption. Duplicate entry names are rejected outright —
// duplicate-entry packing is a known evasion trick, so the safe analysis
// posture is to fail closed.

enum class CompressionMethod : uint16_t {
  Stored = 0,
  Deflated = 8,
};

struct EntryRecord {
  std::string name;
  uint64_t compressed_size = 0;
  uint64_t uncompressed_size = 0;
  CompressionMethod method = CompressionMethod::Stored;
  uint32_t crc32 = 0;
  uint64_t local_header_offset = 0;
};

// Immutable after open_apk; safe to share read-only across threads.
class ApkArchive {
 public:
  ApkArchive(std::vector<uint8_t> bytes, std::vector<EntryRecord> entries);

  const std::vector<EntryRecord>& entries() const { return entries_; }
  uint64_t source_size() const { return bytes_.size(); }

  bool has_entry(const std::string& name) const;
  const EntryRecord& entry(const std::string& name) const;

  // Fully decompressed entry payload, CRC-32 verified against the central
  // directory record.
  std::vector<uint8_t> read_entry(const std::string& name) const;

  // Root-level classes.dex, classes2.dex, classes3.dex, ... in numeric order.
  std::vector<std::string> dex_entry_names() const;

 private:
  std::vector<uint8_t> bytes_;
  std::vector<EntryRecord> entries_;
  std::unordered_map<std::string, size_t> index_;
};

ApkArchive open_apk(const std::string& path);
ApkArchive open_apk_bytes(std::vector<uint8_t> bytes);

}  // namespace droidrisk
