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
#include <vector>

// Test-only builders for container and dex payload bytes. These exist so
// tests can construct malformed, oversized, or precisely-shaped inputs that
// the committed fixtures do not cover.

namespace testsupport {

class ZipBuilder {
 public:
  // method 0 = stored, 8 = deflate; anything else is written verbatim to
  // produce an unsupported-method archive.
  ZipBuilder& add(const std::string& name, const std::vector<uint8_t>& payload,
                  uint16_t method = 8);
  std::vector<uint8_t> build() const;

 private:
  struct Entry {
    std::string name;
    std::vector<uint8_t> raw;
    std::vector<uint8_t> stored_payload;
    uint32_t crc = 0;
    uint16_t method = 0;
  };
  std::vector<Entry> entries_;
};

// Minimal valid dex holding exactly these method references, all sharing a
// ()V prototype. filler_strings fattens the string table for size tests.
std::vector<uint8_t> build_dex(
    const std::vector<std::pair<std::string, std::string>>& methods,
    size_t filler_strings = 0, const std::string& version = "035");

std::vector<uint8_t> str_bytes(const std::string& s);

}  // namespace testsupport
