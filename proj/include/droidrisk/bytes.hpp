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
#include <span>
#include <string>
#include <vector>

#include "droidrisk/error.hpp"

namespace droidrisk {

// Bounds-checked little-endian cursor over a byte buffer. All binary parsers
// go through this; an out-of-range access throws the parser's truncation
// code instead of touching memory past the buffer.
class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> data, ErrorCode oob_code)
      : data_(data), oob_(oob_code) {}

  size_t size() const { return data_.size(); }
  size_t pos() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

  void seek(size_t off) {
    if (off > data_.size()) fail(oob_, "seek past end of buffer");
    pos_ = off;
  }

  void skip(size_t n) {
    require(n);
    pos_ += n;
  }

  uint8_t u8() {
    require(1);
    return data_[pos_++];
  }

  uint16_t u16() {
    require(2);
    uint16_t v = static_cast<uint16_t>(data_[pos_]) |
                 static_cast<uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }

  uint32_t u32() {
    require(4);
    uint32_t v = static_cast<uint32_t>(data_[pos_]) |
                 static_cast<uint32_t>(data_[pos_ + 1]) << 8 |
                 static_cast<uint32_t>(data_[pos_ + 2]) << 16 |
                 static_cast<uint32_t>(data_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }

  uint32_t u32_at(size_t off) const {
    if (off + 4 > data_.size() || off + 4 < off)
      fail(oob_, "u32 read past end of buffer");
    return static_cast<uint32_t>(data_[off]) |
           static_cast<uint32_t>(data_[off + 1]) << 8 |
           static_cast<uint32_t>(data_[off + 2]) << 16 |
           static_cast<uint32_t>(data_[off + 3]) << 24;
  }

  uint16_t u16_at(size_t off) const {
    if (off + 2 > data_.size() || off + 2 < off)
      fail(oob_, "u16 read past end of buffer");
    return static_cast<uint16_t>(data_[off]) |
           static_cast<uint16_t>(data_[off + 1]) << 8;
  }

  std::span<const uint8_t> bytes(size_t n) {
    require(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::span<const uint8_t> bytes_at(size_t off, size_t n) const {
    if (off > data_.size() || n > data_.size() - off)
      fail(oob_, "byte range past end of buffer");
    return data_.subspan(off, n);
  }

  // ULEB128 as used by the DEX format; capped at 5 bytes / 32 bits.
  uint32_t uleb128() {
    uint32_t result = 0;
    for (int shift = 0; shift < 35; shift += 7) {
      uint8_t b = u8();
      result |= static_cast<uint32_t>(b & 0x7f) << shift;
      if ((b & 0x80) == 0) return result;
    }
    fail(oob_, "uleb128 longer than 5 bytes");
  }

 private:
  void require(size_t n) const {
    if (n > remaining()) fail(oob_, "read past end of buffer");
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
  ErrorCode oob_;
};

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::span<const uint8_t> data);

// FNV-1a 64-bit, used for the training-matrix digest in model files.
uint64_t fnv1a64(std::span<const uint8_t> data, uint64_t seed = 0xcbf29ce484222325ull);
std::string to_hex64(uint64_t v);

// Shortest-but-exact decimal rendering used by every text format that must
// round-trip doubles (model files, CSV, reports): %.17g.
std::string format_real(double v);

}  // namespace droidrisk
