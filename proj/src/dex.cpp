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

#include "droidrisk/dex.hpp"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

namespace {

constexpr size_t kHeaderSize = 112;
constexpr uint32_t kEndianConstant = 0x12345678;
constexpr uint32_t kReverseEndianConstant = 0x78563412;
// A single DEX can reference at most 65,536 methods; multidex exists because
// of this cap, and a header claiming more is malformed.
constexpr uint32_t kMaxMethodIds = 65536;

// MUTF-8: like UTF-8 except U+0000 is the two-byte sequence C0 80 and
// supplementary characters are encoded as CESU-8 surrogate pairs. Decoded
// here to real UTF-8.
std::string decode_mutf8(std::span<const uint8_t> data, size_t& pos, size_t limit) {
  std::string out;
  auto byte = [&]() -> uint8_t {
    if (pos >= limit) fail(ErrorCode::TruncatedDex, "mutf-8 string past data end");
    return data[pos++];
  };
  auto continuation = [&](uint8_t b) -> uint32_t {
    if ((b & 0xc0) != 0x80)
      fail(ErrorCode::TruncatedDex, "bad mutf-8 continuation byte");
    return b & 0x3f;
  };
  auto emit = [&](uint32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  };

  uint32_t pending_high = 0;
  while (true) {
    uint8_t b0 = byte();
    if (b0 == 0) break;  // NUL terminator
    uint32_t cp;
    if ((b0 & 0x80) == 0) {
      cp = b0;
    } else if ((b0 & 0xe0) == 0xc0) {
      cp = ((b0 & 0x1f) << 6) | continuation(byte());
    } else if ((b0 & 0xf0) == 0xe0) {
      uint32_t c1 = continuation(byte());
      uint32_t c2 = continuation(byte());
      cp = ((b0 & 0x0f) << 12) | (c1 << 6) | c2;
    } else {
      fail(ErrorCode::TruncatedDex, "bad mutf-8 lead byte");
    }
    if (cp >= 0xd800 && cp <= 0xdbff) {
      pending_high = cp;
      continue;
    }
    if (cp >= 0xdc00 && cp <= 0xdfff && pending_high != 0) {
      emit(0x10000 + ((pending_high - 0xd800) << 10) + (cp - 0xdc00));
      pending_high = 0;
      continue;
    }
    if (pending_high != 0) {
      emit(0xfffd);
      pending_high = 0;
    }
    emit(cp >= 0xdc00 && cp <= 0xdfff ? 0xfffd : cp);
  }
  if (pending_high != 0) emit(0xfffd);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

DexIndex parse_dex(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderSize)
    fail(ErrorCode::TruncatedDex, "buffer below 112-byte header");

  // magic: "dex\n0NN\0"
  static const uint8_t prefix[4] = {'d', 'e', 'x', '\n'};
  if (!std::equal(prefix, prefix + 4, bytes.begin()))
    fail(ErrorCode::BadMagic, "not a dex file");
  if (bytes[7] != 0 || bytes[4] != '0' || bytes[5] < '0' || bytes[5] > '9' ||
      bytes[6] < '0' || bytes[6] > '9')
    fail(ErrorCode::BadMagic, "malformed version in magic");
  std::string version(reinterpret_cast<const char*>(bytes.data() + 4), 3);
  if (version != "035" && version != "037" && version != "038" && version != "039")
    fail(ErrorCode::UnsupportedVersion, "dex version " + version);

  ByteReader r(bytes, ErrorCode::TruncatedDex);
  uint32_t checksum = r.u32_at(8);
  uint32_t endian_tag = r.u32_at(40);
  if (endian_tag == kReverseEndianConstant)
    fail(ErrorCode::ReverseEndianUnsupported, "big-endian dex");
  if (endian_tag != kEndianConstant)
    fail(ErrorCode::TruncatedDex, "bad endian tag");

  uint32_t string_ids_size = r.u32_at(56);
  uint32_t string_ids_off = r.u32_at(60);
  uint32_t type_ids_size = r.u32_at(64);
  uint32_t type_ids_off = r.u32_at(68);
  uint32_t proto_ids_size = r.u32_at(72);
  uint32_t method_ids_size = r.u32_at(88);
  uint32_t method_ids_off = r.u32_at(92);

  if (method_ids_size > kMaxMethodIds)
    fail(ErrorCode::IndexOutOfTable,
         "method_ids_size " + std::to_string(method_ids_size) + " exceeds 65536");

  // Tables must fit the file before anything is allocated for them.
  auto check_table = [&](uint32_t off, uint32_t count, uint32_t entry_size,
                         const char* what) {
    if (count == 0) return;
    uint64_t end = static_cast<uint64_t>(off) + static_cast<uint64_t>(count) * entry_size;
    if (off >= bytes.size() || end > bytes.size())
      fail(ErrorCode::TruncatedDex, std::string(what) + " table extends past EOF");
  };
  check_table(string_ids_off, string_ids_size, 4, "string_ids");
  check_table(type_ids_off, type_ids_size, 4, "type_ids");
  check_table(method_ids_off, method_ids_size, 8, "method_ids");

  DexIndex index;
  index.version = version;

  // Adler-32 over everything after magic+checksum; a mismatch is flagged but
  // extraction proceeds (repackaged apps often carry stale checksums).
  uint32_t actual = static_cast<uint32_t>(
      adler32(adler32(0L, Z_NULL, 0), bytes.data() + 12,
              static_cast<uInt>(bytes.size() - 12)));
  index.checksum_ok = actual == checksum;

  index.string_items.reserve(string_ids_size);
  for (uint32_t i = 0; i < string_ids_size; ++i) {
    uint32_t data_off = r.u32_at(string_ids_off + 4ull * i);
    if (data_off >= bytes.size())
      fail(ErrorCode::TruncatedDex, "string data offset past EOF");
    size_t pos = data_off;
    ByteReader sr(bytes, ErrorCode::TruncatedDex);
    sr.seek(pos);
    sr.uleb128();  // utf16 length; decoding stops at the NUL terminator
    pos = sr.pos();
    index.string_items.push_back(decode_mutf8(bytes, pos, bytes.size()));
  }

  index.type_descriptors.reserve(type_ids_size);
  for (uint32_t i = 0; i < type_ids_size; ++i) {
    uint32_t descriptor_idx = r.u32_at(type_ids_off + 4ull * i);
    if (descriptor_idx >= index.string_items.size())
      fail(ErrorCode::IndexOutOfTable, "type descriptor_idx out of string table");
    index.type_descriptors.push_back(index.string_items[descriptor_idx]);
  }

  index.method_refs.reserve(method_ids_size);
  for (uint32_t i = 0; i < method_ids_size; ++i) {
    size_t off = method_ids_off + 8ull * i;
    uint16_t class_idx = r.u16_at(off);
    uint16_t proto_idx = r.u16_at(off + 2);
    uint32_t name_idx = r.u32_at(off + 4);
    if (class_idx >= index.type_descriptors.size())
      fail(ErrorCode::IndexOutOfTable, "method class_idx out of type table");
    if (proto_idx >= proto_ids_size)
      fail(ErrorCode::IndexOutOfTable, "method proto_idx out of proto table");
    if (name_idx >= index.string_items.size())
      fail(ErrorCode::IndexOutOfTable, "method name_idx out of string table");
    index.method_refs.push_back(
        MethodRef{index.type_descriptors[class_idx], index.string_items[name_idx]});
  }
  return index;
}

std::set<MethodRef> referenced_methods(const DexIndex& index) {
  return std::set<MethodRef>(index.method_refs.begin(), index.method_refs.end());
}

std::vector<uint8_t> api_presence(const std::vector<DexIndex>& dex_list,
                                  const ApiWatchlist& watchlist) {
  std::set<MethodRef> all;
  for (const DexIndex& d : dex_list) {
    for (const MethodRef& m : d.method_refs) all.insert(m);
  }
  std::vector<uint8_t> bits(watchlist.entries.size(), 0);
  for (size_t i = 0; i < watchlist.entries.size(); ++i) {
    if (all.count(watchlist.entries[i])) bits[i] = 1;
  }
  return bits;
}

ApiWatchlist parse_watchlist(const std::string& text, const std::string& source) {
  ApiWatchlist list;
  list.source = source;
  std::set<MethodRef> seen;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t arrow = line.find("->");
    if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= line.size())
      fail(ErrorCode::InvalidWatchlist,
           source + ":" + std::to_string(line_no) + ": expected 'Lcls;->method'");
    MethodRef ref{trim(line.substr(0, arrow)), trim(line.substr(arrow + 2))};
    if (ref.class_descriptor.front() != 'L' || ref.class_descriptor.back() != ';')
      fail(ErrorCode::InvalidWatchlist,
           source + ":" + std::to_string(line_no) +
               ": class descriptor must look like 'Lpkg/Cls;'");
    if (!seen.insert(ref).second)
      fail(ErrorCode::InvalidWatchlist,
           source + ":" + std::to_string(line_no) + ": duplicate entry");
    list.entries.push_back(std::move(ref));
  }
  return list;
}

ApiWatchlist load_watchlist(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open watchlist " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_watchlist(ss.str(), path);
}

}  // namespace droidrisk
