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

#include "support/builders.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <set>
#include <stdexcept>

namespace testsupport {

namespace {

void put16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

void put32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

std::vector<uint8_t> deflate_raw(const std::vector<uint8_t>& in) {
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (deflateInit2(&zs, 6, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw std::runtime_error("deflateInit failed");
  std::vector<uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
  return out;
}

void uleb128(std::vector<uint8_t>& out, uint32_t n) {
  while (true) {
    uint8_t b = n & 0x7f;
    n >>= 7;
    if (n) {
      out.push_back(b | 0x80);
    } else {
      out.push_back(b);
      return;
    }
  }
}

}  // namespace

std::vector<uint8_t> str_bytes(const std::string& s) {
  return std::vector<uint8_t>(s.begin(), s.end());
}

ZipBuilder& ZipBuilder::add(const std::string& name,
                            const std::vector<uint8_t>& payload, uint16_t method) {
  Entry e;
  e.name = name;
  e.crc = static_cast<uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), payload.data(),
              static_cast<uInt>(payload.size())));
  e.method = method;
  e.stored_payload = payload;
  e.raw = method == 8 ? deflate_raw(payload) : payload;
  entries_.push_back(std::move(e));
  return *this;
}

std::vector<uint8_t> ZipBuilder::build() const {
  std::vector<uint8_t> out;
  std::vector<uint32_t> offsets;
  for (const Entry& e : entries_) {
    offsets.push_back(static_cast<uint32_t>(out.size()));
    put32(out, 0x04034b50);
    put16(out, 20);        // version needed
    put16(out, 0);         // flags
    put16(out, e.method);
    put16(out, 0);         // time
    put16(out, 0x5021);    // date: 2020-01-01
    put32(out, e.crc);
    put32(out, static_cast<uint32_t>(e.raw.size()));
    put32(out, static_cast<uint32_t>(e.stored_payload.size()));
    put16(out, static_cast<uint16_t>(e.name.size()));
    put16(out, 0);  // extra len
    out.insert(out.end(), e.name.begin(), e.name.end());
    out.insert(out.end(), e.raw.begin(), e.raw.end());
  }
  uint32_t cd_start = static_cast<uint32_t>(out.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    put32(out, 0x02014b50);
    put16(out, 20);  // version made by
    put16(out, 20);  // version needed
    put16(out, 0);
    put16(out, e.method);
    put16(out, 0);
    put16(out, 0x5021);
    put32(out, e.crc);
    put32(out, static_cast<uint32_t>(e.raw.size()));
    put32(out, static_cast<uint32_t>(e.stored_payload.size()));
    put16(out, static_cast<uint16_t>(e.name.size()));
    put16(out, 0);
    put16(out, 0);
    put16(out, 0);
    put16(out, 0);
    put32(out, 0);
    put32(out, offsets[i]);
    out.insert(out.end(), e.name.begin(), e.name.end());
  }
  uint32_t cd_size = static_cast<uint32_t>(out.size()) - cd_start;
  put32(out, 0x06054b50);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<uint16_t>(entries_.size()));
  put16(out, static_cast<uint16_t>(entries_.size()));
  put32(out, cd_size);
  put32(out, cd_start);
  put16(out, 0);  // comment length
  return out;
}

std::vector<uint8_t> build_dex(
    const std::vector<std::pair<std::string, std::string>>& methods,
    size_t filler_strings, const std::string& version) {
  std::set<std::string> string_set{"V"};
  for (const auto& [cls, name] : methods) {
    string_set.insert(cls);
    string_set.insert(name);
  }
  for (size_t i = 0; i < filler_strings; ++i) {
    char buf[48];
    snprintf(buf, sizeof(buf), "Lfiller/pkg/Class%08zu;->padpadpadpad", i);
    string_set.insert(buf);
  }
  std::vector<std::string> strings(string_set.begin(), string_set.end());
  std::map<std::string, uint32_t> s_idx;
  for (uint32_t i = 0; i < strings.size(); ++i) s_idx[strings[i]] = i;

  std::set<std::string> type_set{"V"};
  for (const auto& [cls, name] : methods) type_set.insert(cls);
  std::vector<std::string> types(type_set.begin(), type_set.end());
  std::map<std::string, uint16_t> t_idx;
  for (uint16_t i = 0; i < types.size(); ++i) t_idx[types[i]] = i;

  std::vector<std::pair<uint16_t, uint32_t>> method_ids;
  for (const auto& [cls, name] : methods)
    method_ids.emplace_back(t_idx[cls], s_idx[name]);
  std::sort(method_ids.begin(), method_ids.end());

  const uint32_t header_size = 0x70;
  uint32_t string_ids_off = header_size;
  uint32_t type_ids_off = string_ids_off + 4 * static_cast<uint32_t>(strings.size());
  uint32_t proto_ids_off = type_ids_off + 4 * static_cast<uint32_t>(types.size());
  uint32_t method_ids_off = proto_ids_off + 12;
  uint32_t data_off = method_ids_off + 8 * static_cast<uint32_t>(method_ids.size());

  std::vector<uint8_t> string_data;
  std::vector<uint32_t> string_offs;
  for (const std::string& s : strings) {
    string_offs.push_back(data_off + static_cast<uint32_t>(string_data.size()));
    uleb128(string_data, static_cast<uint32_t>(s.size()));  // ascii only here
    string_data.insert(string_data.end(), s.begin(), s.end());
    string_data.push_back(0);
  }
  while (string_data.size() % 4) string_data.push_back(0);
  uint32_t map_off = data_off + static_cast<uint32_t>(string_data.size());

  std::vector<uint8_t> map_data;
  struct MapItem {
    uint16_t type;
    uint32_t count;
    uint32_t off;
  };
  std::vector<MapItem> items = {
      {0x0000, 1, 0},
      {0x0001, static_cast<uint32_t>(strings.size()), string_ids_off},
      {0x0002, static_cast<uint32_t>(types.size()), type_ids_off},
      {0x0003, 1, proto_ids_off},
      {0x0005, static_cast<uint32_t>(method_ids.size()), method_ids_off},
      {0x2002, static_cast<uint32_t>(strings.size()), data_off},
      {0x1000, 1, map_off},
  };
  put32(map_data, static_cast<uint32_t>(items.size()));
  for (const MapItem& it : items) {
    put16(map_data, it.type);
    put16(map_data, 0);
    put32(map_data, it.count);
    put32(map_data, it.off);
  }

  uint32_t file_size = map_off + static_cast<uint32_t>(map_data.size());

  std::vector<uint8_t> out;
  out.reserve(file_size);
  // header, checksum/signature patched afterwards
  const char* magic_prefix = "dex\n";
  out.insert(out.end(), magic_prefix, magic_prefix + 4);
  out.insert(out.end(), version.begin(), version.end());
  out.push_back(0);
  put32(out, 0);                       // checksum placeholder
  out.insert(out.end(), 20, 0);        // signature placeholder
  put32(out, file_size);
  put32(out, header_size);
  put32(out, 0x12345678);
  put32(out, 0);  // link_size
  put32(out, 0);  // link_off
  put32(out, map_off);
  put32(out, static_cast<uint32_t>(strings.size()));
  put32(out, string_ids_off);
  put32(out, static_cast<uint32_t>(types.size()));
  put32(out, type_ids_off);
  put32(out, 1);
  put32(out, proto_ids_off);
  put32(out, 0);
  put32(out, 0);
  put32(out, static_cast<uint32_t>(method_ids.size()));
  put32(out, method_ids_off);
  put32(out, 0);
  put32(out, 0);
  put32(out, file_size - data_off);
  put32(out, data_off);

  for (uint32_t off : string_offs) put32(out, off);
  for (const std::string& t : types) put32(out, s_idx[t]);
  put32(out, s_idx["V"]);
  put32(out, t_idx["V"]);
  put32(out, 0);
  for (const auto& [class_idx, name_idx] : method_ids) {
    put16(out, class_idx);
    put16(out, 0);
    put32(out, name_idx);
  }
  out.insert(out.end(), string_data.begin(), string_data.end());
  out.insert(out.end(), map_data.begin(), map_data.end());

  uint32_t checksum = static_cast<uint32_t>(
      adler32(adler32(0L, Z_NULL, 0), out.data() + 12,
              static_cast<uInt>(out.size() - 12)));
  out[8] = checksum & 0xff;
  out[9] = (checksum >> 8) & 0xff;
  out[10] = (checksum >> 16) & 0xff;
  out[11] = (checksum >> 24) & 0xff;
  return out;
}

}  // namespace testsupport
