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

#include "droidrisk/apk.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "droidrisk/bytes.hpp"

namespace droidrisk {

namespace {

constexpr uint32_t kEocdSignature = 0x06054b50;
constexpr uint32_t kCentralDirSignature = 0x02014b50;
constexpr uint32_t kLocalHeaderSignature = 0x04034b50;
constexpr size_t kEocdSize = 22;
constexpr size_t kCentralDirEntrySize = 46;
constexpr size_t kLocalHeaderSize = 30;
// EOCD record plus the maximum comment length, rounded up a little; the
// backward scan for the signature never looks further than this from EOF.
constexpr size_t kMaxEocdSearch = 66000;

constexpr uint16_t kFlagEncrypted = 1u << 0;

struct Eocd {
  size_t offset = 0;
  uint16_t entry_count = 0;
  uint32_t cd_size = 0;
  uint32_t cd_offset = 0;
};

// Scans backward from EOF for the EOCD signature; a candidate only counts if
// its comment length lands exactly on EOF.
Eocd find_eocd(const ByteReader& r) {
  const size_t size = r.size();
  if (size < kEocdSize) fail(ErrorCode::TruncatedArchive, "file smaller than EOCD record");
  const size_t window = std::min(size, kMaxEocdSearch);
  const size_t lowest = size - window;
  for (size_t off = size - kEocdSize + 1; off-- > lowest;) {
    if (r.u32_at(off) != kEocdSignature) continue;
    uint16_t comment_len = r.u16_at(off + 20);
    if (off + kEocdSize + comment_len != size) continue;
    Eocd eocd;
    eocd.offset = off;
    uint16_t disk_number = r.u16_at(off + 4);
    uint16_t cd_start_disk = r.u16_at(off + 6);
    uint16_t entries_this_disk = r.u16_at(off + 8);
    eocd.entry_count = r.u16_at(off + 10);
    eocd.cd_size = r.u32_at(off + 12);
    eocd.cd_offset = r.u32_at(off + 16);
    if (disk_number != 0 || cd_start_disk != 0 ||
        entries_this_disk != eocd.entry_count)
      fail(ErrorCode::NotAZip, "multi-disk archives not supported");
    if (eocd.entry_count == 0xffff || eocd.cd_size == 0xffffffffu ||
        eocd.cd_offset == 0xffffffffu)
      fail(ErrorCode::Zip64Unsupported, "EOCD carries ZIP64 markers");
    return eocd;
  }
  fail(ErrorCode::NotAZip, "no end-of-central-directory signature");
}

std::vector<EntryRecord> read_central_directory(const ByteReader& r, const Eocd& eocd) {
  if (static_cast<uint64_t>(eocd.cd_offset) + eocd.cd_size > eocd.offset)
    fail(ErrorCode::TruncatedArchive, "central directory extends past EOCD");
  ByteReader cd(r.bytes_at(eocd.cd_offset, eocd.cd_size), ErrorCode::TruncatedArchive);
  std::vector<EntryRecord> entries;
  entries.reserve(eocd.entry_count);
  for (uint16_t i = 0; i < eocd.entry_count; ++i) {
    if (cd.remaining() < kCentralDirEntrySize)
      fail(ErrorCode::TruncatedArchive, "central directory ends mid-entry");
    if (cd.u32() != kCentralDirSignature)
      fail(ErrorCode::TruncatedArchive, "bad central directory entry signature");
    cd.skip(4);  // version made by, version needed
    uint16_t flags = cd.u16();
    uint16_t method = cd.u16();
    cd.skip(4);  // dos time/date
    uint32_t crc = cd.u32();
    uint32_t csize = cd.u32();
    uint32_t usize = cd.u32();
    uint16_t name_len = cd.u16();
    uint16_t extra_len = cd.u16();
    uint16_t comment_len = cd.u16();
    cd.skip(8);  // disk start, internal/external attrs
    uint32_t local_off = cd.u32();
    auto name_bytes = cd.bytes(name_len);
    cd.skip(extra_len);
    cd.skip(comment_len);

    if (flags & kFlagEncrypted)
      fail(ErrorCode::UnsupportedCompression, "encrypted entry");
    if (method != 0 && method != 8)
      fail(ErrorCode::UnsupportedCompression,
           "compression method " + std::to_string(method));
    if (csize == 0xffffffffu || usize == 0xffffffffu || local_off == 0xffffffffu)
      fail(ErrorCode::Zip64Unsupported, "entry carries ZIP64 markers");
    if (method == 0 && csize != usize)
      fail(ErrorCode::TruncatedArchive, "stored entry with mismatched sizes");
    if (local_off >= r.size())
      fail(ErrorCode::TruncatedArchive, "local header offset past EOF");

    EntryRecord e;
    e.name.assign(reinterpret_cast<const char*>(name_bytes.data()), name_bytes.size());
    e.compressed_size = csize;
    e.uncompressed_size = usize;
    e.method = method == 0 ? CompressionMethod::Stored : CompressionMethod::Deflated;
    e.crc32 = crc;
    e.local_header_offset = local_off;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<uint8_t> inflate_raw(std::span<const uint8_t> in, uint64_t expected_size) {
  std::vector<uint8_t> out(expected_size);
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK)
    fail(ErrorCode::BadDeflateStream, "inflateInit failed");
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  uint64_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected_size)
    fail(ErrorCode::BadDeflateStream, "deflate stream did not decode to declared size");
  return out;
}

}  // namespace

ApkArchive::ApkArchive(std::vector<uint8_t> bytes, std::vector<EntryRecord> entries)
    : bytes_(std::move(bytes)), entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    auto [it, inserted] = index_.emplace(entries_[i].name, i);
    if (!inserted)
      fail(ErrorCode::DuplicateEntry, "duplicate entry name: " + entries_[i].name);
  }
}

bool ApkArchive::has_entry(const std::string& name) const {
  return index_.count(name) != 0;
}

const EntryRecord& ApkArchive::entry(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) fail(ErrorCode::EntryNotFound, name);
  return entries_[it->second];
}

std::vector<uint8_t> ApkArchive::read_entry(const std::string& name) const {
  const EntryRecord& e = entry(name);
  ByteReader r(bytes_, ErrorCode::TruncatedArchive);

  // The local header repeats name/extra with possibly different lengths than
  // the central directory; the payload starts after the local copies.
  r.seek(e.local_header_offset);
  if (r.remaining() < kLocalHeaderSize)
    fail(ErrorCode::TruncatedArchive, "local header past EOF");
  if (r.u32() != kLocalHeaderSignature)
    fail(ErrorCode::TruncatedArchive, "bad local header signature for " + name);
  r.skip(22);  // version, flags, method, time, crc, sizes
  uint16_t name_len = r.u16();
  uint16_t extra_len = r.u16();
  r.skip(name_len);
  r.skip(extra_len);

  auto payload = r.bytes(e.compressed_size);
  std::vector<uint8_t> out;
  if (e.method == CompressionMethod::Stored) {
    out.assign(payload.begin(), payload.end());
  } else {
    out = inflate_raw(payload, e.uncompressed_size);
  }

  uint32_t actual = static_cast<uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), out.data(), static_cast<uInt>(out.size())));
  if (actual != e.crc32)
    fail(ErrorCode::CrcMismatch, name + ": crc32 " + to_hex64(actual) +
                                     " != recorded " + to_hex64(e.crc32));
  return out;
}

std::vector<std::string> ApkArchive::dex_entry_names() const {
  // classes.dex sorts first, then classesN.dex for N >= 2 in numeric order.
  // "classes1.dex", leading zeros, and nested paths do not match.
  std::vector<std::pair<uint64_t, std::string>> found;
  for (const auto& e : entries_) {
    const std::string& n = e.name;
    if (n == "classes.dex") {
      found.emplace_back(1, n);
      continue;
    }
    if (n.size() < 12 || n.compare(0, 7, "classes") != 0 ||
        n.compare(n.size() - 4, 4, ".dex") != 0)
      continue;
    std::string digits = n.substr(7, n.size() - 11);
    if (digits.empty() || digits[0] == '0' || digits == "1") continue;
    bool numeric = std::all_of(digits.begin(), digits.end(),
                               [](char c) { return c >= '0' && c <= '9'; });
    if (!numeric || digits.size() > 9) continue;
    found.emplace_back(std::stoull(digits), n);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> names;
  names.reserve(found.size());
  for (auto& [num, name] : found) names.push_back(std::move(name));
  return names;
}

ApkArchive open_apk_bytes(std::vector<uint8_t> bytes) {
  if (bytes.size() < kEocdSize)
    fail(ErrorCode::TruncatedArchive, "file below minimum ZIP size");
  ByteReader r(bytes, ErrorCode::TruncatedArchive);
  Eocd eocd = find_eocd(r);
  std::vector<EntryRecord> entries = read_central_directory(r, eocd);
  return ApkArchive(std::move(bytes), std::move(entries));
}

ApkArchive open_apk(const std::string& path) {
  return open_apk_bytes(read_file_bytes(path));
}

}  // namespace droidrisk
