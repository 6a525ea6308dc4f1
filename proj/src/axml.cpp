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

#include "droidrisk/axml.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

namespace {

constexpr const char* kAndroidNsUri = "http://schemas.android.com/apk/res/android";
// Resource id of the android:name attribute. Obfuscators may strip the
// attribute's name string but must keep this id, so it is accepted as an
// alias for the resolved name.
constexpr uint32_t kAndroidNameResId = 0x01010003;

enum ChunkType : uint16_t {
  RES_STRING_POOL_TYPE = 0x0001,
  RES_XML_TYPE = 0x0003,
  RES_XML_START_NAMESPACE_TYPE = 0x0100,
  RES_XML_END_NAMESPACE_TYPE = 0x0101,
  RES_XML_START_ELEMENT_TYPE = 0x0102,
  RES_XML_END_ELEMENT_TYPE = 0x0103,
  RES_XML_CDATA_TYPE = 0x0104,
  RES_XML_RESOURCE_MAP_TYPE = 0x0180,
};

constexpr uint32_t kNoEntry = 0xffffffffu;
constexpr uint8_t kTypeString = 0x03;

// Collects the feature-relevant manifest content from either parse path.
// Events arrive with the attribute of interest already resolved; everything
// not on the feature list is ignored.
class ManifestBuilder {
 public:
  void start_element(const std::string& name,
                     const std::optional<std::string>& android_name,
                     const std::optional<std::string>& package_attr) {
    if (stack_.empty() && name == "manifest" && package_attr)
      model_.package_name = *package_attr;
    if (name == "uses-permission" && android_name)
      model_.permissions.insert(*android_name);
    if ((name == "action" || name == "category") && android_name &&
        inside_intent_filter_ > 0)
      model_.intent_entries[*android_name]++;
    if (!stack_.empty() && stack_.back() == "application") {
      if (name == "activity" || name == "activity-alias")
        model_.component_counts.activities++;
      else if (name == "service")
        model_.component_counts.services++;
      else if (name == "receiver")
        model_.component_counts.receivers++;
      else if (name == "provider")
        model_.component_counts.providers++;
    }
    if (name == "intent-filter") inside_intent_filter_++;
    stack_.push_back(name);
  }

  void end_element(const std::string& name) {
    if (stack_.empty() || stack_.back() != name)
      fail(ErrorCode::UnterminatedElement,
           "end of <" + name + "> does not match open element");
    if (name == "intent-filter") inside_intent_filter_--;
    stack_.pop_back();
  }

  ManifestModel finish() {
    if (!stack_.empty())
      fail(ErrorCode::UnterminatedElement, "<" + stack_.back() + "> never closed");
    return std::move(model_);
  }

 private:
  ManifestModel model_;
  std::vector<std::string> stack_;
  int inside_intent_filter_ = 0;
};

std::string utf16le_to_utf8(std::span<const uint8_t> units, size_t count) {
  std::string out;
  out.reserve(count);
  auto unit_at = [&](size_t i) -> uint32_t {
    return static_cast<uint32_t>(units[2 * i]) |
           static_cast<uint32_t>(units[2 * i + 1]) << 8;
  };
  auto put = [&](uint32_t cp) {
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
  for (size_t i = 0; i < count; ++i) {
    uint32_t u = unit_at(i);
    if (u >= 0xd800 && u <= 0xdbff && i + 1 < count) {
      uint32_t lo = unit_at(i + 1);
      if (lo >= 0xdc00 && lo <= 0xdfff) {
        put(0x10000 + ((u - 0xd800) << 10) + (lo - 0xdc00));
        ++i;
        continue;
      }
    }
    if (u >= 0xd800 && u <= 0xdfff) u = 0xfffd;  // unpaired surrogate
    put(u);
  }
  return out;
}

// RES_STRING_POOL_TYPE contents, decoded eagerly. Both encodings occur in the
// wild: UTF-16LE (default) and UTF-8 (flag bit 8).
class StringPool {
 public:
  StringPool() = default;

  void parse(std::span<const uint8_t> chunk, size_t header_size) {
    ByteReader r(chunk, ErrorCode::StringPoolOutOfBounds);
    r.seek(8);
    uint32_t string_count = r.u32();
    r.u32();  // style count, styles are irrelevant here
    uint32_t flags = r.u32();
    uint32_t strings_start = r.u32();
    r.u32();  // styles start
    bool utf8 = (flags & (1u << 8)) != 0;
    if (strings_start > chunk.size())
      fail(ErrorCode::StringPoolOutOfBounds, "stringsStart past chunk end");
    if (string_count > (chunk.size() - header_size) / 4)
      fail(ErrorCode::StringPoolOutOfBounds, "string count larger than chunk");

    strings_.reserve(string_count);
    for (uint32_t i = 0; i < string_count; ++i) {
      uint32_t rel = r.u32_at(header_size + 4ull * i);
      size_t p = strings_start + static_cast<size_t>(rel);
      strings_.push_back(utf8 ? decode_utf8(chunk, p) : decode_utf16(chunk, p));
    }
  }

  const std::string& at(uint32_t idx) const {
    if (idx >= strings_.size())
      fail(ErrorCode::StringPoolOutOfBounds,
           "string index " + std::to_string(idx) + " of " +
               std::to_string(strings_.size()));
    return strings_[idx];
  }

  size_t size() const { return strings_.size(); }

 private:
  static std::string decode_utf16(std::span<const uint8_t> chunk, size_t p) {
    auto u16_at = [&](size_t off) -> uint32_t {
      if (off + 2 > chunk.size())
        fail(ErrorCode::StringPoolOutOfBounds, "utf16 length past chunk end");
      return static_cast<uint32_t>(chunk[off]) |
             static_cast<uint32_t>(chunk[off + 1]) << 8;
    };
    uint32_t len = u16_at(p);
    p += 2;
    if (len & 0x8000) {
      len = ((len & 0x7fff) << 16) | u16_at(p);
      p += 2;
    }
    if (p + 2ull * len > chunk.size())
      fail(ErrorCode::StringPoolOutOfBounds, "utf16 string past chunk end");
    return utf16le_to_utf8(chunk.subspan(p), len);
  }

  static std::string decode_utf8(std::span<const uint8_t> chunk, size_t p) {
    auto varlen = [&](size_t& off) -> uint32_t {
      if (off >= chunk.size())
        fail(ErrorCode::StringPoolOutOfBounds, "utf8 length past chunk end");
      uint32_t v = chunk[off++];
      if (v & 0x80) {
        if (off >= chunk.size())
          fail(ErrorCode::StringPoolOutOfBounds, "utf8 length past chunk end");
        v = ((v & 0x7f) << 8) | chunk[off++];
      }
      return v;
    };
    varlen(p);  // UTF-16 unit count, unused
    uint32_t byte_len = varlen(p);
    if (p + byte_len > chunk.size())
      fail(ErrorCode::StringPoolOutOfBounds, "utf8 string past chunk end");
    return std::string(reinterpret_cast<const char*>(chunk.data() + p), byte_len);
  }

  std::vector<std::string> strings_;
};

// --- binary AXML path ---------------------------------------------------

ManifestModel parse_axml(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, ErrorCode::NotAManifest);
  r.u32();  // file chunk header, magic already checked
  ManifestBuilder builder;
  StringPool pool;
  std::vector<uint32_t> resource_map;
  bool seen_pool = false;

  uint32_t declared = r.u32();
  size_t end = std::min<size_t>(bytes.size(), declared);
  size_t pos = 8;
  while (pos + 8 <= end) {
    uint16_t type = r.u16_at(pos);
    uint16_t header_size = r.u16_at(pos + 2);
    uint32_t size = r.u32_at(pos + 4);
    if (size < 8 || header_size < 8 || size < header_size || pos + size > end)
      fail(ErrorCode::NotAManifest, "malformed chunk at offset " + std::to_string(pos));
    auto chunk = r.bytes_at(pos, size);

    switch (type) {
      case RES_STRING_POOL_TYPE:
        if (!seen_pool) {
          if (header_size < 28)
            fail(ErrorCode::StringPoolOutOfBounds, "string pool header too small");
          pool.parse(chunk, header_size);
          seen_pool = true;
        }
        break;
      case RES_XML_RESOURCE_MAP_TYPE: {
        size_t n = (size - header_size) / 4;
        resource_map.resize(n);
        for (size_t i = 0; i < n; ++i)
          resource_map[i] = r.u32_at(pos + header_size + 4 * i);
        break;
      }
      case RES_XML_START_ELEMENT_TYPE: {
        if (size < header_size + 20u)
          fail(ErrorCode::NotAManifest, "start element chunk too small");
        ByteReader body(chunk, ErrorCode::NotAManifest);
        body.seek(header_size);
        body.u32();  // element namespace
        uint32_t name_idx = body.u32();
        uint16_t attr_start = body.u16();
        uint16_t attr_size = body.u16();
        uint16_t attr_count = body.u16();
        const std::string& name = pool.at(name_idx);

        std::optional<std::string> android_name;
        std::optional<std::string> package_attr;
        if (attr_size < 20)
          fail(ErrorCode::NotAManifest, "attribute record smaller than 20 bytes");
        for (uint16_t a = 0; a < attr_count; ++a) {
          size_t ap = static_cast<size_t>(header_size) + attr_start +
                      static_cast<size_t>(a) * attr_size;
          if (ap + 20 > size)
            fail(ErrorCode::NotAManifest, "attribute table past chunk end");
          ByteReader attr(chunk, ErrorCode::NotAManifest);
          attr.seek(ap);
          uint32_t attr_ns = attr.u32();
          uint32_t attr_name = attr.u32();
          uint32_t raw_value = attr.u32();
          attr.u16();  // typed value size
          attr.u8();   // res0
          uint8_t data_type = attr.u8();
          uint32_t data = attr.u32();

          std::optional<std::string> value;
          if (raw_value != kNoEntry)
            value = pool.at(raw_value);
          else if (data_type == kTypeString)
            value = pool.at(data);
          if (!value) continue;

          bool is_android_name =
              (attr_name < resource_map.size() &&
               resource_map[attr_name] == kAndroidNameResId) ||
              (attr_ns != kNoEntry && pool.at(attr_name) == "name" &&
               pool.at(attr_ns) == kAndroidNsUri);
          if (is_android_name) android_name = value;
          if (attr_ns == kNoEntry && attr_name < pool.size() &&
              pool.at(attr_name) == "package")
            package_attr = value;
        }
        builder.start_element(name, android_name, package_attr);
        break;
      }
      case RES_XML_END_ELEMENT_TYPE: {
        if (size < header_size + 8u)
          fail(ErrorCode::NotAManifest, "end element chunk too small");
        ByteReader body(chunk, ErrorCode::NotAManifest);
        body.seek(header_size);
        body.u32();  // namespace
        builder.end_element(pool.at(body.u32()));
        break;
      }
      case RES_XML_START_NAMESPACE_TYPE:
      case RES_XML_END_NAMESPACE_TYPE:
      case RES_XML_CDATA_TYPE:
      default:
        break;  // skipped; unknown chunks are ignored for forward compat
    }
    pos += size;
  }
  return builder.finish();
}

// --- text XML path --------------------------------------------------------

// Minimal XML reader for plain-text manifests: elements, attributes,
// comments, processing instructions, DOCTYPE, character/entity references.
// Namespace prefixes resolve through in-scope xmlns declarations; the
// "android" prefix falls back to the standard URI when undeclared.
class TextXmlParser {
 public:
  TextXmlParser(std::span<const uint8_t> bytes, ManifestBuilder& builder)
      : text_(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
        builder_(builder) {}

  void run() {
    skip_bom();
    bool saw_root = false;
    while (true) {
      skip_until('<');
      if (at_end()) break;
      if (saw_root && depth_ == 0 && peek_is_element_start())
        fail(ErrorCode::NotAManifest, "content after document element");
      if (parse_markup()) saw_root = true;
    }
    if (!saw_root) fail(ErrorCode::NotAManifest, "no document element");
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  char peek() const { return text_[pos_]; }

  char take() {
    if (at_end()) fail(ErrorCode::NotAManifest, "unexpected end of document");
    return text_[pos_++];
  }

  void skip_bom() {
    if (text_.size() >= 3 && text_.compare(0, 3, "\xef\xbb\xbf") == 0) pos_ = 3;
  }

  void skip_until(char c) {
    while (!at_end() && peek() != c) ++pos_;
    if (!at_end()) ++pos_;  // consume c
  }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                         peek() == '\n'))
      ++pos_;
  }

  bool peek_is_element_start() const {
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c != '?' && c != '!' && c != '/';
  }

  // Called just past '<'. Returns true when a start element was consumed.
  bool parse_markup() {
    if (at_end()) fail(ErrorCode::NotAManifest, "dangling '<'");
    char c = peek();
    if (c == '?') {
      skip_past("?>");
      return false;
    }
    if (c == '!') {
      if (text_.compare(pos_, 3, "!--") == 0) {
        pos_ += 3;
        skip_past("-->");
      } else {
        skip_until('>');
      }
      return false;
    }
    if (c == '/') {
      ++pos_;
      std::string name = read_name();
      skip_ws();
      if (take() != '>') fail(ErrorCode::NotAManifest, "malformed end tag");
      end_element(name);
      return false;
    }
    parse_start_tag();
    return true;
  }

  void skip_past(const char* needle) {
    size_t found = text_.find(needle, pos_);
    if (found == std::string_view::npos)
      fail(ErrorCode::NotAManifest, std::string("unterminated '") + needle + "'");
    pos_ = found + std::string_view(needle).size();
  }

  std::string read_name() {
    size_t start = pos_;
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '>' ||
          c == '/' || c == '=')
        break;
      ++pos_;
    }
    if (pos_ == start) fail(ErrorCode::NotAManifest, "empty name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_attr_value() {
    skip_ws();
    if (at_end() || take() != '=')
      fail(ErrorCode::NotAManifest, "attribute without value");
    skip_ws();
    char quote = take();
    if (quote != '"' && quote != '\'')
      fail(ErrorCode::NotAManifest, "unquoted attribute value");
    std::string out;
    while (true) {
      char c = take();
      if (c == quote) break;
      if (c == '&') {
        out += read_entity();
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  std::string read_entity() {
    size_t semi = text_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 8)
      fail(ErrorCode::NotAManifest, "unterminated entity reference");
    std::string ent(text_.substr(pos_, semi - pos_));
    pos_ = semi + 1;
    if (ent == "amp") return "&";
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "quot") return "\"";
    if (ent == "apos") return "'";
    if (!ent.empty() && ent[0] == '#') {
      long cp = strtol(ent.c_str() + (ent.size() > 1 && ent[1] == 'x' ? 2 : 1),
                       nullptr, ent.size() > 1 && ent[1] == 'x' ? 16 : 10);
      if (cp > 0 && cp < 128) return std::string(1, static_cast<char>(cp));
      return "\xef\xbf\xbd";
    }
    fail(ErrorCode::NotAManifest, "unknown entity &" + ent + ";");
  }

  void parse_start_tag() {
    std::string name = read_name();
    std::vector<std::pair<std::string, std::string>> attrs;
    bool self_closing = false;
    while (true) {
      skip_ws();
      if (at_end()) fail(ErrorCode::NotAManifest, "unterminated start tag");
      char c = peek();
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/') {
        ++pos_;
        if (take() != '>') fail(ErrorCode::NotAManifest, "malformed empty-element tag");
        self_closing = true;
        break;
      }
      std::string attr_name = read_name();
      attrs.emplace_back(attr_name, read_attr_value());
    }
    start_element(name, attrs);
    if (self_closing) end_element(name);
  }

  void start_element(const std::string& qname,
                     const std::vector<std::pair<std::string, std::string>>& attrs) {
    std::unordered_map<std::string, std::string> scope =
        ns_stack_.empty() ? std::unordered_map<std::string, std::string>{}
                          : ns_stack_.back();
    for (const auto& [k, v] : attrs) {
      if (k.compare(0, 6, "xmlns:") == 0) scope[k.substr(6)] = v;
    }
    ns_stack_.push_back(scope);

    std::optional<std::string> android_name;
    std::optional<std::string> package_attr;
    for (const auto& [k, v] : attrs) {
      size_t colon = k.find(':');
      if (colon == std::string::npos) {
        if (k == "package") package_attr = v;
        continue;
      }
      std::string prefix = k.substr(0, colon);
      std::string local = k.substr(colon + 1);
      if (prefix == "xmlns") continue;
      auto it = scope.find(prefix);
      std::string uri = it != scope.end()
                            ? it->second
                            : (prefix == "android" ? kAndroidNsUri : "");
      if (local == "name" && uri == kAndroidNsUri) android_name = v;
    }

    std::string local_name = qname;
    if (size_t colon = qname.find(':'); colon != std::string::npos)
      local_name = qname.substr(colon + 1);
    open_.push_back(qname);
    ++depth_;
    builder_.start_element(local_name, android_name, package_attr);
  }

  void end_element(const std::string& qname) {
    if (open_.empty() || open_.back() != qname)
      fail(ErrorCode::UnterminatedElement, "mismatched </" + qname + ">");
    open_.pop_back();
    ns_stack_.pop_back();
    --depth_;
    std::string local_name = qname;
    if (size_t colon = qname.find(':'); colon != std::string::npos)
      local_name = qname.substr(colon + 1);
    builder_.end_element(local_name);
  }

  std::string_view text_;
  size_t pos_ = 0;
  int depth_ = 0;
  ManifestBuilder& builder_;
  std::vector<std::string> open_;
  std::vector<std::unordered_map<std::string, std::string>> ns_stack_;
};

}  // namespace

ManifestModel parse_manifest(std::span<const uint8_t> bytes) {
  if (bytes.empty()) fail(ErrorCode::NotAManifest, "empty buffer");
  if (bytes.size() >= 4) {
    uint32_t magic = static_cast<uint32_t>(bytes[0]) |
                     static_cast<uint32_t>(bytes[1]) << 8 |
                     static_cast<uint32_t>(bytes[2]) << 16 |
                     static_cast<uint32_t>(bytes[3]) << 24;
    if (magic == 0x00080003u) return parse_axml(bytes);
  }
  ManifestBuilder builder;
  TextXmlParser parser(bytes, builder);
  parser.run();
  return builder.finish();
}

const std::map<std::string, uint32_t>& intent_counts(const ManifestModel& model) {
  return model.intent_entries;
}

}  // namespace droidrisk
