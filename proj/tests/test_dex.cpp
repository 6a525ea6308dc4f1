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

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <set>

#include "droidrisk/apk.hpp"
#include "droidrisk/bytes.hpp"
#include "droidrisk/dex.hpp"
#include "support/builders.hpp"
#include "support/paths.hpp"

using namespace droidrisk;
using testsupport::test_data;

namespace {

#define CHECK_FAILS_WITH(code_, expr)                  \
  do {                                                 \
    try {                                              \
      (void)(expr);                                    \
      FAIL_CHECK("expected " #code_ ", got no error"); \
    } catch (const Error& e) {                         \
      CHECK(e.code() == ErrorCode::code_);             \
    }                                                  \
  } while (0)

std::set<std::string> method_strings(const DexIndex& index) {
  std::set<std::string> out;
  for (const MethodRef& m : referenced_methods(index))
    out.insert(m.class_descriptor + "->" + m.method_name);
  return out;
}

ApiWatchlist test_watchlist() {
  return parse_watchlist(
      "Ljava/lang/reflect/Method;->invoke\n"
      "Ldalvik/system/DexClassLoader;-><init>\n"
      "Landroid/telephony/TelephonyManager;->getDeviceId\n"
      "Landroid/telephony/SmsManager;->sendTextMessage\n",
      "test");
}

}  // namespace

TEST_CASE("hand-assembled minimal dex exposes its single method") {
  auto dex = testsupport::build_dex({{"Ljava/lang/Object;", "<init>"}});
  DexIndex index = parse_dex(dex);
  CHECK(index.version == "035");
  CHECK(index.checksum_ok);
  REQUIRE(index.method_refs.size() == 1);
  CHECK(index.method_refs[0].class_descriptor == "Ljava/lang/Object;");
  CHECK(index.method_refs[0].method_name == "<init>");
  std::set<MethodRef> expected{{"Ljava/lang/Object;", "<init>"}};
  CHECK(referenced_methods(index) == expected);
}

TEST_CASE("fixture dex methods match the assembler record") {
  std::ifstream in(test_data("dex_methods.json"));
  REQUIRE(in.good());
  nlohmann::json golden = nlohmann::json::parse(in);
  for (auto& [fixture, per_entry] : golden.items()) {
    ApkArchive apk = open_apk(test_data(fixture));
    for (auto& [entry, methods] : per_entry.items()) {
      DexIndex index = parse_dex(apk.read_entry(entry));
      std::set<std::string> expected;
      for (auto& m : methods) expected.insert(m.get<std::string>());
      CHECK_MESSAGE(method_strings(index) == expected, fixture + "/" + entry);
    }
  }
}

TEST_CASE("zero-method dex yields the empty set") {
  auto dex = testsupport::build_dex({});
  CHECK(referenced_methods(parse_dex(dex)).empty());
}

TEST_CASE("two methods on one class share the descriptor") {
  auto dex = testsupport::build_dex(
      {{"Lcom/x/Y;", "alpha"}, {"Lcom/x/Y;", "beta"}});
  auto set = referenced_methods(parse_dex(dex));
  REQUIRE(set.size() == 2);
  for (const MethodRef& m : set) CHECK(m.class_descriptor == "Lcom/x/Y;");
}

TEST_CASE("unsupported and malformed headers") {
  auto dex = testsupport::build_dex({{"Ljava/lang/Object;", "<init>"}});

  SUBCASE("version 041") {
    auto bad = testsupport::build_dex({{"Ljava/lang/Object;", "<init>"}}, 0, "041");
    CHECK_FAILS_WITH(UnsupportedVersion, parse_dex(bad));
  }
  SUBCASE("below header size") {
    std::vector<uint8_t> small(dex.begin(), dex.begin() + 100);
    CHECK_FAILS_WITH(TruncatedDex, parse_dex(small));
  }
  SUBCASE("not dex at all") {
    std::vector<uint8_t> junk(200, 0x41);
    CHECK_FAILS_WITH(BadMagic, parse_dex(junk));
  }
  SUBCASE("reverse endian tag") {
    auto bad = dex;
    bad[40] = 0x12;
    bad[41] = 0x34;
    bad[42] = 0x56;
    bad[43] = 0x78;
    CHECK_FAILS_WITH(ReverseEndianUnsupported, parse_dex(bad));
  }
  SUBCASE("method table too large for the format") {
    auto bad = dex;
    bad[88] = 0x01;
    bad[89] = 0x00;
    bad[90] = 0x01;  // 65537
    bad[91] = 0x00;
    CHECK_FAILS_WITH(IndexOutOfTable, parse_dex(bad));
  }
  SUBCASE("string table past EOF") {
    auto bad = dex;
    bad[60] = 0xff;
    bad[61] = 0xff;
    bad[62] = 0x00;
    bad[63] = 0x00;
    CHECK_FAILS_WITH(TruncatedDex, parse_dex(bad));
  }
}

TEST_CASE("stale checksum is a warning, not a failure") {
  auto dex = testsupport::build_dex({{"Ljava/lang/Object;", "<init>"}});
  dex[8] ^= 0xff;
  DexIndex index = parse_dex(dex);
  CHECK_FALSE(index.checksum_ok);
  CHECK(index.method_refs.size() == 1);
}

TEST_CASE("api presence marks referenced watchlist entries") {
  ApiWatchlist wl = test_watchlist();
  auto dex = testsupport::build_dex({{"Ljava/lang/reflect/Method;", "invoke"},
                                     {"Lcom/app/Main;", "run"}});
  std::vector<DexIndex> dexes{parse_dex(dex)};
  std::vector<uint8_t> bits = api_presence(dexes, wl);
  CHECK(bits == std::vector<uint8_t>{1, 0, 0, 0});
}

TEST_CASE("empty dex list gives an all-zero vector") {
  std::vector<uint8_t> bits = api_presence({}, test_watchlist());
  CHECK(bits == std::vector<uint8_t>{0, 0, 0, 0});
}

TEST_CASE("multidex union finds an api that lives only in classes2.dex") {
  ApkArchive apk = open_apk(test_data("app_multidex2.apk"));
  std::vector<DexIndex> dexes;
  for (const std::string& name : apk.dex_entry_names())
    dexes.push_back(parse_dex(apk.read_entry(name)));
  std::vector<uint8_t> bits = api_presence(dexes, test_watchlist());
  CHECK(bits[1] == 1);  // DexClassLoader;-><init> sits in classes2.dex only

  // union semantics: the multi-dex result is the OR-fold of per-dex results
  std::vector<uint8_t> folded(test_watchlist().entries.size(), 0);
  for (const DexIndex& d : dexes) {
    std::vector<uint8_t> single = api_presence({d}, test_watchlist());
    for (size_t i = 0; i < folded.size(); ++i) folded[i] |= single[i];
  }
  CHECK(bits == folded);
}

TEST_CASE("renaming user classes does not change api presence") {
  ApkArchive a = open_apk(test_data("app_rename_a.apk"));
  ApkArchive b = open_apk(test_data("app_rename_b.apk"));
  std::vector<DexIndex> da{parse_dex(a.read_entry("classes.dex"))};
  std::vector<DexIndex> db{parse_dex(b.read_entry("classes.dex"))};
  CHECK(api_presence(da, test_watchlist()) == api_presence(db, test_watchlist()));
}

TEST_CASE("watchlist file syntax") {
  SUBCASE("comments and blank lines are skipped, order is file order") {
    ApiWatchlist wl = parse_watchlist(
        "# header comment\n"
        "\n"
        "La/B;->m1  # trailing comment\n"
        "La/C;->m2\n",
        "test");
    REQUIRE(wl.entries.size() == 2);
    CHECK(wl.entries[0].class_descriptor == "La/B;");
    CHECK(wl.entries[1].method_name == "m2");
  }
  SUBCASE("duplicates rejected") {
    CHECK_FAILS_WITH(InvalidWatchlist,
                     parse_watchlist("La/B;->m\nLa/B;->m\n", "test"));
  }
  SUBCASE("malformed lines rejected") {
    CHECK_FAILS_WITH(InvalidWatchlist, parse_watchlist("no arrow here\n", "test"));
    CHECK_FAILS_WITH(InvalidWatchlist, parse_watchlist("a/B->m\n", "test"));
  }
}

TEST_CASE("the shipped watchlist loads and has the documented size") {
  ApiWatchlist wl = load_watchlist(testsupport::shipped_watchlist());
  CHECK(wl.entries.size() == 179);
}

TEST_CASE("every truncation of a fixture dex yields a typed error") {
  auto bytes = read_file_bytes(test_data("basic.dex"));
  for (size_t cut = 0; cut < bytes.size(); cut += 2) {
    std::vector<uint8_t> trimmed(bytes.begin(), bytes.begin() + cut);
    try {
      (void)parse_dex(trimmed);
    } catch (const Error&) {
    }
  }
}
