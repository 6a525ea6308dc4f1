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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "droidrisk/bytes.hpp"
#include "support/paths.hpp"

namespace fs = std::filesystem;
using testsupport::test_data;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(DROIDRISK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) output += buf;
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

struct TempTree {
  fs::path root;
  explicit TempTree(const std::string& name) {
    root = fs::temp_directory_path() / name;
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempTree() { fs::remove_all(root); }
  std::string operator/(const std::string& p) const { return (root / p).string(); }
};

void build_corpus(const TempTree& tmp) {
  fs::create_directories(tmp.root / "corpus" / "malware");
  fs::create_directories(tmp.root / "corpus" / "benign");
  auto put = [&](const char* fixture, const char* sub, const char* as) {
    fs::copy_file(test_data(fixture), tmp.root / "corpus" / sub / as,
                  fs::copy_options::overwrite_existing);
  };
  put("app_text_basic.apk", "malware", "m1.apk");
  put("app_text_rich.apk", "malware", "m2.apk");
  put("app_multidex2.apk", "malware", "m3.apk");
  put("app_rename_a.apk", "benign", "b1.apk");
  put("app_nodex.apk", "benign", "b2.apk");
  put("app_dup_perm.apk", "benign", "b3.apk");
}

}  // namespace

TEST_CASE("vocab, train, eval, scan work end to end through the binary") {
  TempTree tmp("droidrisk_cli_e2e");
  build_corpus(tmp);

  std::string vocab_cmd = "vocab " + (tmp / "corpus") + " --watchlist " +
                          testsupport::shipped_watchlist() + " --out " +
                          (tmp / "features");
  RunResult vocab = run(vocab_cmd);
  CHECK_MESSAGE(vocab.exit_code == 0, vocab.output);
  CHECK(fs::exists(tmp / "features.vocab"));
  CHECK(fs::exists(tmp / "features.csv"));

  // deterministic: a second run reproduces both files byte for byte
  std::string vocab_before = [&] {
    std::ifstream in(tmp / "features.vocab", std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }();
  RunResult again = run(vocab_cmd);
  CHECK(again.exit_code == 0);
  std::string vocab_after = [&] {
    std::ifstream in(tmp / "features.vocab", std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }();
  CHECK(vocab_before == vocab_after);

  // train picks up the sibling vocabulary automatically
  RunResult train = run("train " + (tmp / "features.csv") + " --out " +
                        (tmp / "model.txt") +
                        " --trees 16 --seed 9 --timestamp 2026-08-09T00:00:00Z");
  CHECK_MESSAGE(train.exit_code == 0, train.output);
  CHECK(train.output.find("train-set tpr") != std::string::npos);
  CHECK(fs::exists(tmp / "model.txt"));

  RunResult eval = run("eval " + (tmp / "features.csv") + " --model " +
                       (tmp / "model.txt"));
  CHECK_MESSAGE(eval.exit_code == 0, eval.output);
  CHECK(eval.output.find("tpr ") != std::string::npos);
  CHECK(fs::exists(tmp / "features.csv.roc"));

  RunResult scan = run("scan --model " + (tmp / "model.txt") + " " +
                       (tmp / "corpus/malware"));
  CHECK_MESSAGE(scan.exit_code >= 0, scan.output);
  CHECK(scan.exit_code <= 2);
  CHECK(scan.output.find("scanned 3 ok") != std::string::npos);

  RunResult jsonl = run("scan --format jsonl --model " + (tmp / "model.txt") +
                        " " + test_data("app_text_basic.apk"));
  CHECK(jsonl.output.find("\"package_name\":\"com.example.basic\"") !=
        std::string::npos);
}

TEST_CASE("operational failures exit with code 3") {
  TempTree tmp("droidrisk_cli_err");

  RunResult no_model = run("scan --model " + (tmp / "missing.txt") + " " +
                           test_data("app_text_basic.apk"));
  CHECK(no_model.exit_code == 3);
  CHECK(no_model.output.find("ModelLoadFailure") != std::string::npos);

  // single-class csv: clean error, no model file written
  {
    std::ofstream csv(tmp / "single.csv");
    csv << "label,f0,f1\n1,0,1\n1,1,0\n";
    std::ofstream vocab(tmp / "single.vocab");
    vocab << "droidrisk-vocab 1\nversion 1\nsize 2\n"
          << "API:La/B;->m1\nAPI:La/C;->m2\n";
  }
  RunResult train = run("train " + (tmp / "single.csv") + " --out " +
                        (tmp / "single_model.txt"));
  CHECK(train.exit_code == 3);
  CHECK(train.output.find("SingleClassTraining") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "single_model.txt"));
}

TEST_CASE("eval rejects a width mismatch before scoring") {
  TempTree tmp("droidrisk_cli_width");
  build_corpus(tmp);
  RunResult vocab = run("vocab " + (tmp / "corpus") + " --watchlist " +
                        testsupport::shipped_watchlist() + " --out " +
                        (tmp / "features"));
  REQUIRE(vocab.exit_code == 0);
  RunResult train = run("train " + (tmp / "features.csv") + " --out " +
                        (tmp / "model.txt") + " --trees 4 --seed 1");
  REQUIRE_MESSAGE(train.exit_code == 0, train.output);

  std::ofstream csv(tmp / "narrow.csv");
  csv << "label,f0,f1\n1,0,1\n0,1,0\n";
  csv.close();
  RunResult eval = run("eval " + (tmp / "narrow.csv") + " --model " +
                       (tmp / "model.txt"));
  CHECK(eval.exit_code == 3);
  CHECK(eval.output.find("WidthMismatch") != std::string::npos);
}

TEST_CASE("selection flag trains a reduced model") {
  TempTree tmp("droidrisk_cli_select");
  build_corpus(tmp);
  RunResult vocab = run("vocab " + (tmp / "corpus") + " --watchlist " +
                        testsupport::shipped_watchlist() + " --out " +
                        (tmp / "features"));
  REQUIRE(vocab.exit_code == 0);
  RunResult train = run("train " + (tmp / "features.csv") + " --out " +
                        (tmp / "reduced.txt") +
                        " --trees 8 --seed 2 --select-fraction 0.25");
  CHECK_MESSAGE(train.exit_code == 0, train.output);
  CHECK(train.output.find("selected ") != std::string::npos);

  // the reduced model still scans
  RunResult scan = run("scan --model " + (tmp / "reduced.txt") + " " +
                       test_data("app_text_basic.apk"));
  CHECK(scan.exit_code <= 2);
}
