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

#include "droidrisk/model_store.hpp"

#include <zlib.h>

#include <cinttypes>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

namespace {

void check_bundle(const ModelBundle& b, const std::string& where) {
  if (b.forest.vocabulary_version != b.vocabulary.version)
    fail(ErrorCode::CorruptModel, where + ": forest/vocabulary version mismatch");
  if (!(b.risk_thresholds.low_upper > 0.0 &&
        b.risk_thresholds.low_upper <= b.risk_thresholds.high_lower &&
        b.risk_thresholds.high_lower < 1.0))
    fail(ErrorCode::CorruptModel, where + ": risk thresholds out of order");
  if (b.vocabulary.size() != b.forest.n_features)
    fail(ErrorCode::CorruptModel, where + ": vocabulary size != forest width");
  if (b.forest.trees.size() != static_cast<size_t>(b.forest.params.n_trees))
    fail(ErrorCode::CorruptModel, where + ": tree count != declared n_trees");
  if (b.forest.importances.size() != b.forest.n_features)
    fail(ErrorCode::CorruptModel, where + ": importances length != forest width");
  for (double v : b.forest.importances) {
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(ErrorCode::CorruptModel, where + ": negative or non-finite importance");
  }
}

// Preorder without recursion; corrupt inputs may describe degenerate chains.
void write_tree(std::ostream& out, const Tree& tree) {
  std::vector<int32_t> stack{0};
  while (!stack.empty()) {
    int32_t idx = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.nodes[static_cast<size_t>(idx)];
    if (n.is_leaf()) {
      out << "L " << format_real(n.positive_fraction) << " " << n.n_samples << "\n";
    } else {
      out << "S " << n.feature_index << " " << format_real(n.threshold) << "\n";
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
}

class LineParser {
 public:
  LineParser(const std::string& text, const std::string& where)
      : in_(text), where_(where) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line))
      fail(ErrorCode::CorruptModel, where_ + ": missing " + std::string(what));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no_;
    return line;
  }

  bool at_end() {
    return in_.peek() == std::char_traits<char>::eof();
  }

  [[noreturn]] void bad(const std::string& what) {
    fail(ErrorCode::CorruptModel,
         where_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::istream& stream() { return in_; }

 private:
  std::istringstream in_;
  std::string where_;
  size_t line_no_ = 0;
};

double parse_real(LineParser& p, const std::string& s) {
  char* end = nullptr;
  double v = strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    p.bad("bad real '" + s + "'");
  return v;
}

Tree parse_tree(LineParser& p, size_t node_count, size_t n_features) {
  Tree tree;
  tree.nodes.reserve(node_count);
  std::vector<int32_t> open;  // split nodes with an unfilled child slot
  for (size_t i = 0; i < node_count; ++i) {
    std::string line = p.next("tree node line");
    if (i > 0 && open.empty()) p.bad("node after tree completed");
    TreeNode node;
    char kind = 0;
    if (line.size() < 2 || (line[0] != 'S' && line[0] != 'L') || line[1] != ' ')
      p.bad("expected 'S ...' or 'L ...' node line");
    kind = line[0];
    std::istringstream fields(line.substr(2));
    if (kind == 'S') {
      long long feature = -1;
      std::string threshold;
      if (!(fields >> feature >> threshold) || !fields.eof())
        p.bad("malformed split line");
      if (feature < 0 || static_cast<size_t>(feature) >= n_features)
        p.bad("split feature out of range");
      node.feature_index = static_cast<int32_t>(feature);
      node.threshold = parse_real(p, threshold);
    } else {
      std::string fraction;
      long long samples = -1;
      if (!(fields >> fraction >> samples) || !fields.eof() || samples < 0)
        p.bad("malformed leaf line");
      node.positive_fraction = parse_real(p, fraction);
      if (node.positive_fraction < 0.0 || node.positive_fraction > 1.0)
        p.bad("leaf fraction outside [0,1]");
      node.n_samples = static_cast<uint32_t>(samples);
    }
    int32_t idx = static_cast<int32_t>(tree.nodes.size());
    tree.nodes.push_back(node);
    if (idx > 0) {
      TreeNode& parent = tree.nodes[static_cast<size_t>(open.back())];
      if (parent.left < 0) {
        parent.left = idx;
      } else {
        parent.right = idx;
        open.pop_back();
      }
    }
    if (kind == 'S') open.push_back(idx);
  }
  if (!open.empty()) p.bad("tree block ended with unfilled children");
  if (tree.nodes.empty()) p.bad("empty tree block");
  return tree;
}

}  // namespace

std::string current_utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string serialize_model(const ModelBundle& bundle) {
  check_bundle(bundle, "serialize");
  std::ostringstream out;
  const ForestParams& p = bundle.forest.params;
  out << "droidrisk-model " << bundle.format_version << "\n";
  out << "created_at " << bundle.created_at << "\n";
  out << "training_digest " << bundle.training_digest << "\n";
  out << "n_features " << bundle.forest.n_features << "\n";
  out << "trees " << p.n_trees << "\n";
  out << "max_depth " << p.max_depth << "\n";
  out << "min_samples_leaf " << p.min_samples_leaf << "\n";
  if (p.features_per_split > 0)
    out << "features_per_split " << p.features_per_split << "\n";
  else
    out << "features_per_split sqrt\n";
  out << "bootstrap " << (p.bootstrap ? 1 : 0) << "\n";
  out << "seed " << p.seed << "\n";
  out << "threshold_low " << format_real(bundle.risk_thresholds.low_upper) << "\n";
  out << "threshold_high " << format_real(bundle.risk_thresholds.high_lower) << "\n";
  out << "importances";
  for (double v : bundle.forest.importances) out << " " << format_real(v);
  out << "\n";
  out << "vocab version " << bundle.vocabulary.version << "\n";
  out << "vocab size " << bundle.vocabulary.size() << "\n";
  write_vocabulary_lines(bundle.vocabulary, out);
  for (int t = 0; t < p.n_trees; ++t) {
    const Tree& tree = bundle.forest.trees[static_cast<size_t>(t)];
    out << "tree " << t << " nodes " << tree.nodes.size() << "\n";
    write_tree(out, tree);
  }
  out << "end\n";
  return out.str();
}

ModelBundle parse_model(const std::string& text, const std::string& where) {
  LineParser p(text, where);

  std::string line = p.next("header");
  unsigned format_version = 0;
  if (sscanf(line.c_str(), "droidrisk-model %u", &format_version) != 1)
    fail(ErrorCode::CorruptModel, where + ": not a model file");
  if (format_version != 1)
    fail(ErrorCode::FormatVersionUnsupported,
         where + ": format version " + std::to_string(format_version));

  ModelBundle bundle;
  bundle.format_version = format_version;

  auto expect_field = [&](const char* key) -> std::string {
    std::string l = p.next(key);
    std::string prefix = std::string(key) + " ";
    if (l.compare(0, prefix.size(), prefix) != 0) p.bad("expected '" + prefix + "...'");
    return l.substr(prefix.size());
  };

  bundle.created_at = expect_field("created_at");
  bundle.training_digest = expect_field("training_digest");

  size_t n_features = 0;
  if (sscanf(expect_field("n_features").c_str(), "%zu", &n_features) != 1)
    p.bad("bad n_features");
  ForestParams params;
  if (sscanf(expect_field("trees").c_str(), "%d", &params.n_trees) != 1 ||
      params.n_trees < 1)
    p.bad("bad tree count");
  if (sscanf(expect_field("max_depth").c_str(), "%d", &params.max_depth) != 1 ||
      params.max_depth < 1)
    p.bad("bad max_depth");
  if (sscanf(expect_field("min_samples_leaf").c_str(), "%d",
             &params.min_samples_leaf) != 1 ||
      params.min_samples_leaf < 1)
    p.bad("bad min_samples_leaf");
  std::string fps = expect_field("features_per_split");
  if (fps == "sqrt") {
    params.features_per_split = 0;
  } else if (sscanf(fps.c_str(), "%d", &params.features_per_split) != 1 ||
             params.features_per_split < 1) {
    p.bad("bad features_per_split");
  }
  int bootstrap = -1;
  if (sscanf(expect_field("bootstrap").c_str(), "%d", &bootstrap) != 1 ||
      (bootstrap != 0 && bootstrap != 1))
    p.bad("bad bootstrap flag");
  params.bootstrap = bootstrap == 1;
  if (sscanf(expect_field("seed").c_str(), "%" SCNu64, &params.seed) != 1)
    p.bad("bad seed");

  bundle.risk_thresholds.low_upper = parse_real(p, expect_field("threshold_low"));
  bundle.risk_thresholds.high_lower = parse_real(p, expect_field("threshold_high"));

  {
    std::string imp = expect_field("importances");
    std::istringstream fields(imp);
    std::string tok;
    while (fields >> tok)
      bundle.forest.importances.push_back(parse_real(p, tok));
    if (bundle.forest.importances.size() != n_features)
      p.bad("importances length != n_features");
  }

  uint32_t vocab_version = 0;
  if (sscanf(expect_field("vocab version").c_str(), "%u", &vocab_version) != 1)
    p.bad("bad vocab version");
  size_t vocab_size = 0;
  if (sscanf(expect_field("vocab size").c_str(), "%zu", &vocab_size) != 1)
    p.bad("bad vocab size");
  bundle.vocabulary =
      read_vocabulary_lines(p.stream(), vocab_size, vocab_version, where);
  if (bundle.vocabulary.size() != vocab_size)
    p.bad("vocabulary block size mismatch");

  bundle.forest.params = params;
  bundle.forest.n_features = n_features;
  bundle.forest.vocabulary_version = vocab_version;
  for (int t = 0; t < params.n_trees; ++t) {
    std::string header = p.next("tree header");
    int index = -1;
    size_t node_count = 0;
    if (sscanf(header.c_str(), "tree %d nodes %zu", &index, &node_count) != 2 ||
        index != t || node_count == 0)
      p.bad("bad tree header '" + header + "'");
    if (node_count > text.size())
      p.bad("tree node count larger than file");
    bundle.forest.trees.push_back(parse_tree(p, node_count, n_features));
  }
  if (p.next("end marker") != "end") p.bad("missing end marker");

  check_bundle(bundle, where);
  return bundle;
}

uint64_t save_model(const ModelBundle& bundle, const std::string& path) {
  std::string text = serialize_model(bundle);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot create " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "short write on " + path);
  return text.size();
}

ModelBundle load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str(), path);
}

uint64_t deflate_compressed_size(const std::string& text) {
  uLongf bound = compressBound(static_cast<uLong>(text.size()));
  std::vector<uint8_t> buf(bound);
  uLongf out_size = bound;
  int rc = compress2(buf.data(), &out_size,
                     reinterpret_cast<const Bytef*>(text.data()),
                     static_cast<uLong>(text.size()), Z_BEST_COMPRESSION);
  if (rc != Z_OK) fail(ErrorCode::IoError, "deflate failed");
  return out_size;
}

}  // namespace droidrisk
