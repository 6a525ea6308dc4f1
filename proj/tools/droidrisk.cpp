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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "droidrisk/apk.hpp"
#include "droidrisk/bytes.hpp"
#include "droidrisk/dataset.hpp"
#include "droidrisk/error.hpp"
#include "droidrisk/eval.hpp"
#include "droidrisk/features.hpp"
#include "droidrisk/forest.hpp"
#include "droidrisk/model_store.hpp"
#include "droidrisk/scan.hpp"

namespace fs = std::filesystem;
using namespace droidrisk;

namespace {

std::vector<std::pair<std::string, int>> corpus_files(const std::string& dir) {
  std::vector<std::pair<std::string, int>> out;
  for (auto [sub, label] : {std::pair{"benign", 0}, std::pair{"malware", 1}}) {
    fs::path p = fs::path(dir) / sub;
    std::error_code ec;
    if (!fs::is_directory(p, ec)) continue;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(p, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".apk")
        files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    for (auto& f : files) out.emplace_back(std::move(f), label);
  }
  return out;
}

int cmd_vocab(const std::string& corpus_dir, const std::string& watchlist_path,
              size_t cap, const std::string& out_stem) {
  ApiWatchlist watchlist = load_watchlist(watchlist_path);
  auto files = corpus_files(corpus_dir);
  if (files.empty())
    fail(ErrorCode::EmptyCorpus,
         corpus_dir + ": no .apk files under benign/ or malware/");

  std::vector<std::pair<std::string, int>> usable;
  std::vector<ManifestModel> manifests;
  for (const auto& [path, label] : files) {
    try {
      ApkArchive apk = open_apk(path);
      std::vector<uint8_t> bytes = apk.read_entry("AndroidManifest.xml");
      manifests.push_back(parse_manifest(bytes));
      usable.emplace_back(path, label);
    } catch (const Error& e) {
      std::cerr << "warning: skipping " << path << ": " << e.what() << "\n";
    }
  }
  if (usable.empty())
    fail(ErrorCode::EmptyCorpus, corpus_dir + ": no readable APKs");

  FeatureVocabulary vocab = build_vocabulary(manifests, std::move(watchlist), cap);
  save_vocabulary(vocab, out_stem + ".vocab");

  Dataset data;
  data.cols = vocab.size();
  for (const auto& [path, label] : usable) {
    try {
      ApkArchive apk = open_apk(path);
      FeatureVector vec = extract_features(apk, vocab);
      data.add_row(vec.values, label);
    } catch (const Error& e) {
      std::cerr << "warning: skipping " << path << ": " << e.what() << "\n";
    }
  }
  save_dataset_csv(data, out_stem + ".csv");
  std::cout << "vocabulary " << out_stem << ".vocab (" << vocab.size()
            << " features)\n";
  std::cout << "matrix     " << out_stem << ".csv (" << data.rows << " rows)\n";
  return 0;
}

int cmd_train(const std::string& csv_path, std::string vocab_path,
              const std::string& out_path, ForestParams params,
              double select_fraction, int cv_folds, uint64_t seed, int jobs,
              std::string timestamp) {
  params.seed = seed;
  if (vocab_path.empty()) {
    fs::path sibling = fs::path(csv_path).replace_extension(".vocab");
    if (!fs::exists(sibling))
      fail(ErrorCode::IoError,
           "no vocabulary given and " + sibling.string() +
               " does not exist (pass --vocab, or produce both files with "
               "'droidrisk vocab')");
    vocab_path = sibling.string();
  }
  FeatureVocabulary vocab = load_vocabulary(vocab_path);
  Dataset data = load_dataset_csv(csv_path);
  if (data.cols != vocab.size())
    fail(ErrorCode::WidthMismatch,
         "matrix width " + std::to_string(data.cols) + " != vocabulary size " +
             std::to_string(vocab.size()));

  std::string digest = dataset_digest(data);
  Forest forest = train_forest(data, params, jobs);
  forest.vocabulary_version = vocab.version;

  Dataset final_data = data;
  FeatureVocabulary final_vocab = vocab;
  if (select_fraction < 1.0) {
    auto [selection, reduced] =
        select_features(vocab, forest.importances, select_fraction);
    std::vector<size_t> order = selection.kept_indices;
    std::sort(order.begin(), order.end());
    Dataset reduced_data;
    reduced_data.cols = order.size();
    std::vector<double> row(order.size());
    for (size_t r = 0; r < data.rows; ++r) {
      for (size_t c = 0; c < order.size(); ++c) row[c] = data.at(r, order[c]);
      reduced_data.add_row(row, data.labels[r]);
    }
    std::cout << "selected " << order.size() << " of " << vocab.size()
              << " features by mean decrease impurity\n";
    forest = train_forest(reduced_data, params, jobs);
    forest.vocabulary_version = reduced.version;
    final_data = std::move(reduced_data);
    final_vocab = std::move(reduced);
  }

  ModelBundle bundle;
  bundle.forest = std::move(forest);
  bundle.vocabulary = std::move(final_vocab);
  bundle.training_digest = digest;
  bundle.created_at = timestamp.empty() ? current_utc_timestamp() : timestamp;

  uint64_t raw = save_model(bundle, out_path);
  std::string text = serialize_model(bundle);
  std::cout << "model " << out_path << " (" << raw << " bytes raw, "
            << deflate_compressed_size(text) << " bytes deflated)\n";

  // train-set fit, the quickest sanity read on the model
  std::vector<double> scores(final_data.rows);
  for (size_t r = 0; r < final_data.rows; ++r)
    scores[r] = predict_proba(
        bundle.forest,
        std::span<const double>(final_data.values.data() + r * final_data.cols,
                                final_data.cols));
  EvalMetrics fit = metrics_at(scores, final_data.labels,
                               bundle.risk_thresholds.low_upper);
  std::cout << "train-set tpr " << format_real(fit.tpr) << " fpr "
            << format_real(fit.fpr) << " at threshold "
            << format_real(fit.threshold) << "\n";

  if (cv_folds >= 2) {
    CvReport report = cross_validate(final_data, params, cv_folds, seed,
                                     bundle.risk_thresholds.low_upper, jobs);
    std::cout << format_cv_report(report);
  }
  return 0;
}

int cmd_scan(const std::string& model_path, const std::vector<std::string>& raw_targets,
             const std::string& format, int jobs) {
  if (model_path.empty())
    fail(ErrorCode::ModelLoadFailure,
         "no model: pass --model or set DROIDRISK_MODEL");
  ModelBundle bundle;
  try {
    bundle = load_model(model_path);
  } catch (const Error& e) {
    fail(ErrorCode::ModelLoadFailure, e.what());
  }
  std::vector<std::string> targets = collect_apk_targets(raw_targets);
  if (targets.empty()) fail(ErrorCode::NoTargets, "nothing to scan");

  ScanSummary summary = scan_paths(bundle, targets, jobs);
  if (format == "jsonl") {
    for (const RiskReport& r : summary.reports)
      std::cout << format_report_jsonl(r) << "\n";
    for (const ScanError& e : summary.errors)
      std::cout << "{\"apk_path\":\"" << e.apk_path << "\",\"error\":true}\n";
    std::cerr << format_summary_text(summary);
  } else {
    for (const RiskReport& r : summary.reports)
      std::cout << format_report_text(r);
    std::cout << format_summary_text(summary);
  }
  return scan_exit_code(summary);
}

int cmd_eval(const std::string& model_path, const std::string& csv_path,
             double threshold, std::string roc_path) {
  if (model_path.empty())
    fail(ErrorCode::ModelLoadFailure,
         "no model: pass --model or set DROIDRISK_MODEL");
  ModelBundle bundle = load_model(model_path);
  Dataset data = load_dataset_csv(csv_path);
  if (data.cols != bundle.forest.n_features)
    fail(ErrorCode::WidthMismatch,
         "matrix width " + std::to_string(data.cols) + " != model width " +
             std::to_string(bundle.forest.n_features));

  std::vector<double> scores(data.rows);
  for (size_t r = 0; r < data.rows; ++r)
    scores[r] = predict_proba(
        bundle.forest,
        std::span<const double>(data.values.data() + r * data.cols, data.cols));

  EvalMetrics m = metrics_at(scores, data.labels, threshold);
  RocCurve roc = roc_curve(scores, data.labels);
  if (roc_path.empty()) roc_path = csv_path + ".roc";
  write_roc_points(roc, roc_path);

  std::cout << "threshold " << format_real(m.threshold) << "\n";
  std::cout << "tpr " << format_real(m.tpr) << " fpr " << format_real(m.fpr)
            << "\n";
  std::cout << "confusion tp " << m.tp << " fn " << m.fn << " fp " << m.fp
            << " tn " << m.tn << "\n";
  std::cout << "auc " << format_real(roc.auc) << "\n";
  std::cout << "roc points " << roc_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"droidrisk: APK feature extraction, random-forest training, "
               "and three-band risk scoring"};
  app.require_subcommand(1);

  // vocab
  auto* vocab_cmd = app.add_subcommand(
      "vocab", "Build a feature vocabulary and labeled matrix from a corpus "
               "directory (benign/ and malware/ subdirectories)");
  std::string corpus_dir, watchlist_path = "data/api_watchlist.txt";
  std::string out_stem = "features";
  size_t cap = 4000;
  vocab_cmd->add_option("corpus", corpus_dir, "corpus directory")->required();
  vocab_cmd->add_option("--watchlist", watchlist_path, "API watchlist file");
  vocab_cmd->add_option("--cap", cap, "maximum vocabulary size");
  vocab_cmd->add_option("--out", out_stem, "output stem (.vocab and .csv)");

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a model from a labeled CSV");
  std::string csv_path, vocab_path, model_out = "model.txt", timestamp;
  ForestParams params;
  double select_fraction = 1.0;
  int cv_folds = 0, jobs = 1;
  uint64_t seed = 1;
  train_cmd->add_option("csv", csv_path, "labeled feature matrix")->required();
  train_cmd->add_option("--vocab", vocab_path,
                        "vocabulary file (default: csv path with .vocab)");
  train_cmd->add_option("--out", model_out, "model output path");
  train_cmd->add_option("--trees", params.n_trees, "number of trees");
  train_cmd->add_option("--depth", params.max_depth, "maximum tree depth");
  train_cmd->add_option("--min-leaf", params.min_samples_leaf,
                        "minimum samples per leaf");
  train_cmd->add_option("--select-fraction", select_fraction,
                        "retrain on this fraction of top-importance features");
  train_cmd->add_option("--cv", cv_folds, "also report k-fold cross-validation");
  train_cmd->add_option("--seed", seed, "RNG seed");
  train_cmd->add_option("--jobs", jobs, "worker threads");
  train_cmd->add_option("--timestamp", timestamp,
                        "created_at override for reproducible model files");

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "Score APK files or directories");
  std::vector<std::string> targets;
  std::string model_path, format = "text";
  int scan_jobs = 1;
  scan_cmd->add_option("targets", targets, "APK files or directories")->required();
  scan_cmd->add_option("--model", model_path, "model file")
      ->envname("DROIDRISK_MODEL");
  scan_cmd->add_option("--format", format, "text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  scan_cmd->add_option("--jobs", scan_jobs, "worker threads");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labeled CSV");
  std::string eval_csv, eval_model, roc_out;
  double threshold = 0.4;
  eval_cmd->add_option("csv", eval_csv, "labeled feature matrix")->required();
  eval_cmd->add_option("--model", eval_model, "model file")
      ->envname("DROIDRISK_MODEL");
  eval_cmd->add_option("--threshold", threshold, "decision threshold");
  eval_cmd->add_option("--roc-out", roc_out, "ROC points output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (vocab_cmd->parsed())
      return cmd_vocab(corpus_dir, watchlist_path, cap, out_stem);
    if (train_cmd->parsed())
      return cmd_train(csv_path, vocab_path, model_out, params, select_fraction,
                       cv_folds, seed, jobs, timestamp);
    if (scan_cmd->parsed())
      return cmd_scan(model_path, targets, format, scan_jobs);
    if (eval_cmd->parsed())
      return cmd_eval(eval_model, eval_csv, threshold, roc_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
