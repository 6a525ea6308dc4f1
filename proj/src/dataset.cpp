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

#include "droidrisk/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

void Dataset::add_row(const std::vector<double>& features, int label) {
  if (cols == 0 && rows == 0) cols = features.size();
  if (features.size() != cols)
    fail(ErrorCode::WidthMismatch, "row width " + std::to_string(features.size()) +
                                       " != " + std::to_string(cols));
  values.insert(values.end(), features.begin(), features.end());
  labels.push_back(label);
  ++rows;
}

std::string serialize_dataset_csv(const Dataset& data) {
  std::ostringstream out;
  out << "label";
  for (size_t c = 0; c < data.cols; ++c) out << ",f" << c;
  out << "\n";
  for (size_t r = 0; r < data.rows; ++r) {
    out << data.labels[r];
    for (size_t c = 0; c < data.cols; ++c) out << ',' << format_real(data.at(r, c));
    out << "\n";
  }
  return out.str();
}

void save_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot create " + path);
  out << serialize_dataset_csv(data);
  if (!out) fail(ErrorCode::IoError, "short write on " + path);
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);

  Dataset data;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoError, path + ": empty file");
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line.compare(0, 5, "label") != 0)
    fail(ErrorCode::IoError, path + ": header must start with 'label'");
  size_t header_cols = 0;
  for (char c : line)
    if (c == ',') ++header_cols;

  size_t line_no = 1;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    row.clear();
    const char* p = line.data();
    const char* end = p + line.size();
    int label = -1;
    bool first = true;
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      if (first) {
        if (comma - p != 1 || (*p != '0' && *p != '1'))
          fail(ErrorCode::IoError,
               path + ":" + std::to_string(line_no) + ": label must be 0 or 1");
        label = *p - '0';
        first = false;
      } else {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(p, comma, v);
        if (ec != std::errc() || ptr != comma)
          fail(ErrorCode::IoError,
               path + ":" + std::to_string(line_no) + ": bad number");
        row.push_back(v);
      }
      if (comma == end) break;
      p = comma + 1;
    }
    if (data.rows > 0 && row.size() != data.cols)
      fail(ErrorCode::WidthMismatch,
           path + ":" + std::to_string(line_no) + ": ragged row");
    if (data.rows == 0 && row.size() != header_cols)
      fail(ErrorCode::WidthMismatch,
           path + ":" + std::to_string(line_no) + ": row width != header width");
    data.add_row(row, label);
  }
  if (data.rows == 0) fail(ErrorCode::IoError, path + ": no data rows");
  return data;
}

std::string dataset_digest(const Dataset& data) {
  std::string csv = serialize_dataset_csv(data);
  uint64_t h = fnv1a64({reinterpret_cast<const uint8_t*>(csv.data()), csv.size()});
  return "fnv1a64:" + to_hex64(h);
}

}  // namespace droidrisk
