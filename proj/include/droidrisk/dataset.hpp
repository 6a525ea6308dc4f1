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
#include <string>
#include <vector>

namespace droidrisk {

// Row-major labeled feature matrix, the training-side interchange format.
// On disk it is a CSV with header "label,f0,f1,..." and labels in {0,1}.
struct Dataset {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;  // rows * cols, row-major
  std::vector<int> labels;     // rows, each 0 or 1

  double at(size_t r, size_t c) const { return values[r * cols + c]; }
  double& at(size_t r, size_t c) { return values[r * cols + c]; }

  void add_row(const std::vector<double>& features, int label);
};

Dataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const Dataset& data, const std::string& path);
std::string serialize_dataset_csv(const Dataset& data);

// FNV-1a 64 over the canonical CSV serialization; identifies the training
// matrix inside a saved model.
std::string dataset_digest(const Dataset& data);

}  // namespace droidrisk
