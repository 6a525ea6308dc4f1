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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace droidrisk {

// SplitMix64: the project-wide RNG. Counter-based (the state walks a Weyl
// sequence and the output is a bijective scramble of it), so streams can be
// derived for any (seed, index) pair and every consumer is reproducible
// across platforms and thread schedules. All randomized behavior in training,
// fold splitting, and fixtures draws from this generator.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) via the multiply-shift reduction.
  uint64_t bounded(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; second value cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), returned in ascending order.
  std::vector<size_t> sample_indices(size_t k, size_t n) {
    if (k > n) k = n;
    std::vector<size_t> all(n);
    std::iota(all.begin(), all.end(), size_t{0});
    // partial Fisher-Yates: the first k slots end up holding the sample
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + static_cast<size_t>(bounded(n - i));
      std::swap(all[i], all[j]);
    }
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Deterministic per-stream seed for (seed, index), e.g. one stream per tree.
inline uint64_t derive_stream_seed(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return g.next();
}

}  // namespace droidrisk
