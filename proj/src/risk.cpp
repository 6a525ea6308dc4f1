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

#include "droidrisk/risk.hpp"

#include "droidrisk/bytes.hpp"
#include "droidrisk/error.hpp"

namespace droidrisk {

RiskBand score_to_risk(double likelihood, const RiskThresholds& thresholds) {
  if (!(likelihood >= 0.0 && likelihood <= 1.0))
    fail(ErrorCode::OutOfRange, "likelihood " + format_real(likelihood));
  if (likelihood < thresholds.low_upper) return RiskBand::Low;
  if (likelihood > thresholds.high_lower) return RiskBand::High;
  return RiskBand::Medium;
}

const char* band_name(RiskBand band) {
  switch (band) {
    case RiskBand::Low:
      return "Low";
    case RiskBand::Medium:
      return "Medium";
    case RiskBand::High:
      return "High";
  }
  return "?";
}

}  // namespace droidrisk
