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

namespace droidrisk {

enum class RiskBand { Low, Medium, High };

// Three-band interpretation of the likelihood. Boundary values land in
// Medium: flagging toward caution is the documented choice.
struct RiskThresholds {
  double low_upper = 0.4;   // likelihood below this is Low
  double high_lower = 0.6;  // likelihood above this is High
};

RiskBand score_to_risk(double likelihood, const RiskThresholds& thresholds = {});

const char* band_name(RiskBand band);

}  // namespace droidrisk
