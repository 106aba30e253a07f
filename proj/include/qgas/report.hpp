// Copyright 2026 The qgas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "qgas/scenario.hpp"

namespace qgas {

enum class HeatUnits { NkT, Absolute };

struct ReportUnits {
  HeatUnits mode = HeatUnits::NkT;
  double boltzmann = 1.380649e-23;  // J/K, absolute mode only
  std::optional<double> particles;    // overrides the header in absolute mode
  std::optional<double> temperature;  // likewise
};

struct RunReport {
  ScenarioRun run;
  ReportUnits units;
  double heat_scale;  // internal heat (k = 1) -> reported heat

  double reported(double internal_heat) const { return internal_heat * heat_scale; }
};

inline constexpr const char* kReportSchema = "1";

// Parses nothing; runs an already parsed protocol.  Runtime failures throw
// StepError.
RunReport execute(const Protocol& p, const ReportUnits& units = {});

// Deterministic, pretty-printed JSON.
std::string to_json(const RunReport& report);

}  // namespace qgas
