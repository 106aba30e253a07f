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

#include <string>
#include <vector>

#include "qgas/protocol.hpp"

namespace qgas {

struct Snapshot {
  std::string description;
  double heat;  // heat of this step; 0 for the initial configuration
  std::vector<GasChamber> chambers;
};

struct ExpectationResult {
  int line;
  std::string text;
  bool passed;
  std::string detail;
};

struct ObserverView {
  Observer observer;
  std::vector<Snapshot> steps;      // as this observer describes them
  HeatLedger ledger;                // identical for every observer
  std::vector<CycleVerdict> claims;  // one per CLAIM_CYCLE
  CycleVerdict verdict;             // the last claim, or an unclaimed audit at the end
};

struct ScenarioRun {
  Header header;
  HeatLedger ledger;
  std::vector<Snapshot> truth;
  std::vector<ObserverView> views;
  std::vector<ExpectationResult> expectations;

  // N k T of the whole system, with k = 1.
  double reference_heat() const { return header.particles * header.temperature; }
  bool expectations_passed() const;
  const ObserverView& view(const std::string& observer) const;
};

// Executes the protocol on the ground truth once and renders every step for
// each observer.  Failures become StepError carrying the statement's line.
ScenarioRun run_scenario(const Protocol& protocol);

// As above with the header's observers replaced.
ScenarioRun run_scenario(const Protocol& protocol, const std::vector<Observer>& observers);

}  // namespace qgas
