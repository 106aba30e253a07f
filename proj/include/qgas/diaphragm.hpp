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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgas/gas.hpp"

namespace qgas {

struct SeparationOutcome {
  std::string label;
  double probability;
  std::optional<GasContents> contents;  // absent when the outcome never fires
};

struct SeparationResult {
  std::vector<GasChamber> chambers;  // one per outcome with probability above kNegligibleProbability
  double heat;
  std::vector<SeparationOutcome> outcomes;
};

// Child chambers are labelled "<parent>/<outcome>".
SeparationResult separate(const GasChamber& chamber, const ProjectiveInstrument<double>& instrument,
                          double boltzmann = 1.0);

struct MixResult {
  GasChamber chamber;
  double heat;
};

// Merges chambers into one labelled `label` (the first chamber's label when
// empty).  A distinguishing mix runs the separating diaphragms backwards and
// requires pairwise orthogonal (or, classically, disjoint) contents.
MixResult mix(const std::vector<GasChamber>& chambers, bool distinguishing, double boltzmann = 1.0,
              const std::string& label = {});

enum class Permeation { Transmitted, Reflected };

std::string_view to_string(Permeation p);

using Permeability = std::map<std::string, Permeation>;

// Outcomes are "transmitted" then "reflected".
SeparationResult classical_separate(const GasChamber& chamber, const Permeability& permeability,
                                    double boltzmann = 1.0);

MixResult classical_mix(const std::vector<GasChamber>& chambers, bool distinguishing, double boltzmann = 1.0,
                        const std::string& label = {});

// Inserts walls at the given volume fractions; no heat is exchanged.
std::vector<GasChamber> insert_partition(const GasChamber& chamber, const std::vector<double>& fractions,
                                         const std::vector<std::string>& labels);

// Isochoric unitary change of every particle's state; no heat is exchanged.
GasChamber rotate(const GasChamber& chamber, const Unitary<double>& u);

}  // namespace qgas
