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
#include <string>
#include <variant>
#include <vector>

#include "qgas/gas.hpp"

namespace qgas {

// Sees everything.
struct IdentityLens {
  friend bool operator==(const IdentityLens&, const IdentityLens&) = default;
};

// Sees one tensor factor of the true state.
struct PartialTraceLens {
  FactorDims dims;
  Factor keep;
  friend bool operator==(const PartialTraceLens&, const PartialTraceLens&) = default;
};

// Sees classical species through a rename map; species mapped to the same
// name become indistinguishable.  The map must cover every species present.
struct SpeciesLens {
  std::map<std::string, std::string> rename;
  friend bool operator==(const SpeciesLens&, const SpeciesLens&) = default;
};

using Lens = std::variant<IdentityLens, PartialTraceLens, SpeciesLens>;

struct Observer {
  std::string name;
  Lens lens;
  friend bool operator==(const Observer&, const Observer&) = default;
};

// Throws IncompatibleReduction when the lens cannot act on contents of the
// given kind and dimension (classical contents have dim 0).
void check_compatible(const Observer& obs, bool quantum, Index truth_dim);

GasContents view_contents(const Observer& obs, const GasContents& truth);
GasChamber view_chamber(const Observer& obs, const GasChamber& truth);
std::vector<GasChamber> view_chambers(const Observer& obs, const std::vector<GasChamber>& truth);

// {E+, E-} with E± = |α± z+><α± z+| + |α± z-><α± z-| on C^2 (x) C^2, where
// α± are the eigenvectors of (z+ + x+)/2.
Povm<double> build_willard_povm();

// The same operators as a projective instrument.
ProjectiveInstrument<double> build_willard_instrument();

}  // namespace qgas
