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

#include "qgas/observers.hpp"

#include <cmath>

namespace qgas {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

DensityMatrix<double> reduce(const PartialTraceLens& lens, const DensityMatrix<double>& rho) {
  return DensityMatrix<double>::from(partial_trace(rho.matrix(), lens.dims, lens.keep));
}

}  // namespace

void check_compatible(const Observer& obs, bool quantum, Index truth_dim) {
  std::visit(Overloaded{
                 [](const IdentityLens&) {},
                 [&](const PartialTraceLens& l) {
                   if (!quantum) {
                     throw Error(ErrorKind::IncompatibleReduction, "observer '" + obs.name + "' traces out a factor of a classical gas");
                   }
                   if (l.dims.first < 1 || l.dims.second < 1 || l.dims.first * l.dims.second != truth_dim) {
                     throw Error(ErrorKind::IncompatibleReduction,
                                 "observer '" + obs.name + "' factors " + std::to_string(l.dims.first) + "x" +
                                     std::to_string(l.dims.second) + " do not match dim " + std::to_string(truth_dim));
                   }
                 },
                 [&](const SpeciesLens&) {
                   if (quantum) {
                     throw Error(ErrorKind::IncompatibleReduction, "observer '" + obs.name + "' renames species of a quantum gas");
                   }
                 },
             },
             obs.lens);
}

GasContents view_contents(const Observer& obs, const GasContents& truth) {
  const bool quantum = is_quantum(truth);
  check_compatible(obs, quantum, quantum ? quantum_contents(truth).dim() : 0);
  return std::visit(Overloaded{
                        [&](const IdentityLens&) -> GasContents { return truth; },
                        [&](const PartialTraceLens& l) -> GasContents {
                          std::vector<MixtureComponent> out;
                          for (const auto& c : quantum_contents(truth).components()) {
                            out.push_back({c.weight, reduce(l, c.state)});
                          }
                          return QuantumMixture::from(std::move(out));
                        },
                        [&](const SpeciesLens& l) -> GasContents {
                          std::map<std::string, double> merged;
                          for (const auto& [species, w] : classical_contents(truth).weights()) {
                            auto it = l.rename.find(species);
                            if (it == l.rename.end()) {
                              throw Error(ErrorKind::IncompatibleReduction,
                                          "observer '" + obs.name + "' has no name for species '" + species + "'");
                            }
                            merged[it->second] += w;
                          }
                          return SpeciesBag::from(std::move(merged));
                        },
                    },
                    obs.lens);
}

GasChamber view_chamber(const Observer& obs, const GasChamber& truth) {
  return truth.with_contents(view_contents(obs, truth.contents()));
}

std::vector<GasChamber> view_chambers(const Observer& obs, const std::vector<GasChamber>& truth) {
  std::vector<GasChamber> out;
  out.reserve(truth.size());
  for (const auto& c : truth) out.push_back(view_chamber(obs, c));
  return out;
}

ProjectiveInstrument<double> build_willard_instrument() {
  using V = DenseVector<double>;
  V z_plus(2), x_plus(2);
  z_plus << 1.0, 0.0;
  x_plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto zp = DensityMatrix<double>::pure(StateVector<double>::from_amplitudes(z_plus));
  const auto xp = DensityMatrix<double>::pure(StateVector<double>::from_amplitudes(x_plus));
  const auto alpha = eigenbasis_instrument(mixture<double>({0.5, 0.5}, {zp, xp}));
  const auto& proj = alpha.instrument.projectors();
  const auto id = HermitianMatrix<double>::identity(2);
  return ProjectiveInstrument<double>::from({{"E+", tensor(proj[0].matrix, id)}, {"E-", tensor(proj[1].matrix, id)}});
}

Povm<double> build_willard_povm() { return build_willard_instrument().as_povm(); }

}  // namespace qgas
