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

#include "qgas/diaphragm.hpp"

#include <cmath>

namespace qgas {

namespace {

struct Piece {
  std::string label;
  double probability;
  std::optional<GasContents> contents;
};

// Splits the parent at constant pressure: fraction p_i of the particles ends
// up in fraction p_i of the volume.  The last kept piece takes the remainder
// so volumes and particle amounts add up exactly.
SeparationResult split(const GasChamber& parent, const std::vector<Piece>& pieces, double boltzmann) {
  SeparationResult result{{}, 0.0, {}};
  std::vector<const Piece*> kept;
  for (const auto& p : pieces) {
    result.outcomes.push_back({p.label, p.probability, p.contents});
    if (p.probability > tol::kNegligibleProbability && p.contents) kept.push_back(&p);
  }
  if (kept.empty()) throw Error(ErrorKind::Runtime, "no outcome has positive probability");
  double volume_left = parent.volume();
  double particles_left = parent.particles();
  double plogp = 0.0;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const double p = kept[k]->probability;
    plogp += p * std::log(p);
    const bool last = k + 1 == kept.size();
    const double v = last ? volume_left : p * parent.volume();
    const double n = last ? particles_left : p * parent.particles();
    volume_left -= v;
    particles_left -= n;
    result.chambers.emplace_back(parent.label() + "/" + kept[k]->label, v, parent.temperature(), n,
                                 *kept[k]->contents);
  }
  if (kept.size() > 1) result.heat = parent.particles() * boltzmann * parent.temperature() * plogp;
  return result;
}

void check_common_temperature(const std::vector<GasChamber>& chambers) {
  for (const auto& c : chambers) {
    const double t0 = chambers.front().temperature();
    if (std::abs(c.temperature() - t0) > tol::kHermitianInput * t0) {
      throw Error(ErrorKind::TemperatureMismatch,
                  "chambers '" + chambers.front().label() + "' and '" + c.label() + "' differ in temperature");
    }
  }
}

// Sum of N_i k T ln(V / V_i).
double reversible_mixing_heat(const std::vector<GasChamber>& chambers, double total_volume, double boltzmann) {
  double q = 0.0;
  for (const auto& c : chambers) q += c.particles() * boltzmann * c.temperature() * std::log(total_volume / c.volume());
  return q;
}

}  // namespace

SeparationResult separate(const GasChamber& chamber, const ProjectiveInstrument<double>& instrument,
                          double boltzmann) {
  const auto& q = quantum_contents(chamber.contents());
  if (q.dim() != instrument.dim()) {
    throw Error(ErrorKind::DimMismatch, "instrument dim " + std::to_string(instrument.dim()) +
                                            " does not match state dim " + std::to_string(q.dim()));
  }
  std::vector<Piece> pieces;
  for (auto& o : apply_instrument(q.assembled(), instrument)) {
    std::optional<GasContents> contents;
    if (o.post_state) contents = QuantumMixture::single(*o.post_state);
    pieces.push_back({o.label, o.probability, std::move(contents)});
  }
  return split(chamber, pieces, boltzmann);
}

MixResult mix(const std::vector<GasChamber>& chambers, bool distinguishing, double boltzmann,
              const std::string& label) {
  if (chambers.empty()) throw Error(ErrorKind::InvalidPartition, "nothing to mix");
  const bool quantum = is_quantum(chambers.front().contents());
  for (const auto& c : chambers) {
    if (is_quantum(c.contents()) != quantum) throw Error(ErrorKind::VariantMismatch, "mixing quantum with classical gas");
  }
  if (!quantum) return classical_mix(chambers, distinguishing, boltzmann, label);
  const std::string merged_label = label.empty() ? chambers.front().label() : label;
  if (chambers.size() == 1) return {chambers.front().relabeled(merged_label), 0.0};
  check_common_temperature(chambers);

  std::vector<DensityMatrix<double>> assembled;
  for (const auto& c : chambers) assembled.push_back(quantum_contents(c.contents()).assembled());
  for (const auto& a : assembled) {
    if (a.dim() != assembled.front().dim()) throw Error(ErrorKind::DimMismatch, "mixing gases of unequal dims");
  }
  if (distinguishing) {
    for (std::size_t i = 0; i < chambers.size(); ++i) {
      for (std::size_t j = i + 1; j < chambers.size(); ++j) {
        const auto o = are_orthogonal(assembled[i], assembled[j]);
        if (!o.orthogonal) {
          throw Error(ErrorKind::NotOrthogonal, "'" + chambers[i].label() + "' and '" + chambers[j].label() +
                                                    "' are not orthogonal (overlap " + std::to_string(o.overlap) +
                                                    "); no diaphragm can tell them apart");
        }
      }
    }
  }

  double volume = 0.0, particles = 0.0;
  for (const auto& c : chambers) {
    volume += c.volume();
    particles += c.particles();
  }
  std::vector<MixtureComponent> components;
  double weight_sum = 0.0;
  for (const auto& c : chambers) {
    for (const auto& comp : quantum_contents(c.contents()).components()) {
      components.push_back({comp.weight * c.particles() / particles, comp.state});
      weight_sum += components.back().weight;
    }
  }
  for (auto& comp : components) comp.weight /= weight_sum;
  const double heat = distinguishing ? reversible_mixing_heat(chambers, volume, boltzmann) : 0.0;
  return {GasChamber(merged_label, volume, chambers.front().temperature(), particles,
                     QuantumMixture::from(std::move(components))),
          heat};
}

std::string_view to_string(Permeation p) {
  return p == Permeation::Transmitted ? "transmitted" : "reflected";
}

SeparationResult classical_separate(const GasChamber& chamber, const Permeability& permeability,
                                    double boltzmann) {
  if (is_quantum(chamber.contents())) throw Error(ErrorKind::VariantMismatch, "permeability needs a classical gas");
  const auto& bag = classical_contents(chamber.contents());
  std::map<std::string, double> sides[2];
  for (const auto& [species, w] : bag.weights()) {
    auto it = permeability.find(species);
    if (it == permeability.end()) {
      throw Error(ErrorKind::UnknownSpecies, "permeability does not cover species '" + species + "'");
    }
    sides[it->second == Permeation::Transmitted ? 0 : 1][species] = w;
  }
  std::vector<Piece> pieces;
  for (int s = 0; s < 2; ++s) {
    double p = 0.0;
    for (const auto& [n, w] : sides[s]) p += w;
    std::optional<GasContents> contents;
    if (p > 0.0) {
      for (auto& [n, w] : sides[s]) w /= p;
      contents = SpeciesBag::from(sides[s]);
    }
    pieces.push_back({std::string(to_string(s == 0 ? Permeation::Transmitted : Permeation::Reflected)), p,
                      std::move(contents)});
  }
  return split(chamber, pieces, boltzmann);
}

MixResult classical_mix(const std::vector<GasChamber>& chambers, bool distinguishing, double boltzmann,
                        const std::string& label) {
  if (chambers.empty()) throw Error(ErrorKind::InvalidPartition, "nothing to mix");
  const std::string merged_label = label.empty() ? chambers.front().label() : label;
  for (const auto& c : chambers) classical_contents(c.contents());
  if (chambers.size() == 1) return {chambers.front().relabeled(merged_label), 0.0};
  check_common_temperature(chambers);
  if (distinguishing) {
    std::map<std::string, std::string> owner;
    for (const auto& c : chambers) {
      for (const auto& [species, w] : classical_contents(c.contents()).weights()) {
        auto [it, fresh] = owner.emplace(species, c.label());
        if (!fresh) {
          throw Error(ErrorKind::NotOrthogonal, "species '" + species + "' is in both '" + it->second + "' and '" +
                                                    c.label() + "'; no diaphragm can tell them apart");
        }
      }
    }
  }
  double volume = 0.0, particles = 0.0;
  for (const auto& c : chambers) {
    volume += c.volume();
    particles += c.particles();
  }
  std::map<std::string, double> merged;
  for (const auto& c : chambers) {
    for (const auto& [species, w] : classical_contents(c.contents()).weights()) merged[species] += w * c.particles() / particles;
  }
  double sum = 0.0;
  for (const auto& [n, w] : merged) sum += w;
  for (auto& [n, w] : merged) w /= sum;
  const double heat = distinguishing ? reversible_mixing_heat(chambers, volume, boltzmann) : 0.0;
  return {GasChamber(merged_label, volume, chambers.front().temperature(), particles, SpeciesBag::from(merged)),
          heat};
}

std::vector<GasChamber> insert_partition(const GasChamber& chamber, const std::vector<double>& fractions,
                                         const std::vector<std::string>& labels) {
  if (fractions.empty() || fractions.size() != labels.size()) {
    throw Error(ErrorKind::InvalidPartition, "need one label per fraction");
  }
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0) || !std::isfinite(f)) throw Error(ErrorKind::NonPositiveInput, "partition fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > tol::kHermitianInput) throw Error(ErrorKind::InvalidPartition, "fractions must sum to 1");
  std::vector<GasChamber> out;
  double volume_left = chamber.volume();
  double particles_left = chamber.particles();
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const bool last = k + 1 == fractions.size();
    const double v = last ? volume_left : fractions[k] * chamber.volume();
    const double n = last ? particles_left : fractions[k] * chamber.particles();
    volume_left -= v;
    particles_left -= n;
    out.emplace_back(labels[k], v, chamber.temperature(), n, chamber.contents());
  }
  return out;
}

GasChamber rotate(const GasChamber& chamber, const Unitary<double>& u) {
  const auto& q = quantum_contents(chamber.contents());
  std::vector<MixtureComponent> rotated;
  for (const auto& c : q.components()) rotated.push_back({c.weight, apply_unitary(c.state, u)});
  return chamber.with_contents(QuantumMixture::from(std::move(rotated)));
}

}  // namespace qgas
