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

#include "qgas/statistics.hpp"

namespace qgas {

struct MixtureComponent {
  double weight;
  DensityMatrix<double> state;
};

// A gas of particles each prepared in one of several states; weights are the
// population fractions.
class QuantumMixture {
 public:
  static QuantumMixture from(std::vector<MixtureComponent> components);
  static QuantumMixture single(DensityMatrix<double> state);

  Index dim() const { return components_.front().state.dim(); }
  const std::vector<MixtureComponent>& components() const { return components_; }
  DensityMatrix<double> assembled() const;

 private:
  explicit QuantumMixture(std::vector<MixtureComponent> c) : components_(std::move(c)) {}
  std::vector<MixtureComponent> components_;
};

// Classical gas labelled by species name -> fraction.
class SpeciesBag {
 public:
  static SpeciesBag from(std::map<std::string, double> weights);
  static SpeciesBag single(const std::string& species) { return SpeciesBag({{species, 1.0}}); }

  const std::map<std::string, double>& weights() const { return weights_; }
  double weight(const std::string& species) const;

 private:
  explicit SpeciesBag(std::map<std::string, double> w) : weights_(std::move(w)) {}
  std::map<std::string, double> weights_;
};

using GasContents = std::variant<QuantumMixture, SpeciesBag>;

bool is_quantum(const GasContents& c);
// Throws NotQuantum for classical contents.
const QuantumMixture& quantum_contents(const GasContents& c);
const SpeciesBag& classical_contents(const GasContents& c);

class GasChamber {
 public:
  // Throws NonPositiveInput unless volume, temperature and particles are
  // finite and strictly positive.
  GasChamber(std::string label, double volume, double temperature, double particles, GasContents contents);

  const std::string& label() const { return label_; }
  double volume() const { return volume_; }
  double temperature() const { return temperature_; }
  double particles() const { return particles_; }
  const GasContents& contents() const { return contents_; }

  GasChamber relabeled(std::string label) const;
  GasChamber with_contents(GasContents contents) const;
  double pressure(double boltzmann = 1.0) const { return particles_ * boltzmann * temperature_ / volume_; }

 private:
  std::string label_;
  double volume_;
  double temperature_;
  double particles_;
  GasContents contents_;
};

struct HeatEntry {
  std::string description;
  double heat;  // absorbed by the gas
};

class HeatLedger {
 public:
  explicit HeatLedger(double boltzmann = 1.0) : boltzmann_(boltzmann) {}

  void record(std::string description, double heat);
  const std::vector<HeatEntry>& entries() const { return entries_; }
  double boltzmann() const { return boltzmann_; }
  double total() const;

 private:
  double boltzmann_;
  std::vector<HeatEntry> entries_;
};

enum class SecondLaw { Satisfied, Violated, NotApplicable };

std::string_view to_string(SecondLaw s);

struct CycleVerdict {
  bool cycle_claimed = false;
  bool cycle_actual = false;
  double total_heat = 0.0;
  SecondLaw second_law = SecondLaw::NotApplicable;
  bool apparent_violation_explained = false;
};

inline constexpr double kCycleVolumeTolerance = 1e-9;
inline constexpr double kCycleContentsTolerance = 1e-9;
// Q <= kSecondLawSlack * reference counts as Q <= 0.
inline constexpr double kSecondLawSlack = 1e-9;

// N k T ln(Vf / Vi).
double isothermal_heat(double particles, double temperature, double v_initial, double v_final,
                       double boltzmann = 1.0);

// Throws VariantMismatch when one side is quantum and the other classical.
bool contents_equal(const GasContents& a, const GasContents& b, double tolerance = kCycleContentsTolerance);

bool chambers_match(const std::vector<GasChamber>& initial, const std::vector<GasChamber>& final_state);

// reference_heat scales the second-law slack; pass the N k T of the system.
CycleVerdict audit_cycle(const HeatLedger& ledger, const std::vector<GasChamber>& initial,
                         const std::vector<GasChamber>& final_state, bool claimed = true,
                         double reference_heat = 1.0);

}  // namespace qgas
