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

#include "qgas/gas.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace qgas {

namespace {

void check_convex(const std::vector<double>& weights) {
  if (weights.empty()) throw Error(ErrorKind::NotConvex, "no components");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::NotConvex, "weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::kHermitianInput) {
    throw Error(ErrorKind::NotConvex, "weights sum to " + std::to_string(sum));
  }
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

bool relative_close(double a, double b, double tolerance) {
  return std::abs(a - b) <= tolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

QuantumMixture QuantumMixture::from(std::vector<MixtureComponent> components) {
  std::vector<double> weights;
  for (const auto& c : components) {
    weights.push_back(c.weight);
    if (c.state.dim() != components.front().state.dim()) {
      throw Error(ErrorKind::DimMismatch, "mixture components have unequal dims");
    }
  }
  check_convex(weights);
  return QuantumMixture(std::move(components));
}

QuantumMixture QuantumMixture::single(DensityMatrix<double> state) {
  return QuantumMixture({{1.0, std::move(state)}});
}

DensityMatrix<double> QuantumMixture::assembled() const {
  std::vector<double> weights;
  std::vector<DensityMatrix<double>> states;
  for (const auto& c : components_) {
    weights.push_back(c.weight);
    states.push_back(c.state);
  }
  return mixture(weights, states);
}

SpeciesBag SpeciesBag::from(std::map<std::string, double> weights) {
  std::vector<double> w;
  for (const auto& [name, x] : weights) {
    if (name.empty()) throw Error(ErrorKind::UnknownSpecies, "empty species name");
    w.push_back(x);
  }
  check_convex(w);
  return SpeciesBag(std::move(weights));
}

double SpeciesBag::weight(const std::string& species) const {
  auto it = weights_.find(species);
  return it == weights_.end() ? 0.0 : it->second;
}

bool is_quantum(const GasContents& c) { return std::holds_alternative<QuantumMixture>(c); }

const QuantumMixture& quantum_contents(const GasContents& c) {
  if (const auto* q = std::get_if<QuantumMixture>(&c)) return *q;
  throw Error(ErrorKind::NotQuantum, "chamber holds a classical gas");
}

const SpeciesBag& classical_contents(const GasContents& c) {
  if (const auto* s = std::get_if<SpeciesBag>(&c)) return *s;
  throw Error(ErrorKind::VariantMismatch, "chamber holds a quantum gas");
}

GasChamber::GasChamber(std::string label, double volume, double temperature, double particles,
                       GasContents contents)
    : label_(std::move(label)),
      volume_(volume),
      temperature_(temperature),
      particles_(particles),
      contents_(std::move(contents)) {
  if (!positive_finite(volume_)) throw Error(ErrorKind::NonPositiveInput, "volume must be positive");
  if (!positive_finite(temperature_)) throw Error(ErrorKind::NonPositiveInput, "temperature must be positive");
  if (!positive_finite(particles_)) throw Error(ErrorKind::NonPositiveInput, "particle amount must be positive");
}

GasChamber GasChamber::relabeled(std::string label) const {
  GasChamber c = *this;
  c.label_ = std::move(label);
  return c;
}

GasChamber GasChamber::with_contents(GasContents contents) const {
  GasChamber c = *this;
  c.contents_ = std::move(contents);
  return c;
}

void HeatLedger::record(std::string description, double heat) {
  if (!std::isfinite(heat)) throw Error(ErrorKind::NonFinite, "heat for '" + description + "' is not finite");
  entries_.push_back({std::move(description), heat});
}

double HeatLedger::total() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.heat;
  return sum;
}

std::string_view to_string(SecondLaw s) {
  switch (s) {
    case SecondLaw::Satisfied: return "satisfied";
    case SecondLaw::Violated: return "violated";
    case SecondLaw::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

double isothermal_heat(double particles, double temperature, double v_initial, double v_final,
                       double boltzmann) {
  for (double x : {particles, temperature, v_initial, v_final, boltzmann}) {
    if (!positive_finite(x)) throw Error(ErrorKind::NonPositiveInput, "isothermal_heat needs positive inputs");
  }
  return particles * boltzmann * temperature * std::log(v_final / v_initial);
}

bool contents_equal(const GasContents& a, const GasContents& b, double tolerance) {
  if (a.index() != b.index()) throw Error(ErrorKind::VariantMismatch, "quantum and classical contents");
  if (is_quantum(a)) {
    const auto ra = std::get<QuantumMixture>(a).assembled();
    const auto rb = std::get<QuantumMixture>(b).assembled();
    return ra.dim() == rb.dim() && distance(ra.matrix(), rb.matrix()) <= tolerance;
  }
  const auto& wa = std::get<SpeciesBag>(a).weights();
  const auto& wb = std::get<SpeciesBag>(b).weights();
  std::set<std::string> names;
  for (const auto& [n, w] : wa) names.insert(n);
  for (const auto& [n, w] : wb) names.insert(n);
  for (const auto& n : names) {
    if (std::abs(std::get<SpeciesBag>(a).weight(n) - std::get<SpeciesBag>(b).weight(n)) > tolerance) return false;
  }
  return true;
}

bool chambers_match(const std::vector<GasChamber>& initial, const std::vector<GasChamber>& final_state) {
  if (initial.size() != final_state.size()) return false;
  for (std::size_t k = 0; k < initial.size(); ++k) {
    const auto& a = initial[k];
    const auto& b = final_state[k];
    if (!relative_close(a.volume(), b.volume(), kCycleVolumeTolerance)) return false;
    if (!relative_close(a.particles(), b.particles(), kCycleVolumeTolerance)) return false;
    if (!relative_close(a.temperature(), b.temperature(), kCycleVolumeTolerance)) return false;
    if (a.contents().index() != b.contents().index()) return false;
    if (!contents_equal(a.contents(), b.contents())) return false;
  }
  return true;
}

CycleVerdict audit_cycle(const HeatLedger& ledger, const std::vector<GasChamber>& initial,
                         const std::vector<GasChamber>& final_state, bool claimed, double reference_heat) {
  CycleVerdict v;
  v.cycle_claimed = claimed;
  v.cycle_actual = chambers_match(initial, final_state);
  v.total_heat = ledger.total();
  if (v.cycle_actual) {
    v.second_law = v.total_heat <= kSecondLawSlack * std::abs(reference_heat) ? SecondLaw::Satisfied
                                                                               : SecondLaw::Violated;
  } else {
    v.second_law = SecondLaw::NotApplicable;
    v.apparent_violation_explained = claimed;
  }
  return v;
}

}  // namespace qgas
