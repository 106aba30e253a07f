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

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "qgas/diaphragm.hpp"
#include "qgas/report.hpp"
#include "random_states.hpp"
#include "scenario_files.hpp"

using namespace qgas;
using namespace qgas::testing;

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double phase_distance(const StateVector<double>& a, const StateVector<double>& b) {
  const auto ov = inner(b, a);
  const auto phase = std::abs(ov) > 0 ? ov / std::abs(ov) : std::complex<double>(1);
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

Verdict eigenstructure() {
  const auto spec = eig_hermitian(lambda().matrix());
  const double hi = spec.eigenvalues[0], lo = spec.eigenvalues[1];
  const double dv = std::max(phase_distance(spec.eigenvectors[0], alpha_plus_ket()),
                             phase_distance(spec.eigenvectors[1], alpha_minus_ket()));
  const bool ok = near(hi, 0.8535533906, 1e-9) && near(lo, 0.1464466094, 1e-9) && dv <= 1e-9;
  return {ok, "eigenvalues " + fmt("%.10f", hi) + ", " + fmt("%.10f", lo) + "; eigenvector error " + fmt("%.1e", dv)};
}

Verdict example_one() {
  const auto run = run_scenario(load_scenario("example1_distinguishable"));
  const double q = run.ledger.total();
  const auto& fin = run.truth.back().chambers;
  const bool halves = fin.size() == 2 && fin[0].volume() == 0.5 && fin[1].volume() == 0.5;
  return {near(q, -0.6931472, 1e-6) && halves, "Q = " + fmt("%.7f", q) + " NkT; " + std::to_string(fin.size()) +
                                                   " chambers" + (halves ? " of exactly V/2" : "")};
}

Verdict example_two() {
  const auto run = run_scenario(load_scenario("example2_nondistinguishable"));
  const double q = run.ledger.total();
  const auto& fin = run.truth.back().chambers;
  const bool volumes = fin.size() == 2 && near(fin[0].volume(), 0.8535534, 1e-6) && near(fin[1].volume(), 0.1464466, 1e-6);
  const double target = -0.4165164;
  return {near(q, target, 1e-6) && volumes,
          "Q = " + fmt("%.7f", q) + " NkT, target " + fmt("%.7f", target) + " (off by " + fmt("%.2e", q - target) +
              "); volumes " + (volumes ? "ok" : "wrong")};
}

Verdict tatiana() {
  const auto run = run_scenario(load_scenario("peres_tatiana"));
  const auto& v = run.view("tatiana").verdict;
  const double target = 0.2766308;
  const bool ok = near(v.total_heat, target, 1e-6) && v.cycle_actual && v.second_law == SecondLaw::Violated;
  return {ok, "Q = " + fmt("%.7f", v.total_heat) + " NkT, target " + fmt("%.7f", target) + " (off by " +
                  fmt("%.2e", v.total_heat - target) + "); cycle " + (v.cycle_actual ? "actual" : "not actual") +
                  ", second law " + std::string(to_string(v.second_law))};
}

Verdict willard() {
  const auto unfinished = run_scenario(load_scenario("peres_tatiana")).view("willard").verdict;
  const auto done = run_scenario(load_scenario("peres_willard_completed")).view("willard").verdict;
  const bool ok = !unfinished.cycle_actual && done.cycle_actual && done.total_heat <= -0.416 + 1e-3 &&
                  near(done.total_heat, -0.416, 1e-3) && done.second_law == SecondLaw::Satisfied;
  return {ok, std::string("Tatiana's endpoint ") + (unfinished.cycle_actual ? "is" : "is not") +
                  " a cycle for Willard; completed Q = " + fmt("%.7f", done.total_heat) + " NkT, second law " +
                  std::string(to_string(done.second_law))};
}

Verdict jaynes() {
  const auto j = run_scenario(load_scenario("jaynes_johann")).view("johann").verdict;
  const auto m = run_scenario(load_scenario("jaynes_marie_completed")).view("marie").verdict;
  const bool ok = j.cycle_actual && near(j.total_heat, 0.6931, 1e-4) && j.second_law == SecondLaw::Violated &&
                  m.cycle_actual && m.total_heat <= 1e-9;
  return {ok, "Johann Q = " + fmt("%.7f", j.total_heat) + " NkT (" + std::string(to_string(j.second_law)) +
                  "); Marie completed Q = " + fmt("%.1e", m.total_heat) + " NkT, cycle " +
                  (m.cycle_actual ? "actual" : "not actual")};
}

Verdict theorem_forward() {
  Rng rng(0xACCE7001);
  int certified = 0;
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_distinguishing_case(2 + trial % 3, rng);
    try {
      const auto proof = verify_orthogonality_theorem(c.states.phi, c.states.psi, c.povm, c.grouping);
      bool all = true;
      for (const auto& s : proof.steps) all = all && s.passed;
      if (all && proof.overlap <= 1e-9) ++certified;
      worst = std::max(worst, proof.overlap);
    } catch (const Error&) {
    }
  }
  return {certified == 1000, std::to_string(certified) + "/1000 certified, largest tr(phi psi) " + fmt("%.1e", worst)};
}

Verdict theorem_converse() {
  Rng rng(0xACCE7002);
  int ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_orthogonal_case(2 + trial % 3, rng);
    const auto m = distinguishing_povm_from_orthogonal(c.phi, c.psi);
    if (is_one_shot_distinguishing(m.povm, m.grouping, c.phi, c.psi)) ++ok;
  }
  return {ok == 1000, std::to_string(ok) + "/1000 distinguishing"};
}

bool mix_rejects(const DensityMatrix<double>& a, const DensityMatrix<double>& b) {
  try {
    mix({GasChamber("upper", 0.5, 1.0, 0.5, QuantumMixture::single(a)),
         GasChamber("lower", 0.5, 1.0, 0.5, QuantumMixture::single(b))},
        true);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::NotOrthogonal;
  }
  return false;
}

Verdict contradiction_guard() {
  const bool zx = mix_rejects(z_plus(), x_plus());
  Rng rng(0xACCE7003);
  int rejected = 0, pairs = 0;
  while (pairs < 100) {
    const Index n = 2 + pairs % 3;
    const auto a = random_density(n, rng);
    const auto b = random_density(n, rng);
    if ((a.matrix().dense() * b.matrix().dense()).trace().real() <= 1e-6) continue;
    ++pairs;
    if (mix_rejects(a, b)) ++rejected;
  }
  return {zx && rejected == 100, std::string("z+/x+ ") + (zx ? "rejected" : "accepted") + "; " +
                                     std::to_string(rejected) + "/100 random pairs rejected"};
}

Verdict work_optimality() {
  const GasChamber box("box", 1.0, 1.0, 1.0, QuantumMixture::from({{0.5, z_plus()}, {0.5, x_plus()}}));
  const double eigen = separate(box, instrument_of(alpha_plus_ket(), alpha_minus_ket())).heat;
  const int points = 10000;
  double best_other = -1e300;
  double best_angle = 0, best = -1e300;
  for (int k = 0; k < points; ++k) {
    const double t = std::numbers::pi * k / points;
    const double q = separate(box, instrument_of(ket2(std::cos(t), std::sin(t)), ket2(-std::sin(t), std::cos(t)))).heat;
    if (q > best) {
      best = q;
      best_angle = t;
    }
    // t and t + pi/2 give the same instrument.
    const double off = std::remainder(t - kPi8, std::numbers::pi / 2);
    if (std::abs(off) > 0.01) best_other = std::max(best_other, q);
  }
  const bool ok = best <= eigen + 1e-12 && std::abs(best_angle - kPi8) <= std::numbers::pi / points;
  return {ok, "eigenbasis Q = " + fmt("%.9f", eigen) + "; best grid angle " + fmt("%.5f", best_angle) +
                  " rad (pi/8 = " + fmt("%.5f", kPi8) + "); margin over bases 0.01 rad away " +
                  fmt("%.2e", eigen - best_other) + " NkT"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"eigenstructure of lambda", eigenstructure},
      {"example 1 separation", example_one},
      {"example 2 separation", example_two},
      {"Tatiana's cycle", tatiana},
      {"Willard's view and completion", willard},
      {"Johann and Marie", jaynes},
      {"orthogonality theorem, forward", theorem_forward},
      {"orthogonality theorem, converse", theorem_converse},
      {"contradiction guard", contradiction_guard},
      {"work optimality on a grid", work_optimality},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v{false, ""};
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    if (!v.passed) ++failures;
    std::printf("%s %zu %s: %s\n", v.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
