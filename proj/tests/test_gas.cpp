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

#include <gtest/gtest.h>

#include <limits>

#include "error_kind.hpp"
#include "fixtures.hpp"
#include "qgas/gas.hpp"
#include "random_states.hpp"

using namespace qgas;
using namespace qgas::testing;

namespace {

const double kLn2 = std::log(2.0);

GasContents quantum(const DensityMatrix<double>& rho) { return QuantumMixture::single(rho); }

GasChamber chamber(const std::string& label, double v, double n, GasContents c) {
  return GasChamber(label, v, 1.0, n, std::move(c));
}

DensityMatrix<double> two_qubit(const DensityMatrix<double>& a, const DensityMatrix<double>& b) {
  return DensityMatrix<double>::from(tensor(a.matrix(), b.matrix()));
}

}  // namespace

TEST(IsothermalHeat, Examples) {
  EXPECT_NEAR(isothermal_heat(1, 1, 1, 0.5), -kLn2, 1e-15);
  EXPECT_NEAR(isothermal_heat(1, 1, 1, 0.5), -0.6931, 1e-4);
  EXPECT_EQ(isothermal_heat(3, 2, 5, 5), 0.0);
  EXPECT_NEAR(isothermal_heat(1, 1, 0.5, 1), kLn2, 1e-15);
  EXPECT_NEAR(isothermal_heat(2, 300, 1, 2, 1.380649e-23), 2 * 300 * 1.380649e-23 * kLn2, 1e-30);
}

TEST(IsothermalHeat, RejectsNonPositive) {
  EXPECT_EQ(kind_of([] { isothermal_heat(0, 1, 1, 1); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { isothermal_heat(1, -1, 1, 1); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { isothermal_heat(1, 1, 0, 1); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { isothermal_heat(1, 1, 1, std::numeric_limits<double>::infinity()); }),
            ErrorKind::NonPositiveInput);
}

TEST(IsothermalHeat, AntisymmetricAndAdditiveProperty) {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double n = u(rng), t = u(rng), v1 = u(rng), v2 = u(rng), v3 = u(rng);
    EXPECT_NEAR(isothermal_heat(n, t, v1, v2), -isothermal_heat(n, t, v2, v1), 1e-12 * n * t);
    EXPECT_NEAR(isothermal_heat(n, t, v1, v2) + isothermal_heat(n, t, v2, v3), isothermal_heat(n, t, v1, v3),
                1e-12 * n * t * 10);
  }
}

TEST(GasChamber, Invariants) {
  EXPECT_EQ(kind_of([] { chamber("a", 0, 1, quantum(z_plus())); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { chamber("a", 1, -1, quantum(z_plus())); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { GasChamber("a", 1, 0, 1, quantum(z_plus())); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { chamber("a", std::numeric_limits<double>::quiet_NaN(), 1, quantum(z_plus())); }),
            ErrorKind::NonPositiveInput);
  const auto c = GasChamber("a", 2, 3, 4, quantum(z_plus()));
  EXPECT_DOUBLE_EQ(c.pressure(), 6.0);
  EXPECT_EQ(c.relabeled("b").label(), "b");
}

TEST(GasContents, ConvexWeights) {
  EXPECT_EQ(kind_of([] { QuantumMixture::from({{0.5, z_plus()}, {0.6, x_plus()}}); }), ErrorKind::NotConvex);
  EXPECT_EQ(kind_of([] { SpeciesBag::from({{"Ar", 0.5}}); }), ErrorKind::NotConvex);
  EXPECT_EQ(kind_of([] { quantum_contents(SpeciesBag::single("Ar")); }), ErrorKind::NotQuantum);
}

TEST(ContentsEqual, WillardTauDecompositions) {
  // z'+ = z+ (x) z+ and x''+ = x+ (x) z-; tau written out as a 4x4 matrix.
  const GasContents halves =
      QuantumMixture::from({{0.5, two_qubit(z_plus(), z_plus())}, {0.5, two_qubit(x_plus(), z_minus())}});
  Mat tau = Mat::Zero(4, 4);
  tau(0, 0) = 0.5;
  tau(1, 1) = tau(1, 3) = tau(3, 1) = tau(3, 3) = 0.25;
  const GasContents whole = quantum(DensityMatrix<double>::from(herm(tau)));
  EXPECT_TRUE(contents_equal(halves, whole));
  EXPECT_TRUE(contents_equal(whole, halves));
}

TEST(ContentsEqual, DifferentDecompositionsOfLambda) {
  const GasContents a = QuantumMixture::from({{0.5, z_plus()}, {0.5, x_plus()}});
  const GasContents b = QuantumMixture::from({{kLambdaPlus, alpha_plus()}, {kLambdaMinus, alpha_minus()}});
  EXPECT_TRUE(contents_equal(a, b));
  EXPECT_FALSE(contents_equal(a, quantum(z_plus())));
}

TEST(ContentsEqual, Classical) {
  const GasContents ar = SpeciesBag::single("Ar");
  const GasContents ab = SpeciesBag::from({{"aAr", 0.5}, {"bAr", 0.5}});
  EXPECT_FALSE(contents_equal(ar, ab));
  EXPECT_TRUE(contents_equal(ab, ab));
  EXPECT_TRUE(contents_equal(ar, ar));
  EXPECT_EQ(kind_of([&] { contents_equal(ar, quantum(z_plus())); }), ErrorKind::VariantMismatch);
}

TEST(ContentsEqual, ReflexiveProperty) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const GasContents c = quantum(random_density(2 + trial % 3, rng));
    EXPECT_TRUE(contents_equal(c, c));
  }
}

TEST(HeatLedger, TotalIsExactSum) {
  Rng rng(33);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    HeatLedger ledger;
    double sum = 0;
    for (int k = 0; k < 1 + trial % 7; ++k) {
      const double q = g(rng);
      ledger.record("step", q);
      sum += q;
    }
    EXPECT_NEAR(ledger.total(), sum, 1e-12);
    EXPECT_NEAR(audit_cycle(ledger, {}, {}).total_heat, sum, 1e-12);
  }
}

TEST(HeatLedger, RejectsNonFinite) {
  HeatLedger ledger;
  EXPECT_EQ(kind_of([&] { ledger.record("bad", std::numeric_limits<double>::infinity()); }), ErrorKind::NonFinite);
}

TEST(AuditCycle, TatianaViolation) {
  // Four heats of her account: mix, separate, two free steps; closing state
  // matches the opening one in her two-level description.
  HeatLedger ledger;
  ledger.record("remove partition", kLn2);
  ledger.record("separate lambda", lambda_separation_heat());
  const std::vector<GasChamber> initial = {chamber("upper", 0.5, 0.5, quantum(z_plus())),
                                           chamber("lower", 0.5, 0.5, quantum(x_plus()))};
  const auto v = audit_cycle(ledger, initial, initial);
  EXPECT_TRUE(v.cycle_actual);
  EXPECT_NEAR(v.total_heat, 0.276651649860258, 1e-12);
  EXPECT_EQ(v.second_law, SecondLaw::Violated);
  EXPECT_FALSE(v.apparent_violation_explained);
}

TEST(AuditCycle, WillardSatisfied) {
  HeatLedger ledger;
  ledger.record("separate", lambda_separation_heat());
  const std::vector<GasChamber> initial = {chamber("box", 1, 1, quantum(lambda()))};
  const auto v = audit_cycle(ledger, initial, initial);
  EXPECT_LE(v.total_heat, -0.416);
  EXPECT_EQ(v.second_law, SecondLaw::Satisfied);
}

TEST(AuditCycle, EmptyLedgerIdenticalChambers) {
  const std::vector<GasChamber> initial = {chamber("box", 1, 1, quantum(z_plus()))};
  const auto v = audit_cycle(HeatLedger{}, initial, initial);
  EXPECT_TRUE(v.cycle_actual);
  EXPECT_EQ(v.total_heat, 0.0);
  EXPECT_EQ(v.second_law, SecondLaw::Satisfied);
}

TEST(AuditCycle, DifferentFinalStateIsNotApplicable) {
  HeatLedger ledger;
  ledger.record("mix", kLn2);
  const std::vector<GasChamber> initial = {chamber("a", 0.5, 0.5, SpeciesBag::single("aAr")),
                                           chamber("b", 0.5, 0.5, SpeciesBag::single("bAr"))};
  const GasContents mixed = SpeciesBag::from({{"aAr", 0.5}, {"bAr", 0.5}});
  const std::vector<GasChamber> final_state = {chamber("a", 0.5, 0.5, mixed), chamber("b", 0.5, 0.5, mixed)};
  const auto claimed = audit_cycle(ledger, initial, final_state, true);
  EXPECT_FALSE(claimed.cycle_actual);
  EXPECT_EQ(claimed.second_law, SecondLaw::NotApplicable);
  EXPECT_TRUE(claimed.apparent_violation_explained);
  EXPECT_FALSE(audit_cycle(ledger, initial, final_state, false).apparent_violation_explained);
}

TEST(AuditCycle, VolumeAndOrderMatter) {
  const auto a = chamber("a", 0.5, 0.5, quantum(z_plus()));
  const auto b = chamber("b", 0.5, 0.5, quantum(z_minus()));
  EXPECT_FALSE(audit_cycle(HeatLedger{}, {a, b}, {b, a}).cycle_actual);
  EXPECT_FALSE(audit_cycle(HeatLedger{}, {a}, {a, b}).cycle_actual);
  EXPECT_TRUE(audit_cycle(HeatLedger{}, {a}, {chamber("a", 0.5 * (1 + 1e-11), 0.5, quantum(z_plus()))}).cycle_actual);
  EXPECT_FALSE(audit_cycle(HeatLedger{}, {a}, {chamber("a", 0.5 * (1 + 1e-7), 0.5, quantum(z_plus()))}).cycle_actual);
}

TEST(AuditCycle, NotApplicableIffNotActualProperty) {
  Rng rng(34);
  std::normal_distribution<double> g;
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 300; ++trial) {
    HeatLedger ledger;
    for (int k = 0; k < 3; ++k) ledger.record("s", g(rng));
    const auto rho = random_density(2, rng);
    const std::vector<GasChamber> initial = {chamber("x", 1, 1, quantum(rho))};
    const std::vector<GasChamber> final_state =
        coin(rng) ? initial : std::vector<GasChamber>{chamber("x", 1, 1, quantum(random_density(2, rng)))};
    const auto v = audit_cycle(ledger, initial, final_state);
    EXPECT_EQ(v.second_law == SecondLaw::NotApplicable, !v.cycle_actual);
    if (v.cycle_actual) {
      EXPECT_EQ(v.second_law == SecondLaw::Satisfied, v.total_heat <= 1e-9);
    }
  }
}
