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

// Closed-form spin-1/2 states used as oracles.

#include <cmath>
#include <numbers>
#include <string>

#include "qgas/statistics.hpp"

namespace qgas::testing {

inline StateVector<double> ket2(double a, double b) {
  DenseVector<double> v(2);
  v << a, b;
  return StateVector<double>::normalized(v);
}

inline const double kPi8 = std::numbers::pi / 8.0;

inline StateVector<double> z_plus_ket() { return ket2(1, 0); }
inline StateVector<double> z_minus_ket() { return ket2(0, 1); }
inline StateVector<double> x_plus_ket() { return ket2(1, 1); }
inline StateVector<double> x_minus_ket() { return ket2(1, -1); }
inline StateVector<double> alpha_plus_ket() { return ket2(std::cos(kPi8), std::sin(kPi8)); }
inline StateVector<double> alpha_minus_ket() { return ket2(-std::sin(kPi8), std::cos(kPi8)); }

inline DensityMatrix<double> pure(const StateVector<double>& v) { return DensityMatrix<double>::pure(v); }
inline DensityMatrix<double> z_plus() { return pure(z_plus_ket()); }
inline DensityMatrix<double> z_minus() { return pure(z_minus_ket()); }
inline DensityMatrix<double> x_plus() { return pure(x_plus_ket()); }
inline DensityMatrix<double> alpha_plus() { return pure(alpha_plus_ket()); }
inline DensityMatrix<double> alpha_minus() { return pure(alpha_minus_ket()); }

// λ = ½ z+ + ½ x+ = ¼ [[3, 1], [1, 1]].
inline DensityMatrix<double> lambda() {
  DenseMatrix<double> m(2, 2);
  m << 0.75, 0.25, 0.25, 0.25;
  return DensityMatrix<double>::from(HermitianMatrix<double>::from_dense(m));
}

inline const double kLambdaPlus = (2.0 + std::numbers::sqrt2) / 4.0;
inline const double kLambdaMinus = (2.0 - std::numbers::sqrt2) / 4.0;

// N k T Σ p ln p for the eigenvalues of λ, in units of N k T.
inline double lambda_separation_heat() {
  return kLambdaPlus * std::log(kLambdaPlus) + kLambdaMinus * std::log(kLambdaMinus);
}

inline ProjectiveInstrument<double> instrument_of(const StateVector<double>& a, const StateVector<double>& b,
                                                  const std::string& la = "0", const std::string& lb = "1") {
  return ProjectiveInstrument<double>::from({{la, projector_from_vector(a)}, {lb, projector_from_vector(b)}});
}

// Largest |entry| of the difference.
inline double max_diff(const HermitianMatrix<double>& a, const HermitianMatrix<double>& b) {
  return (a.dense() - b.dense()).cwiseAbs().maxCoeff();
}

}  // namespace qgas::testing
