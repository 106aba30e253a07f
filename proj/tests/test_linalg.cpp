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

#include <Eigen/Dense>
#include <limits>

#include "error_kind.hpp"
#include "fixtures.hpp"
#include "qgas/linalg.hpp"
#include "random_states.hpp"

using namespace qgas;
using namespace qgas::testing;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Equal up to a global phase.
double phase_distance(const StateVector<double>& a, const StateVector<double>& b) {
  const auto ov = inner(b, a);
  const auto phase = std::abs(ov) > 0 ? ov / std::abs(ov) : std::complex<double>(1);
  return (a.amplitudes() - phase * b.amplitudes()).norm();
}

}  // namespace

TEST(HermitianMatrix, AcceptsZPlus) {
  const auto z = make_hermitian<double>(mat2(1, 0, 0, 0));
  EXPECT_EQ(z.dim(), 2);
  EXPECT_EQ(z(0, 0), std::complex<double>(1, 0));
  EXPECT_EQ(z.trace(), 1.0);
}

TEST(HermitianMatrix, RejectsAntisymmetricImaginaryPart) {
  using C = std::complex<double>;
  EXPECT_EQ(kind_of([] { make_hermitian<double>(mat2(0, C(0, 1), C(0, 1), 0)); }), ErrorKind::NotHermitian);
}

TEST(HermitianMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_EQ(kind_of([] { make_hermitian<double>(Mat::Zero(2, 3)); }), ErrorKind::NonSquare);
  EXPECT_EQ(kind_of([] { make_hermitian<double>(Mat::Zero(0, 0)); }), ErrorKind::NonSquare);
  Mat m = Mat::Identity(2, 2);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { make_hermitian<double>(m); }), ErrorKind::NonFinite);
  m(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of([&] { make_hermitian<double>(m); }), ErrorKind::NonFinite);
}

TEST(HermitianMatrix, SymmetrizesWithinInputTolerance) {
  const auto h = make_hermitian<double>(mat2(1, 0.5 + 4e-13, 0.5, 0));
  EXPECT_EQ(h(0, 1), h(1, 0));
  EXPECT_NEAR(h(0, 1).real(), 0.5 + 2e-13, 1e-15);
  EXPECT_EQ(kind_of([] { make_hermitian<double>(mat2(1, 0.5 + 1e-11, 0.5, 0)); }), ErrorKind::NotHermitian);
}

TEST(HermitianMatrix, AcceptsFourByFourMixture) {
  // ½ |z+z+><z+z+| + ½ |x+z-><x+z-| written out in Kronecker order.
  Mat tau = Mat::Zero(4, 4);
  tau(0, 0) = 0.5;
  tau(1, 1) = 0.25;
  tau(1, 3) = 0.25;
  tau(3, 1) = 0.25;
  tau(3, 3) = 0.25;
  const auto h = make_hermitian<double>(tau);
  EXPECT_NEAR(h.trace(), 1.0, 1e-15);
}

TEST(TraceProduct, Examples) {
  EXPECT_NEAR(trace_product(z_plus().matrix(), z_minus().matrix()), 0.0, 1e-15);
  EXPECT_NEAR(trace_product(z_plus().matrix(), x_plus().matrix()), 0.5, 1e-15);
  EXPECT_NEAR(trace_product(z_plus().matrix(), alpha_plus().matrix()), (2 + kSqrt2) / 4, 1e-12);
}

TEST(TraceProduct, DimMismatch) {
  EXPECT_EQ(kind_of([] { trace_product(HermitianMatrix<double>::identity(2), HermitianMatrix<double>::identity(3)); }),
            ErrorKind::DimMismatch);
}

TEST(TraceProduct, SymmetricBilinearAndPositiveProperty) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 4;
    const auto a = herm(random_hermitian(n, rng));
    const auto b = herm(random_hermitian(n, rng));
    const auto c = herm(random_hermitian(n, rng));
    const double s = u(rng);
    // Oracle: Eigen's own product and trace.
    EXPECT_NEAR(trace_product(a, b), (a.dense() * b.dense()).trace().real(), 1e-10);
    EXPECT_NEAR(trace_product(a, b), trace_product(b, a), 1e-12);
    EXPECT_NEAR(trace_product(a + s * b, c), trace_product(a, c) + s * trace_product(b, c), 1e-10);
    const auto rho = random_density(n, rng);
    EXPECT_GE(trace_product(rho.matrix(), rho.matrix()), 0.0);
  }
}

TEST(Tensor, KroneckerOrderingFirstFactorSlow) {
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 3; ++j) {
      const auto t = tensor(StateVector<double>::basis(2, i), StateVector<double>::basis(3, j));
      EXPECT_NEAR(std::abs(t[i * 3 + j]), 1.0, 1e-15);
    }
  }
}

TEST(Tensor, ZPlusZPlusIsFirstDiagonalProjector) {
  const auto t = tensor(z_plus().matrix(), z_plus().matrix());
  EXPECT_EQ(max_diff(t, HermitianMatrix<double>::diagonal({1, 0, 0, 0})), 0.0);
  EXPECT_EQ(max_diff(tensor(HermitianMatrix<double>::identity(2), HermitianMatrix<double>::identity(2)),
                     HermitianMatrix<double>::identity(4)),
            0.0);
}

TEST(Tensor, XPlusZMinusIsProjectorOntoProductKet) {
  // |x+ z-> = (|z+ z-> + |z- z->)/sqrt2 has amplitude 1/sqrt2 at indices 1 and 3.
  Vec k = Vec::Zero(4);
  k(1) = k(3) = 1 / kSqrt2;
  const auto expected = projector_from_vector(StateVector<double>::from_amplitudes(k));
  EXPECT_LT(max_diff(tensor(x_plus().matrix(), z_minus().matrix()), expected), 1e-15);
}

TEST(Tensor, TraceMultipliesProperty) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = herm(random_hermitian(2 + trial % 3, rng));
    const auto b = herm(random_hermitian(2 + (trial / 3) % 3, rng));
    EXPECT_NEAR(tensor(a, b).trace(), a.trace() * b.trace(), 1e-10);
  }
}

TEST(PartialTrace, Examples) {
  const auto zz = tensor(z_plus().matrix(), z_plus().matrix());
  EXPECT_LT(max_diff(partial_trace(zz, {2, 2}, Factor::First), z_plus().matrix()), 1e-15);

  const auto tau = 0.5 * tensor(z_plus().matrix(), z_plus().matrix()) + 0.5 * tensor(x_plus().matrix(), z_minus().matrix());
  EXPECT_LT(max_diff(partial_trace(tau, {2, 2}, Factor::First), lambda().matrix()), 1e-15);

  const auto mixed = HermitianMatrix<double>::identity(4) * 0.25;
  EXPECT_LT(max_diff(partial_trace(mixed, {2, 2}, Factor::First), HermitianMatrix<double>::identity(2) * 0.5), 1e-15);
}

TEST(PartialTrace, DimFactorMismatch) {
  EXPECT_EQ(kind_of([] { partial_trace(HermitianMatrix<double>::identity(4), {2, 3}, Factor::First); }),
            ErrorKind::DimFactorMismatch);
}

TEST(PartialTrace, OfTensorProductProperty) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d1 = 2 + trial % 3;
    const Index d2 = 2 + (trial / 3) % 3;
    const auto a = herm(random_hermitian(d1, rng));
    const auto b = herm(random_hermitian(d2, rng));
    const auto ab = tensor(a, b);
    EXPECT_LT(max_diff(partial_trace(ab, {d1, d2}, Factor::First), b.trace() * a), 1e-12);
    EXPECT_LT(max_diff(partial_trace(ab, {d1, d2}, Factor::Second), a.trace() * b), 1e-12);
    EXPECT_NEAR(partial_trace(ab, {d1, d2}, Factor::First).trace(), ab.trace(), 1e-12);
  }
}

TEST(Eigen, LambdaEigenstructure) {
  const auto spec = eig_hermitian(lambda().matrix());
  ASSERT_EQ(spec.eigenvalues.size(), 2u);
  EXPECT_NEAR(spec.eigenvalues[0], (2 + kSqrt2) / 4, 1e-12);
  EXPECT_NEAR(spec.eigenvalues[1], (2 - kSqrt2) / 4, 1e-12);
  EXPECT_LT(phase_distance(spec.eigenvectors[0], alpha_plus_ket()), 1e-9);
  EXPECT_LT(phase_distance(spec.eigenvectors[1], alpha_minus_ket()), 1e-9);
  // Phase convention: first non-negligible component real and positive.
  EXPECT_NEAR(spec.eigenvectors[0][0].real(), std::cos(kPi8), 1e-12);
  EXPECT_NEAR(spec.eigenvectors[1][0].real(), std::sin(kPi8), 1e-12);
  EXPECT_NEAR(spec.eigenvectors[1][1].real(), -std::cos(kPi8), 1e-12);
}

TEST(Eigen, DiagonalAndDegenerate) {
  const auto d = eig_hermitian(HermitianMatrix<double>::diagonal({1, 0}));
  EXPECT_EQ(d.eigenvalues, (std::vector<double>{1, 0}));
  EXPECT_NEAR(std::abs(d.eigenvectors[0][0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.eigenvectors[1][1]), 1.0, 1e-15);

  const auto half = eig_hermitian(HermitianMatrix<double>::identity(2) * 0.5);
  EXPECT_NEAR(half.eigenvalues[0], 0.5, 1e-15);
  EXPECT_NEAR(half.eigenvalues[1], 0.5, 1e-15);
  EXPECT_NEAR(std::abs(inner(half.eigenvectors[0], half.eigenvectors[1])), 0.0, 1e-12);
}

TEST(Eigen, ProjectorAlphaPlusMatrix) {
  const auto p = projector_from_vector(alpha_plus_ket());
  const auto expected = make_hermitian<double>(mat2((2 + kSqrt2) / 4, kSqrt2 / 4, kSqrt2 / 4, (2 - kSqrt2) / 4));
  EXPECT_LT(max_diff(p, expected), 1e-15);
  EXPECT_LT(max_diff(projector_from_vector(x_plus_ket()), make_hermitian<double>(mat2(0.5, 0.5, 0.5, 0.5))), 1e-15);
}

TEST(Eigen, ProjectorIsIdempotentRankOne) {
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = projector_from_vector(random_ket(1 + trial % 5, rng));
    EXPECT_LT((p.dense() * p.dense() - p.dense()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(p.trace(), 1.0, 1e-12);
  }
}

TEST(Eigen, InvariantsAgainstIndependentSolverProperty) {
  Rng rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 1 + trial % 8;
    const auto h = herm(random_hermitian(n, rng));
    const auto spec = eig_hermitian(h);
    ASSERT_EQ(spec.eigenvalues.size(), std::size_t(n));
    Eigen::SelfAdjointEigenSolver<Mat> oracle(h.dense());
    for (Index k = 0; k < n; ++k) {
      // Eigen sorts ascending.
      EXPECT_NEAR(spec.eigenvalues[std::size_t(k)], oracle.eigenvalues()(n - 1 - k), 1e-9);
      const auto& v = spec.eigenvectors[std::size_t(k)].amplitudes();
      EXPECT_LT((h.dense() * v - spec.eigenvalues[std::size_t(k)] * v).norm(), 1e-9);
      for (Index j = 0; j <= k; ++j) {
        const double expected = j == k ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(inner(spec.eigenvectors[std::size_t(j)], spec.eigenvectors[std::size_t(k)])), expected, 1e-9);
      }
      if (k > 0) {
        EXPECT_GE(spec.eigenvalues[std::size_t(k - 1)], spec.eigenvalues[std::size_t(k)]);
      }
    }
    EXPECT_LT(distance(spec.reassemble(), h), 1e-9 * std::max(1.0, h.dense().norm()));
  }
}

TEST(Eigen, DegenerateClustersStayOrthonormalProperty) {
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + trial % 5;
    const Mat u = random_unitary(n, rng);
    Vec values(n);
    for (Index k = 0; k < n; ++k) values(k) = double(k % 2);  // heavy degeneracy
    const auto h = HermitianMatrix<double>::from_dense(u * values.asDiagonal() * u.adjoint(), 1e-9);
    const auto spec = eig_hermitian(h);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        EXPECT_NEAR(std::abs(inner(spec.eigenvectors[std::size_t(a)], spec.eigenvectors[std::size_t(b)])),
                    a == b ? 1.0 : 0.0, 1e-9);
    EXPECT_LT(distance(spec.reassemble(), h), 1e-9);
  }
}

TEST(Eigen, PhaseConventionIsDeterministic) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = herm(random_hermitian(4, rng));
    const auto a = eig_hermitian(h);
    const auto b = eig_hermitian(h);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(a.eigenvectors[k].amplitudes(), b.eigenvectors[k].amplitudes());
      Index first = 0;
      while (std::abs(a.eigenvectors[k][first]) <= 1e-9) ++first;
      EXPECT_GT(a.eigenvectors[k][first].real(), 0.0);
      EXPECT_NEAR(a.eigenvectors[k][first].imag(), 0.0, 1e-12);
    }
  }
}

TEST(Eigen, WorksForLongDouble) {
  DenseMatrix<long double> m(2, 2);
  m << 0.75L, 0.25L, 0.25L, 0.25L;
  const auto spec = eig_hermitian(HermitianMatrix<long double>::from_dense(m));
  EXPECT_NEAR(double(spec.eigenvalues[0]), (2 + kSqrt2) / 4, 1e-15);
}

TEST(StateVector, NormalizationIsChecked) {
  EXPECT_EQ(kind_of([] { StateVector<double>::from_amplitudes(vec({1, 1})); }), ErrorKind::NotNormalized);
  EXPECT_EQ(kind_of([] { StateVector<double>::normalized(vec({0, 0})); }), ErrorKind::NotNormalized);
  EXPECT_NO_THROW(StateVector<double>::from_amplitudes(vec({0.6, {0, 0.8}})));
}

TEST(Unitary, RejectsNonUnitary) {
  EXPECT_EQ(kind_of([] { Unitary<double>::from_dense(mat2(1, 1, 0, 1)); }), ErrorKind::NotUnitary);
}

TEST(RotateTo, ZPlusToXPlusIsHadamard) {
  const auto u = rotate_to(z_plus_ket(), x_plus_ket());
  const Mat hadamard = mat2(1, 1, 1, -1) / kSqrt2;
  EXPECT_LT((u.dense() - hadamard).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RotateTo, MapsSourceToTargetProperty) {
  Rng rng(18);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 2 + trial % 4;
    const auto a = random_ket(n, rng);
    const auto b = random_ket(n, rng);
    const auto u = rotate_to(a, b);
    const Mat& m = u.dense();
    EXPECT_LT((m.adjoint() * m - Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    const auto image = StateVector<double>::normalized(m * a.amplitudes());
    EXPECT_LT(phase_distance(image, b), 1e-9);
    // Identity on vectors orthogonal to both.
    Vec c = random_ket(n, rng).amplitudes();
    c -= a.amplitudes().dot(c) * a.amplitudes();
    const Vec bperp = (b.amplitudes() - a.amplitudes().dot(b.amplitudes()) * a.amplitudes()).normalized();
    c -= bperp.dot(c) * bperp;
    EXPECT_LT((m * c - c).norm(), 1e-9);
  }
}

TEST(RotateTo, SameStateIsIdentity) {
  const auto u = rotate_to(alpha_plus_ket(), alpha_plus_ket());
  EXPECT_EQ(u.dense(), Mat::Identity(2, 2));
}
