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

// Small dense complex Hermitian linear algebra.  Every type is templated on
// the real scalar and stores its entries in an Eigen dynamic matrix; dims in
// this library stay below ~16, so clarity wins over blocking or caching.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qgas/error.hpp"

namespace qgas {

using Index = Eigen::Index;

template <typename Real>
using DenseMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using DenseVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

namespace tol {
inline constexpr double kHermitianInput = 1e-12;
inline constexpr double kDerived = 1e-9;
inline constexpr double kNormalization = 1e-12;
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kDegenerateGap = 1e-9;
// Shared by PSD checks, trace checks, POVM completeness and the "> 0" test of
// one-shot distinguishability.
inline constexpr double kStatistical = 1e-10;
inline constexpr double kNegligibleProbability = 1e-12;
}  // namespace tol

namespace detail {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      const auto z = m(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? typename Derived::RealScalar(0) : m.cwiseAbs().maxCoeff();
}

// Largest |m(j,k) - conj(m(k,j))|.
template <typename Real>
Real hermitian_defect(const DenseMatrix<Real>& m) {
  return max_abs(DenseMatrix<Real>(m - m.adjoint()));
}

template <typename Real>
DenseMatrix<Real> kron(const DenseMatrix<Real>& a, const DenseMatrix<Real>& b) {
  DenseMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace detail

template <typename Real = double>
class HermitianMatrix {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Dense = DenseMatrix<Real>;

  // Accepts m when its Hermitian defect is within `tolerance` and stores the
  // symmetrized (m + m^H)/2.
  static HermitianMatrix from_dense(const Dense& m,
                                    Real tolerance = Real(tol::kHermitianInput)) {
    if (m.rows() != m.cols()) {
      throw Error(ErrorKind::NonSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
    }
    if (m.rows() < 1) throw Error(ErrorKind::NonSquare, "matrix must be at least 1x1");
    if (!detail::all_finite(m)) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
    if (detail::hermitian_defect<Real>(m) > tolerance) {
      throw Error(ErrorKind::NotHermitian, "matrix differs from its adjoint");
    }
    return HermitianMatrix(Dense(Real(0.5) * (m + m.adjoint())));
  }

  static HermitianMatrix identity(Index dim) { return HermitianMatrix(Dense::Identity(dim, dim)); }
  static HermitianMatrix zero(Index dim) { return HermitianMatrix(Dense::Zero(dim, dim)); }

  static HermitianMatrix diagonal(const std::vector<Real>& values) {
    Dense m = Dense::Zero(Index(values.size()), Index(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) m(Index(k), Index(k)) = values[k];
    return from_dense(m);
  }

  Index dim() const { return m_.rows(); }
  const Dense& dense() const { return m_; }
  Scalar operator()(Index r, Index c) const { return m_(r, c); }
  Real trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    return HermitianMatrix(Dense(a.m_ + b.m_));
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    return HermitianMatrix(Dense(a.m_ - b.m_));
  }
  friend HermitianMatrix operator*(Real s, const HermitianMatrix& a) {
    return HermitianMatrix(Dense(s * a.m_));
  }
  friend HermitianMatrix operator*(const HermitianMatrix& a, Real s) { return s * a; }

  HermitianMatrix& operator+=(const HermitianMatrix& other) {
    check_same_dim(*this, other);
    m_ += other.m_;
    return *this;
  }

 private:
  explicit HermitianMatrix(Dense m) : m_(std::move(m)) {}

  static void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) {
      throw Error(ErrorKind::DimMismatch, "dims " + std::to_string(a.dim()) + " and " +
                                              std::to_string(b.dim()));
    }
  }

  Dense m_;
};

template <typename Real>
HermitianMatrix<Real> make_hermitian(const DenseMatrix<Real>& entries) {
  return HermitianMatrix<Real>::from_dense(entries);
}

// Frobenius distance.
template <typename Real>
Real distance(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "distance between unequal dims");
  return (a.dense() - b.dense()).norm();
}

template <typename Real>
bool approx_equal(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b,
                  Real tolerance = Real(tol::kDerived)) {
  return a.dim() == b.dim() && distance(a, b) <= tolerance;
}

template <typename Real = double>
class StateVector {
 public:
  using Dense = DenseVector<Real>;

  static StateVector from_amplitudes(const Dense& amplitudes) {
    check_finite(amplitudes);
    if (std::abs(amplitudes.norm() - Real(1)) > Real(tol::kNormalization)) {
      throw Error(ErrorKind::NotNormalized, "state vector norm differs from 1");
    }
    return StateVector(amplitudes);
  }

  // Rescales to unit norm; a zero vector cannot be normalized.
  static StateVector normalized(const Dense& amplitudes) {
    check_finite(amplitudes);
    const Real n = amplitudes.norm();
    if (n <= Real(tol::kNormalization)) {
      throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
    }
    return StateVector(Dense(amplitudes / n));
  }

  static StateVector basis(Index dim, Index k) {
    Dense v = Dense::Zero(dim);
    v(k) = Real(1);
    return StateVector(v);
  }

  Index dim() const { return v_.size(); }
  const Dense& amplitudes() const { return v_; }
  std::complex<Real> operator[](Index k) const { return v_(k); }

 private:
  explicit StateVector(Dense v) : v_(std::move(v)) {}

  static void check_finite(const Dense& v) {
    if (v.size() < 1) throw Error(ErrorKind::NotNormalized, "empty state vector");
    if (!detail::all_finite(v)) throw Error(ErrorKind::NonFinite, "amplitude is NaN or Inf");
  }

  Dense v_;
};

// <a|b>
template <typename Real>
std::complex<Real> inner(const StateVector<Real>& a, const StateVector<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "inner product of unequal dims");
  return a.amplitudes().dot(b.amplitudes());
}

template <typename Real>
StateVector<Real> tensor(const StateVector<Real>& a, const StateVector<Real>& b) {
  const DenseMatrix<Real> k = detail::kron<Real>(a.amplitudes(), b.amplitudes());
  return StateVector<Real>::normalized(k.col(0));
}

template <typename Real>
HermitianMatrix<Real> projector_from_vector(const StateVector<Real>& v) {
  const auto& a = v.amplitudes();
  return HermitianMatrix<Real>::from_dense(a * a.adjoint(), Real(tol::kDerived));
}

// tr(AB) for Hermitian A, B; the imaginary part vanishes up to rounding.
template <typename Real>
Real trace_product(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimMismatch, "trace_product of dims " + std::to_string(a.dim()) +
                                            " and " + std::to_string(b.dim()));
  }
  const std::complex<Real> t = a.dense().cwiseProduct(b.dense().transpose()).sum();
  if (std::abs(t.imag()) > Real(tol::kHermitianInput) * std::max(Real(1), std::abs(t.real()))) {
    throw Error(ErrorKind::NotHermitian, "trace of a Hermitian product has an imaginary part");
  }
  return t.real();
}

// Kronecker product, first factor as the slow index.
template <typename Real>
HermitianMatrix<Real> tensor(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  return HermitianMatrix<Real>::from_dense(detail::kron<Real>(a.dense(), b.dense()),
                                           Real(tol::kDerived));
}

enum class Factor { First, Second };

struct FactorDims {
  Index first;
  Index second;
  friend bool operator==(const FactorDims&, const FactorDims&) = default;
};

// Traces out the factor that is not kept.
template <typename Real>
HermitianMatrix<Real> partial_trace(const HermitianMatrix<Real>& m, FactorDims dims, Factor keep) {
  if (dims.first < 1 || dims.second < 1 || dims.first * dims.second != m.dim()) {
    throw Error(ErrorKind::DimFactorMismatch,
                "factor dims " + std::to_string(dims.first) + "x" + std::to_string(dims.second) +
                    " do not multiply to " + std::to_string(m.dim()));
  }
  const auto& d = m.dense();
  const Index n1 = dims.first;
  const Index n2 = dims.second;
  DenseMatrix<Real> out;
  if (keep == Factor::First) {
    out = DenseMatrix<Real>::Zero(n1, n1);
    for (Index i = 0; i < n1; ++i)
      for (Index j = 0; j < n1; ++j)
        for (Index k = 0; k < n2; ++k) out(i, j) += d(i * n2 + k, j * n2 + k);
  } else {
    out = DenseMatrix<Real>::Zero(n2, n2);
    for (Index i = 0; i < n2; ++i)
      for (Index j = 0; j < n2; ++j)
        for (Index k = 0; k < n1; ++k) out(i, j) += d(k * n2 + i, k * n2 + j);
  }
  return HermitianMatrix<Real>::from_dense(out, Real(tol::kDerived));
}

template <typename Real = double>
struct SpectralDecomposition {
  std::vector<Real> eigenvalues;  // descending
  std::vector<StateVector<Real>> eigenvectors;

  HermitianMatrix<Real> reassemble() const {
    const Index n = eigenvectors.empty() ? 0 : eigenvectors.front().dim();
    DenseMatrix<Real> m = DenseMatrix<Real>::Zero(n, n);
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
      const auto& v = eigenvectors[k].amplitudes();
      m += eigenvalues[k] * (v * v.adjoint());
    }
    return HermitianMatrix<Real>::from_dense(m, Real(tol::kDerived));
  }
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const DenseMatrix<Real>& a) {
  Real s = 0;
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Modified Gram-Schmidt over columns [begin, end) of v.
template <typename Real>
void orthonormalize_columns(DenseMatrix<Real>& v, Index begin, Index end) {
  for (Index k = begin; k < end; ++k) {
    for (Index j = begin; j < k; ++j) {
      const std::complex<Real> proj = v.col(j).dot(v.col(k));
      v.col(k) -= proj * v.col(j);
    }
    v.col(k).normalize();
  }
}

// First component above the phase tolerance becomes real positive.
template <typename Real>
void fix_phase(DenseVector<Real>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    const Real mag = std::abs(v(i));
    if (mag > Real(tol::kDerived)) {
      v *= std::conj(v(i)) / mag;
      v(i) = std::complex<Real>(v(i).real(), Real(0));
      return;
    }
  }
}

}  // namespace detail

// Cyclic complex Jacobi.  Each rotation zeroes one off-diagonal pair: the
// phase of a(p,q) is first removed by diag(1, e^{-i phi}), leaving a real
// symmetric 2x2 block that an ordinary Givens rotation diagonalizes.
template <typename Real>
SpectralDecomposition<Real> eig_hermitian(const HermitianMatrix<Real>& h) {
  using Dense = DenseMatrix<Real>;
  using Scalar = std::complex<Real>;
  const Index n = h.dim();
  Dense a = h.dense();
  Dense v = Dense::Identity(n, n);

  const Real threshold = Real(tol::kJacobiOffDiagonal) * std::max(Real(1), a.norm());
  int sweeps = 0;
  while (detail::off_diagonal_norm<Real>(a) > threshold) {
    if (sweeps++ == tol::kJacobiMaxSweeps) {
      throw Error(ErrorKind::ConvergenceFailure, "Jacobi iteration exceeded sweep cap");
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const Scalar phase_conj = std::conj(apq) / mag;
        const Real theta =
            Real(0.5) * std::atan2(Real(2) * mag, a(p, p).real() - a(q, q).real());
        const Real c = std::cos(theta);
        const Real s = std::sin(theta);

        // a <- G^H a G, v <- v G with G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]].
        for (Index r = 0; r < n; ++r) {
          const Scalar arp = a(r, p);
          const Scalar arq = a(r, q);
          a(r, p) = c * arp + s * phase_conj * arq;
          a(r, q) = -s * arp + c * phase_conj * arq;
        }
        for (Index r = 0; r < n; ++r) {
          const Scalar apr = a(p, r);
          const Scalar aqr = a(q, r);
          a(p, r) = c * apr + s * std::conj(phase_conj) * aqr;
          a(q, r) = -s * apr + c * std::conj(phase_conj) * aqr;
        }
        a(p, q) = a(q, p) = Scalar(0);
        for (Index r = 0; r < n; ++r) {
          const Scalar vrp = v(r, p);
          const Scalar vrq = v(r, q);
          v(r, p) = c * vrp + s * phase_conj * vrq;
          v(r, q) = -s * vrp + c * phase_conj * vrq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() > a(y, y).real(); });

  Dense sorted(n, n);
  std::vector<Real> values;
  for (Index k = 0; k < n; ++k) {
    sorted.col(k) = v.col(order[std::size_t(k)]);
    values.push_back(a(order[std::size_t(k)], order[std::size_t(k)]).real());
  }

  Index begin = 0;
  for (Index k = 1; k <= n; ++k) {
    if (k == n || values[std::size_t(k - 1)] - values[std::size_t(k)] >= Real(tol::kDegenerateGap)) {
      detail::orthonormalize_columns<Real>(sorted, begin, k);
      begin = k;
    }
  }

  SpectralDecomposition<Real> out;
  out.eigenvalues = std::move(values);
  for (Index k = 0; k < n; ++k) {
    DenseVector<Real> col = sorted.col(k);
    detail::fix_phase<Real>(col);
    out.eigenvectors.push_back(StateVector<Real>::normalized(col));
  }
  return out;
}

template <typename Real = double>
class Unitary {
 public:
  using Dense = DenseMatrix<Real>;

  static Unitary from_dense(const Dense& u, Real tolerance = Real(tol::kStatistical)) {
    if (u.rows() != u.cols() || u.rows() < 1) throw Error(ErrorKind::NonSquare, "unitary must be square");
    if (!detail::all_finite(u)) throw Error(ErrorKind::NonFinite, "unitary has NaN or Inf entries");
    const Dense defect = u.adjoint() * u - Dense::Identity(u.rows(), u.cols());
    if (detail::max_abs(defect) > tolerance) {
      throw Error(ErrorKind::NotUnitary, "U^H U differs from the identity");
    }
    return Unitary(u);
  }

  static Unitary identity(Index dim) { return Unitary(Dense::Identity(dim, dim)); }

  Index dim() const { return u_.rows(); }
  const Dense& dense() const { return u_; }

  friend Unitary operator*(const Unitary& a, const Unitary& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "composing unitaries of unequal dims");
    return Unitary(Dense(a.u_ * b.u_));
  }

  friend Unitary tensor(const Unitary& a, const Unitary& b) {
    return Unitary(detail::kron<Real>(a.u_, b.u_));
  }

 private:
  explicit Unitary(Dense u) : u_(std::move(u)) {}
  Dense u_;
};

// Householder reflection I - 2|w><w| with w along (a - e^{i theta} b), the
// phase chosen so <a|e^{i theta} b> is real and non-negative.  It maps |a>
// to |b> up to a global phase, maps |b> back to |a>, and is the identity on
// the orthocomplement of span{a, b}.
template <typename Real>
Unitary<Real> rotate_to(const StateVector<Real>& from, const StateVector<Real>& to) {
  const std::complex<Real> overlap = inner(from, to);
  const Real mag = std::abs(overlap);
  const std::complex<Real> align =
      mag > Real(0) ? std::conj(overlap) / mag : std::complex<Real>(Real(1));
  const DenseVector<Real> diff = from.amplitudes() - align * to.amplitudes();
  const Real diff_norm = diff.norm();
  const Index n = from.dim();
  if (diff_norm <= Real(tol::kNormalization)) return Unitary<Real>::identity(n);
  const DenseVector<Real> w = diff / diff_norm;
  return Unitary<Real>::from_dense(DenseMatrix<Real>::Identity(n, n) - Real(2) * w * w.adjoint());
}

}  // namespace qgas
