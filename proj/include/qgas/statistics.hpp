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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgas/linalg.hpp"

namespace qgas {

namespace detail {

template <typename Real>
Real min_eigenvalue(const HermitianMatrix<Real>& m) {
  return eig_hermitian(m).eigenvalues.back();
}

template <typename Real>
bool is_psd(const HermitianMatrix<Real>& m) {
  return min_eigenvalue(m) >= -Real(tol::kStatistical);
}

template <typename Real>
Real max_abs_diff(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  return max_abs(DenseMatrix<Real>(a.dense() - b.dense()));
}

}  // namespace detail

template <typename Real = double>
class DensityMatrix {
 public:
  static DensityMatrix from(const HermitianMatrix<Real>& m) {
    if (std::abs(m.trace() - Real(1)) > Real(tol::kStatistical)) {
      throw Error(ErrorKind::NotUnitTrace, "density matrix trace is " + std::to_string(double(m.trace())));
    }
    if (!detail::is_psd(m)) throw Error(ErrorKind::NotPositive, "density matrix has a negative eigenvalue");
    return DensityMatrix(m);
  }

  static DensityMatrix pure(const StateVector<Real>& v) { return DensityMatrix(projector_from_vector(v)); }

  static DensityMatrix maximally_mixed(Index dim) {
    return DensityMatrix(HermitianMatrix<Real>::identity(dim) * (Real(1) / Real(dim)));
  }

  Index dim() const { return m_.dim(); }
  const HermitianMatrix<Real>& matrix() const { return m_; }

 private:
  explicit DensityMatrix(HermitianMatrix<Real> m) : m_(std::move(m)) {}
  HermitianMatrix<Real> m_;
};

// Convex combination of density matrices.
template <typename Real>
DensityMatrix<Real> mixture(const std::vector<Real>& weights, const std::vector<DensityMatrix<Real>>& states) {
  if (weights.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::NotConvex, "mixture needs one weight per state");
  }
  Real total = 0;
  for (Real w : weights) {
    if (!(w >= Real(0))) throw Error(ErrorKind::NotConvex, "mixture weight is negative");
    total += w;
  }
  if (std::abs(total - Real(1)) > Real(tol::kHermitianInput)) {
    throw Error(ErrorKind::NotConvex, "mixture weights do not sum to 1");
  }
  auto sum = HermitianMatrix<Real>::zero(states.front().dim());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != sum.dim()) throw Error(ErrorKind::DimMismatch, "mixture of unequal dims");
    sum += weights[k] * states[k].matrix();
  }
  return DensityMatrix<Real>::from(sum);
}

template <typename Real = double>
struct LabeledOperator {
  std::string label;
  HermitianMatrix<Real> matrix;
};

namespace detail {

template <typename Real>
void check_labeled_family(const std::vector<LabeledOperator<Real>>& elements, ErrorKind kind) {
  if (elements.empty()) throw Error(kind, "no elements");
  std::set<std::string> labels;
  for (const auto& e : elements) {
    if (e.matrix.dim() != elements.front().matrix.dim()) {
      throw Error(ErrorKind::DimMismatch, "elements have unequal dims");
    }
    if (!labels.insert(e.label).second) throw Error(kind, "duplicate label '" + e.label + "'");
  }
}

template <typename Real>
HermitianMatrix<Real> sum_of(const std::vector<LabeledOperator<Real>>& elements) {
  auto sum = HermitianMatrix<Real>::zero(elements.front().matrix.dim());
  for (const auto& e : elements) sum += e.matrix;
  return sum;
}

}  // namespace detail

template <typename Real = double>
class Povm {
 public:
  static Povm from(std::vector<LabeledOperator<Real>> elements) {
    detail::check_labeled_family(elements, ErrorKind::InvalidPovm);
    for (const auto& e : elements) {
      if (!detail::is_psd(e.matrix)) {
        throw Error(ErrorKind::NotPositive, "POVM element '" + e.label + "' is not positive");
      }
    }
    const auto sum = detail::sum_of(elements);
    if (detail::max_abs_diff(sum, HermitianMatrix<Real>::identity(sum.dim())) > Real(tol::kStatistical)) {
      throw Error(ErrorKind::InvalidPovm, "POVM elements do not sum to the identity");
    }
    return Povm(std::move(elements));
  }

  Index dim() const { return elements_.front().matrix.dim(); }
  const std::vector<LabeledOperator<Real>>& elements() const { return elements_; }

  const HermitianMatrix<Real>& element(const std::string& label) const {
    for (const auto& e : elements_)
      if (e.label == label) return e.matrix;
    throw Error(ErrorKind::InvalidPartition, "unknown POVM label '" + label + "'");
  }

 private:
  explicit Povm(std::vector<LabeledOperator<Real>> e) : elements_(std::move(e)) {}
  std::vector<LabeledOperator<Real>> elements_;
};

template <typename Real = double>
class ProjectiveInstrument {
 public:
  static ProjectiveInstrument from(std::vector<LabeledOperator<Real>> projectors) {
    detail::check_labeled_family(projectors, ErrorKind::InvalidInstrument);
    const Real eps = Real(tol::kStatistical);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
      const auto& p = projectors[i].matrix.dense();
      if (detail::max_abs(DenseMatrix<Real>(p * p - p)) > eps) {
        throw Error(ErrorKind::InvalidInstrument, "'" + projectors[i].label + "' is not idempotent");
      }
      for (std::size_t j = i + 1; j < projectors.size(); ++j) {
        if (detail::max_abs(DenseMatrix<Real>(p * projectors[j].matrix.dense())) > eps) {
          throw Error(ErrorKind::InvalidInstrument, "'" + projectors[i].label + "' and '" +
                                                        projectors[j].label + "' are not orthogonal");
        }
      }
    }
    const auto sum = detail::sum_of(projectors);
    if (detail::max_abs_diff(sum, HermitianMatrix<Real>::identity(sum.dim())) > eps) {
      throw Error(ErrorKind::InvalidInstrument, "projectors do not sum to the identity");
    }
    return ProjectiveInstrument(std::move(projectors));
  }

  Index dim() const { return projectors_.front().matrix.dim(); }
  const std::vector<LabeledOperator<Real>>& projectors() const { return projectors_; }
  Povm<Real> as_povm() const { return Povm<Real>::from(projectors_); }

 private:
  explicit ProjectiveInstrument(std::vector<LabeledOperator<Real>> p) : projectors_(std::move(p)) {}
  std::vector<LabeledOperator<Real>> projectors_;
};

// Pi_A (x) I_n for every projector of `inst`, or I_n (x) Pi_A when the
// identity is the first factor.  Labels are carried over unchanged.
template <typename Real>
ProjectiveInstrument<Real> extend_with_identity(const ProjectiveInstrument<Real>& inst, Index identity_dim,
                                                Factor instrument_factor) {
  std::vector<LabeledOperator<Real>> out;
  const auto id = HermitianMatrix<Real>::identity(identity_dim);
  for (const auto& p : inst.projectors()) {
    out.push_back({p.label, instrument_factor == Factor::First ? tensor(p.matrix, id) : tensor(id, p.matrix)});
  }
  return ProjectiveInstrument<Real>::from(std::move(out));
}

template <typename Real = double>
struct Outcome {
  std::string label;
  Real probability;
  std::optional<DensityMatrix<Real>> post_state;  // absent for negligible outcomes
};

template <typename Real = double>
using OutcomeDistribution = std::vector<Outcome<Real>>;

template <typename Real>
Real outcome_probability(const DensityMatrix<Real>& rho, const HermitianMatrix<Real>& element) {
  if (rho.dim() != element.dim()) throw Error(ErrorKind::DimMismatch, "state and POVM element dims differ");
  const Real p = trace_product(rho.matrix(), element);
  if (p < -Real(tol::kStatistical) || p > Real(1) + Real(tol::kStatistical)) {
    throw Error(ErrorKind::NotPositive, "element is not a POVM effect for this state (p = " +
                                            std::to_string(double(p)) + ")");
  }
  return std::clamp(p, Real(0), Real(1));
}

// rho -> Pi rho Pi / tr(Pi rho Pi) for every outcome.
template <typename Real>
OutcomeDistribution<Real> apply_instrument(const DensityMatrix<Real>& rho, const ProjectiveInstrument<Real>& inst) {
  if (rho.dim() != inst.dim()) throw Error(ErrorKind::DimMismatch, "state and instrument dims differ");
  OutcomeDistribution<Real> out;
  for (const auto& proj : inst.projectors()) {
    const auto& p = proj.matrix.dense();
    const DenseMatrix<Real> updated = p * rho.matrix().dense() * p;
    const Real prob = std::clamp(updated.trace().real(), Real(0), Real(1));
    Outcome<Real> o{proj.label, prob, std::nullopt};
    if (prob >= Real(tol::kNegligibleProbability)) {
      const DenseMatrix<Real> normalized = updated / prob;
      o.post_state = DensityMatrix<Real>::from(HermitianMatrix<Real>::from_dense(normalized, Real(tol::kDerived)));
    }
    out.push_back(std::move(o));
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> apply_unitary(const DensityMatrix<Real>& rho, const Unitary<Real>& u) {
  if (rho.dim() != u.dim()) throw Error(ErrorKind::DimMismatch, "state and unitary dims differ");
  const DenseMatrix<Real> m = u.dense() * rho.matrix().dense() * u.dense().adjoint();
  return DensityMatrix<Real>::from(HermitianMatrix<Real>::from_dense(m, Real(tol::kDerived)));
}

template <typename Real = double>
struct Orthogonality {
  bool orthogonal;
  Real overlap;  // tr(phi psi)
};

template <typename Real>
Orthogonality<Real> are_orthogonal(const DensityMatrix<Real>& phi, const DensityMatrix<Real>& psi) {
  const Real overlap = trace_product(phi.matrix(), psi.matrix());
  return {overlap <= Real(tol::kStatistical), overlap};
}

// The labeled split {E_i} | {F_j} of a POVM: the E side must vanish on phi and
// fire on psi, so observing it certifies psi; symmetrically for the F side.
struct BinaryGrouping {
  std::vector<std::string> certify_psi;
  std::vector<std::string> certify_phi;
};

struct OutcomeGroup {
  std::string label;
  std::vector<std::string> members;
};

using LabelPartition = std::vector<OutcomeGroup>;

inline LabelPartition to_partition(const BinaryGrouping& g) {
  return {{"E", g.certify_psi}, {"F", g.certify_phi}};
}

namespace detail {

template <typename Real>
void check_partition(const Povm<Real>& povm, const LabelPartition& partition) {
  std::map<std::string, int> seen;
  for (const auto& e : povm.elements()) seen[e.label] = 0;
  std::set<std::string> group_labels;
  for (const auto& g : partition) {
    if (g.members.empty()) throw Error(ErrorKind::InvalidPartition, "group '" + g.label + "' is empty");
    if (!group_labels.insert(g.label).second) {
      throw Error(ErrorKind::InvalidPartition, "duplicate group label '" + g.label + "'");
    }
    for (const auto& m : g.members) {
      auto it = seen.find(m);
      if (it == seen.end()) throw Error(ErrorKind::InvalidPartition, "unknown POVM label '" + m + "'");
      if (++it->second > 1) throw Error(ErrorKind::InvalidPartition, "label '" + m + "' appears twice");
    }
  }
  for (const auto& [label, count] : seen) {
    if (count == 0) throw Error(ErrorKind::InvalidPartition, "label '" + label + "' is not grouped");
  }
}

}  // namespace detail

template <typename Real>
bool is_one_shot_distinguishing(const Povm<Real>& povm, const BinaryGrouping& grouping,
                                const DensityMatrix<Real>& phi, const DensityMatrix<Real>& psi) {
  detail::check_partition(povm, to_partition(grouping));
  if (phi.dim() != povm.dim() || psi.dim() != povm.dim()) {
    throw Error(ErrorKind::DimMismatch, "states and POVM dims differ");
  }
  const Real eps = Real(tol::kStatistical);
  auto side_ok = [&](const std::vector<std::string>& labels, const DensityMatrix<Real>& silent,
                     const DensityMatrix<Real>& firing) {
    return std::all_of(labels.begin(), labels.end(), [&](const std::string& l) {
      const auto& e = povm.element(l);
      return outcome_probability(silent, e) <= eps && outcome_probability(firing, e) > eps;
    });
  };
  return side_ok(grouping.certify_psi, phi, psi) && side_ok(grouping.certify_phi, psi, phi);
}

template <typename Real>
Povm<Real> coarse_grain(const Povm<Real>& povm, const LabelPartition& partition) {
  detail::check_partition(povm, partition);
  std::vector<LabeledOperator<Real>> out;
  for (const auto& g : partition) {
    auto sum = HermitianMatrix<Real>::zero(povm.dim());
    for (const auto& m : g.members) sum += povm.element(m);
    out.push_back({g.label, sum});
  }
  return Povm<Real>::from(std::move(out));
}

// Projector onto the eigenvectors with eigenvalue above the statistical tolerance.
template <typename Real>
HermitianMatrix<Real> support_projector(const DensityMatrix<Real>& rho) {
  const auto spec = eig_hermitian(rho.matrix());
  auto p = HermitianMatrix<Real>::zero(rho.dim());
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues[k] > Real(tol::kStatistical)) p += projector_from_vector(spec.eigenvectors[k]);
  }
  return p;
}

template <typename Real = double>
struct DistinguishingMeasurement {
  Povm<Real> povm;  // {E, F}: E projects onto the support of phi, F = I - E
  BinaryGrouping grouping;
};

template <typename Real>
DistinguishingMeasurement<Real> distinguishing_povm_from_orthogonal(const DensityMatrix<Real>& phi,
                                                                    const DensityMatrix<Real>& psi) {
  const auto ortho = are_orthogonal(phi, psi);
  if (!ortho.orthogonal) {
    throw Error(ErrorKind::NotOrthogonal, "tr(phi psi) = " + std::to_string(double(ortho.overlap)));
  }
  const auto e = support_projector(phi);
  auto povm = Povm<Real>::from({{"E", e}, {"F", HermitianMatrix<Real>::identity(phi.dim()) - e}});
  return {std::move(povm), BinaryGrouping{{"F"}, {"E"}}};
}

template <typename Real = double>
struct EigenbasisInstrument {
  ProjectiveInstrument<Real> instrument;  // labels "0", "1", ... by descending eigenvalue
  std::vector<Real> eigenvalues;          // one per projector
};

// Projectors onto the eigenspaces of rho; degenerate eigenvalue clusters
// (gap < kDegenerateGap) share one projector.
template <typename Real>
EigenbasisInstrument<Real> eigenbasis_instrument(const DensityMatrix<Real>& rho) {
  const auto spec = eig_hermitian(rho.matrix());
  std::vector<LabeledOperator<Real>> projectors;
  std::vector<Real> values;
  std::size_t k = 0;
  while (k < spec.eigenvalues.size()) {
    auto p = projector_from_vector(spec.eigenvectors[k]);
    const Real head = spec.eigenvalues[k];
    std::size_t j = k + 1;
    while (j < spec.eigenvalues.size() &&
           spec.eigenvalues[j - 1] - spec.eigenvalues[j] < Real(tol::kDegenerateGap)) {
      p += projector_from_vector(spec.eigenvectors[j]);
      ++j;
    }
    values.push_back(head);
    projectors.push_back({std::to_string(projectors.size()), p});
    k = j;
  }
  return {ProjectiveInstrument<Real>::from(std::move(projectors)), std::move(values)};
}

template <typename Real = double>
struct EigenInstrument {
  DensityMatrix<Real> mixture;
  ProjectiveInstrument<Real> instrument;
  std::vector<Real> eigenvalues;
};

template <typename Real>
EigenInstrument<Real> mixture_eigen_instrument(const std::vector<Real>& weights,
                                               const std::vector<DensityMatrix<Real>>& states) {
  auto mix = mixture(weights, states);
  auto eb = eigenbasis_instrument(mix);
  return {std::move(mix), std::move(eb.instrument), std::move(eb.eigenvalues)};
}

template <typename Real = double>
struct ProofStep {
  std::string claim;
  Real residual;
  Real bound;
  bool passed;
};

template <typename Real = double>
struct OrthogonalityProof {
  std::vector<ProofStep<Real>> steps;
  Real overlap;  // tr(phi psi), computed directly
};

namespace detail {

template <typename Real>
struct PositivePart {
  std::vector<Real> weights;
  std::vector<StateVector<Real>> vectors;
};

template <typename Real>
PositivePart<Real> positive_part(const HermitianMatrix<Real>& m) {
  const auto spec = eig_hermitian(m);
  PositivePart<Real> out;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues[k] > Real(tol::kStatistical)) {
      out.weights.push_back(spec.eigenvalues[k]);
      out.vectors.push_back(spec.eigenvectors[k]);
    }
  }
  return out;
}

template <typename Real>
HermitianMatrix<Real> weighted_projectors(const PositivePart<Real>& part, Index dim) {
  auto m = HermitianMatrix<Real>::zero(dim);
  for (std::size_t k = 0; k < part.weights.size(); ++k) m += part.weights[k] * projector_from_vector(part.vectors[k]);
  return m;
}

// Extends an orthonormal family to a basis of C^dim with standard basis vectors.
template <typename Real>
std::vector<StateVector<Real>> complete_basis(const std::vector<StateVector<Real>>& family, Index dim) {
  std::vector<DenseVector<Real>> basis;
  for (const auto& v : family) {
    DenseVector<Real> w = v.amplitudes();
    for (const auto& b : basis) w -= b.dot(w) * b;
    basis.push_back(w.normalized());
  }
  std::vector<StateVector<Real>> added;
  for (Index k = 0; k < dim && Index(basis.size()) < dim; ++k) {
    DenseVector<Real> w = StateVector<Real>::basis(dim, k).amplitudes();
    for (const auto& b : basis) w -= b.dot(w) * b;
    if (w.norm() > Real(0.5)) {
      basis.push_back(w.normalized());
      added.push_back(StateVector<Real>::normalized(basis.back()));
    }
  }
  return added;
}

}  // namespace detail

// Runs the orthogonality argument on concrete data: coarse-grain to {E, F},
// decompose E, phi and psi spectrally, and check every orthogonality fact the
// argument derives.  Throws PreconditionViolated for non-distinguishing input
// and ProofStepFailed when a numerical check does not hold.
template <typename Real>
OrthogonalityProof<Real> verify_orthogonality_theorem(const DensityMatrix<Real>& phi, const DensityMatrix<Real>& psi,
                                                      const Povm<Real>& povm, const BinaryGrouping& grouping) {
  if (!is_one_shot_distinguishing(povm, grouping, phi, psi)) {
    throw Error(ErrorKind::PreconditionViolated, "POVM does not distinguish phi and psi in one shot");
  }
  const Index n = phi.dim();
  const Real eps = Real(tol::kStatistical);
  const Real derived = Real(tol::kDerived);
  OrthogonalityProof<Real> proof;
  auto record = [&](std::string claim, Real residual, Real bound) {
    const bool ok = residual <= bound;
    proof.steps.push_back({std::move(claim), residual, bound, ok});
    if (!ok) {
      throw Error(ErrorKind::ProofStepFailed, proof.steps.back().claim + ": residual " +
                                                  std::to_string(double(residual)) + " > " +
                                                  std::to_string(double(bound)));
    }
  };

  const auto coarse = coarse_grain(povm, to_partition(grouping));
  const auto& e = coarse.element("E");
  const auto& f = coarse.element("F");
  const Real eps_e = eps * Real(grouping.certify_psi.size()) + Real(tol::kHermitianInput);
  const Real eps_f = eps * Real(grouping.certify_phi.size()) + Real(tol::kHermitianInput);
  const Real phi_e = trace_product(phi.matrix(), e);
  const Real psi_f = trace_product(psi.matrix(), f);
  record("tr(phi E) = 0", std::abs(phi_e), eps_e);
  record("tr(psi E) = 1", std::abs(trace_product(psi.matrix(), e) - Real(1)), eps_f);
  record("tr(psi F) = 0", std::abs(psi_f), eps_f);
  record("tr(phi F) = 1", std::abs(trace_product(phi.matrix(), f) - Real(1)), eps_e);

  const auto e_part = detail::positive_part(e);
  const auto phi_part = detail::positive_part(phi.matrix());
  const auto psi_part = detail::positive_part(psi.matrix());
  Real e_range = 0;
  for (Real w : e_part.weights) e_range = std::max(e_range, w - Real(1));
  record("E = sum_i e_i |i><i| with 0 < e_i <= 1",
         std::max(distance(detail::weighted_projectors(e_part, n), e), e_range), derived);
  Real phi_sum = 0;
  for (Real w : phi_part.weights) phi_sum += w;
  record("phi = sum_k phi_k |k><k|, sum phi_k = 1",
         std::max(distance(detail::weighted_projectors(phi_part, n), phi.matrix()), std::abs(phi_sum - Real(1))),
         derived);

  // tr(phi E) = sum_{k,i} phi_k e_i |<k|i>|^2; each term is non-negative, so
  // each |<k|i>|^2 is at most tr(phi E) / (phi_k e_i).
  Real expansion = 0;
  Real max_ki = 0;
  Real worst_ratio = 0;
  for (std::size_t k = 0; k < phi_part.weights.size(); ++k) {
    for (std::size_t i = 0; i < e_part.weights.size(); ++i) {
      const Real o2 = std::norm(inner(phi_part.vectors[k], e_part.vectors[i]));
      expansion += phi_part.weights[k] * e_part.weights[i] * o2;
      max_ki = std::max(max_ki, std::sqrt(o2));
      worst_ratio = std::max(worst_ratio, o2 * phi_part.weights[k] * e_part.weights[i] / eps_e);
    }
  }
  record("tr(phi E) = sum phi_k e_i |<k|i>|^2", std::abs(expansion - phi_e), derived);
  record("<k|i> = 0 for all k, i", worst_ratio, Real(1));

  // Basis {|i>, |k>, |j'>} and F = I - E written in it.
  std::vector<StateVector<Real>> family = e_part.vectors;
  family.insert(family.end(), phi_part.vectors.begin(), phi_part.vectors.end());
  const auto extra = detail::complete_basis(family, n);
  const Real slack = derived + Real(4) * max_ki;
  auto completeness = HermitianMatrix<Real>::zero(n);
  for (const auto& v : family) completeness += projector_from_vector(v);
  for (const auto& v : extra) completeness += projector_from_vector(v);
  record("sum |i><i| + sum |k><k| + sum |j'><j'| = I",
         distance(completeness, HermitianMatrix<Real>::identity(n)), slack);
  auto f_expanded = HermitianMatrix<Real>::zero(n);
  for (std::size_t i = 0; i < e_part.weights.size(); ++i)
    f_expanded += (Real(1) - e_part.weights[i]) * projector_from_vector(e_part.vectors[i]);
  for (const auto& v : phi_part.vectors) f_expanded += projector_from_vector(v);
  for (const auto& v : extra) f_expanded += projector_from_vector(v);
  record("F = sum (1 - e_i)|i><i| + sum |k><k| + sum |j'><j'|", distance(f_expanded, f), slack);

  Real psi_sum = 0;
  for (Real w : psi_part.weights) psi_sum += w;
  record("psi = sum_l psi_l |l><l|, sum psi_l = 1",
         std::max(distance(detail::weighted_projectors(psi_part, n), psi.matrix()), std::abs(psi_sum - Real(1))),
         derived);

  // tr(psi F) splits into three non-negative sums; the middle one bounds
  // psi_l |<l|k>|^2.
  Real sum_i = 0, sum_k = 0, sum_j = 0;
  Real worst_lk = 0;
  for (std::size_t l = 0; l < psi_part.weights.size(); ++l) {
    const auto& vl = psi_part.vectors[l];
    const Real wl = psi_part.weights[l];
    for (std::size_t i = 0; i < e_part.weights.size(); ++i)
      sum_i += wl * (Real(1) - e_part.weights[i]) * std::norm(inner(vl, e_part.vectors[i]));
    for (const auto& vk : phi_part.vectors) {
      const Real o2 = std::norm(inner(vl, vk));
      sum_k += wl * o2;
      worst_lk = std::max(worst_lk, wl * o2 / eps_f);
    }
    for (const auto& vj : extra) sum_j += wl * std::norm(inner(vl, vj));
  }
  record("tr(psi F) = three non-negative sums",
         std::max({std::abs(sum_i + sum_k + sum_j - psi_f), -std::min({sum_i, sum_k, sum_j, Real(0)})}),
         slack);
  record("<l|k> = 0 for all l, k", worst_lk, Real(1));

  Real phi_psi = 0;
  for (std::size_t k = 0; k < phi_part.weights.size(); ++k)
    for (std::size_t l = 0; l < psi_part.weights.size(); ++l)
      phi_psi += phi_part.weights[k] * psi_part.weights[l] * std::norm(inner(psi_part.vectors[l], phi_part.vectors[k]));
  proof.overlap = trace_product(phi.matrix(), psi.matrix());
  record("tr(phi psi) = sum phi_k psi_l |<l|k>|^2 = 0", std::max(phi_psi, std::abs(phi_psi - proof.overlap)),
         derived);
  return proof;
}

}  // namespace qgas
