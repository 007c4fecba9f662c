// Copyright 2026 The darwinlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "darwinlab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace darwinlab {

namespace {

// Splits the flat index space of `layout` into the kept and traced parts:
// flat = kept[a] + traced[t].
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

IndexSplit split_indices(const SubsystemLayout &layout, std::span<const std::size_t> keep) {
  const std::size_t n = layout.size();
  std::vector<bool> is_kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n) {
      throw InvalidArgument(fmt::format("subsystem index {} out of range for {} subsystems", k, n));
    }
    if (is_kept[k]) {
      throw InvalidArgument(fmt::format("subsystem index {} listed twice", k));
    }
    is_kept[k] = true;
  }

  std::vector<std::size_t> strides(n, 1);
  for (std::size_t k = n; k-- > 1;) {
    strides[k - 1] = strides[k] * layout.dim(k);
  }

  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> out{0};
    for (std::size_t k = 0; k < n; ++k) {
      if (is_kept[k] != want_kept) {
        continue;
      }
      std::vector<std::size_t> next;
      next.reserve(out.size() * layout.dim(k));
      for (std::size_t base : out) {
        for (std::size_t d = 0; d < layout.dim(k); ++d) {
          next.push_back(base + d * strides[k]);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  return {offsets(true), offsets(false)};
}

double max_hermitian_deviation(const Matrix &m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitize(const Matrix &m) { return (m + m.adjoint()) * 0.5; }

std::vector<std::string> default_labels(std::size_t count) {
  std::vector<std::string> labels(count);
  for (std::size_t s = 0; s < count; ++s) {
    labels[s] = std::to_string(s);
  }
  return labels;
}

} // namespace

// -- SubsystemLayout -----------------------------------------------------------

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_) {
    if (d == 0) {
      throw InvalidArgument("local dimensions must be positive");
    }
  }
}

SubsystemLayout SubsystemLayout::qubits(std::size_t count) {
  return SubsystemLayout(std::vector<std::size_t>(count, 2));
}

std::size_t SubsystemLayout::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

SubsystemLayout SubsystemLayout::select(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> dims;
  dims.reserve(sorted.size());
  for (std::size_t k : sorted) {
    dims.push_back(dims_.at(k));
  }
  return SubsystemLayout(std::move(dims));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout &other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(dims));
}

// -- DensityMatrix --------------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix entries, SubsystemLayout layout)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
  if (entries_.rows() != entries_.cols()) {
    throw InvalidArgument("density matrix must be square");
  }
  if (static_cast<std::size_t>(entries_.rows()) != layout_.total_dim()) {
    throw InvalidArgument(fmt::format("layout dimension {} does not match matrix size {}",
                                      layout_.total_dim(), entries_.rows()));
  }
}

DensityMatrix DensityMatrix::validated(Matrix entries, SubsystemLayout layout) {
  auto result = validate_density_matrix(entries, layout);
  if (!result.ok()) {
    const auto &v = result.violations.front();
    throw InvalidArgument(
        fmt::format("invalid density matrix: {} (deviation {:.3e})", v.invariant, v.deviation));
  }
  return std::move(*result.value);
}

DensityMatrix DensityMatrix::assume_valid(Matrix entries, SubsystemLayout layout) {
  return DensityMatrix(std::move(entries), std::move(layout));
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), std::move(layout));
}

DensityMatrix DensityMatrix::relabel(SubsystemLayout layout) const {
  return DensityMatrix(entries_, std::move(layout));
}

// -- PureStateVector ------------------------------------------------------------

PureStateVector::PureStateVector(Vector amplitudes, SubsystemLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw InvalidArgument(fmt::format("layout dimension {} does not match vector length {}",
                                      layout_.total_dim(), amplitudes_.size()));
  }
}

PureStateVector PureStateVector::validated(Vector amplitudes, SubsystemLayout layout) {
  const double deviation = std::abs(amplitudes.squaredNorm() - 1.0);
  if (deviation > tol::kNorm) {
    throw InvalidArgument(fmt::format("state vector not normalized (deviation {:.3e})", deviation));
  }
  return PureStateVector(std::move(amplitudes), std::move(layout));
}

PureStateVector PureStateVector::normalized(Vector amplitudes, SubsystemLayout layout) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return PureStateVector(std::move(amplitudes), std::move(layout));
}

PureStateVector PureStateVector::basis(std::size_t index, SubsystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  if (static_cast<Eigen::Index>(index) >= d) {
    throw InvalidArgument("basis index out of range");
  }
  Vector v = Vector::Zero(d);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureStateVector(std::move(v), std::move(layout));
}

DensityMatrix PureStateVector::projector() const {
  return DensityMatrix::assume_valid(amplitudes_ * amplitudes_.adjoint(), layout_);
}

// -- Povm -------------------------------------------------------------------

Povm::Povm(std::vector<Matrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {}

Povm Povm::validated(std::vector<Matrix> elements, std::vector<std::string> labels) {
  auto result = validate_povm(elements);
  if (!result.ok()) {
    const auto &v = result.violations.front();
    throw InvalidArgument(
        fmt::format("invalid POVM: {} (deviation {:.3e})", v.invariant, v.deviation));
  }
  if (!labels.empty()) {
    if (labels.size() != elements.size()) {
      throw InvalidArgument("one label per POVM element required");
    }
    result.value->labels_ = std::move(labels);
  }
  return std::move(*result.value);
}

Povm Povm::from_basis(const Matrix &basis, std::vector<std::string> labels) {
  std::vector<Matrix> elements;
  elements.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    elements.emplace_back(basis.col(c) * basis.col(c).adjoint());
  }
  return validated(std::move(elements), std::move(labels));
}

std::size_t Povm::dim() const {
  return elements_.empty() ? 0 : static_cast<std::size_t>(elements_.front().rows());
}

std::size_t Povm::max_rank() const {
  std::size_t rank = 0;
  for (const auto &e : elements_) {
    const RealVector ev = hermitian_eigenvalues(e);
    rank = std::max<std::size_t>(rank, static_cast<std::size_t>((ev.array() > 1e-10).count()));
  }
  return rank;
}

Matrix Povm::sqrt_element(std::size_t s) const {
  const Matrix &e = elements_.at(s);
  const bool rank_one_projector =
      std::abs(e.trace() - 1.0) < 1e-12 && (e * e - e).cwiseAbs().maxCoeff() < 1e-12;
  if (rank_one_projector) {
    return e;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(e));
  RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// -- validation -------------------------------------------------------------

Validated<DensityMatrix> validate_density_matrix(const Matrix &m, const SubsystemLayout &layout) {
  Validated<DensityMatrix> out;
  if (m.rows() != m.cols()) {
    out.violations.push_back({"square", static_cast<double>(std::abs(m.rows() - m.cols()))});
    return out;
  }
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    out.violations.push_back(
        {"layout dimension",
         std::abs(static_cast<double>(layout.total_dim()) - static_cast<double>(m.rows()))});
    return out;
  }
  const double herm = max_hermitian_deviation(m);
  if (herm > tol::kHermitian) {
    out.violations.push_back({"hermitian", herm});
  }
  const double trace = std::abs(m.trace() - 1.0);
  if (trace > tol::kTrace) {
    out.violations.push_back({"unit trace", trace});
  }
  const double min_eig = m.rows() > 0 ? hermitian_eigenvalues(m).minCoeff() : 0.0;
  if (min_eig < -tol::kPositivity) {
    out.violations.push_back({"positive semidefinite", -min_eig});
  }
  if (out.violations.empty()) {
    out.value = DensityMatrix::assume_valid(m, layout);
  }
  return out;
}

Validated<Povm> validate_povm(const std::vector<Matrix> &elements) {
  Validated<Povm> out;
  if (elements.empty()) {
    out.violations.push_back({"non-empty", 1.0});
    return out;
  }
  const Eigen::Index d = elements.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto &e : elements) {
    if (e.rows() != d || e.cols() != d) {
      out.violations.push_back({"common square dimension", 1.0});
      return out;
    }
    const double herm = max_hermitian_deviation(e);
    if (herm > tol::kHermitian) {
      out.violations.push_back({"hermitian element", herm});
    }
    const double min_eig = hermitian_eigenvalues(e).minCoeff();
    if (min_eig < -tol::kPositivity) {
      out.violations.push_back({"positive element", -min_eig});
    }
    sum += e;
  }
  const double completeness = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (completeness > tol::kHermitian) {
    out.violations.push_back({"completeness", completeness});
  }
  if (out.violations.empty()) {
    out.value = Povm(elements, default_labels(elements.size()));
  }
  return out;
}

// -- algebra ----------------------------------------------------------------

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b) {
  Matrix out(a.matrix().rows() * b.matrix().rows(), a.matrix().cols() * b.matrix().cols());
  for (Eigen::Index i = 0; i < a.matrix().rows(); ++i) {
    for (Eigen::Index j = 0; j < a.matrix().cols(); ++j) {
      out.block(i * b.matrix().rows(), j * b.matrix().cols(), b.matrix().rows(),
                b.matrix().cols()) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DensityMatrix::assume_valid(std::move(out), a.layout().concat(b.layout()));
}

PureStateVector tensor_product(const PureStateVector &a, const PureStateVector &b) {
  Vector out(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
        a.amplitudes()(i) * b.amplitudes();
  }
  return PureStateVector::validated(std::move(out), a.layout().concat(b.layout()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw InvalidArgument("partial trace needs at least one kept subsystem");
  }
  const IndexSplit split = split_indices(rho.layout(), keep);
  const auto dk = static_cast<Eigen::Index>(split.kept.size());
  const Matrix &m = rho.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::size_t t : split.traced) {
        acc += m(static_cast<Eigen::Index>(split.kept[a] + t),
                 static_cast<Eigen::Index>(split.kept[b] + t));
      }
      out(a, b) = acc;
    }
  }
  return DensityMatrix::assume_valid(std::move(out), rho.layout().select(keep));
}

Matrix bipartite_reshape(const Vector &amplitudes, const SubsystemLayout &layout,
                         std::span<const std::size_t> keep) {
  if (static_cast<std::size_t>(amplitudes.size()) != layout.total_dim()) {
    throw InvalidArgument("vector length does not match layout");
  }
  const IndexSplit split = split_indices(layout, keep);
  Matrix out(static_cast<Eigen::Index>(split.kept.size()),
             static_cast<Eigen::Index>(split.traced.size()));
  for (std::size_t a = 0; a < split.kept.size(); ++a) {
    for (std::size_t t = 0; t < split.traced.size(); ++t) {
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          amplitudes(static_cast<Eigen::Index>(split.kept[a] + split.traced[t]));
    }
  }
  return out;
}

Vector apply_local(const Matrix &op, const Vector &amplitudes, const SubsystemLayout &layout,
                   std::size_t index) {
  const std::size_t keep[] = {index};
  const IndexSplit split = split_indices(layout, keep);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != split.kept.size()) {
    throw InvalidArgument("local operator dimension mismatch");
  }
  Vector out = Vector::Zero(amplitudes.size());
  for (std::size_t t : split.traced) {
    for (std::size_t a = 0; a < split.kept.size(); ++a) {
      Complex acc = 0.0;
      for (std::size_t b = 0; b < split.kept.size(); ++b) {
        acc += op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
               amplitudes(static_cast<Eigen::Index>(split.kept[b] + t));
      }
      out(static_cast<Eigen::Index>(split.kept[a] + t)) = acc;
    }
  }
  return out;
}

Matrix conjugate_local(const Matrix &op, const Matrix &rho, const SubsystemLayout &layout,
                       std::size_t index) {
  const std::size_t keep[] = {index};
  const IndexSplit split = split_indices(layout, keep);
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != split.kept.size()) {
    throw InvalidArgument("local operator dimension mismatch");
  }
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix full = Matrix::Zero(d, d);
  for (std::size_t t : split.traced) {
    for (std::size_t a = 0; a < split.kept.size(); ++a) {
      for (std::size_t b = 0; b < split.kept.size(); ++b) {
        full(static_cast<Eigen::Index>(split.kept[a] + t),
             static_cast<Eigen::Index>(split.kept[b] + t)) =
            op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return full * rho * full.adjoint();
}

// -- spectra and entropies -------------------------------------------------

RealVector hermitian_eigenvalues(const Matrix &m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("eigenvalues need a square matrix");
  }
  if (m.rows() == 0) {
    return RealVector();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entropy_from_spectrum(std::span<const double> eigenvalues, double clamp) {
  double h = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda > clamp) {
      h -= lambda * std::log2(lambda);
    }
  }
  return h;
}

double entropy_from_spectrum(const RealVector &eigenvalues, double clamp) {
  return entropy_from_spectrum(std::span<const double>(eigenvalues.data(),
                                                       static_cast<std::size_t>(eigenvalues.size())),
                               clamp);
}

double von_neumann_entropy(const Matrix &rho) {
  return entropy_from_spectrum(hermitian_eigenvalues(rho));
}

double von_neumann_entropy(const DensityMatrix &rho) { return von_neumann_entropy(rho.matrix()); }

double reduced_entropy(const Vector &amplitudes, const SubsystemLayout &layout,
                       std::span<const std::size_t> keep) {
  const double norm2 = amplitudes.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw InvalidArgument("reduced entropy of a zero vector");
  }
  const Matrix m = bipartite_reshape(amplitudes, layout, keep) / std::sqrt(norm2);
  // Nonzero spectra of M M^dagger and M^dagger M coincide.
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  return von_neumann_entropy(gram);
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (x < -tol::kProbability || x > 1.0 + tol::kProbability || !std::isfinite(x)) {
      throw InvalidArgument(fmt::format("probability {} outside [0, 1]", x));
    }
    total += std::clamp(x, 0.0, 1.0);
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw InvalidArgument(fmt::format("probabilities sum to {}", total));
  }
  double h = 0.0;
  for (double x : p) {
    const double q = std::clamp(x, 0.0, 1.0) / total;
    if (q > 0.0) {
      h -= q * std::log2(q);
    }
  }
  return h;
}

double binary_entropy(double p) {
  const double pair[] = {p, 1.0 - p};
  return shannon_entropy(pair);
}

} // namespace darwinlab
