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

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace darwinlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances shared by the state invariants.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kNorm = 1e-12;
inline constexpr double kEigenClamp = 1e-12;
inline constexpr double kProbability = 1e-12;
} // namespace tol

/// Raised when an operand violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered local dimensions of a composite Hilbert space. Subsystem 0 is
/// the most significant factor of the Kronecker index.
class SubsystemLayout {
public:
  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<std::size_t> dims);

  static SubsystemLayout qubits(std::size_t count);

  [[nodiscard]] std::size_t size() const { return dims_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t index) const { return dims_.at(index); }
  [[nodiscard]] const std::vector<std::size_t> &dims() const { return dims_; }
  [[nodiscard]] std::size_t total_dim() const;

  /// Layout of the listed subsystems, in their original order.
  [[nodiscard]] SubsystemLayout select(std::span<const std::size_t> keep) const;
  [[nodiscard]] SubsystemLayout concat(const SubsystemLayout &other) const;

  friend bool operator==(const SubsystemLayout &, const SubsystemLayout &) = default;

private:
  std::vector<std::size_t> dims_;
};

/// One failed invariant together with the deviation that was measured.
struct Violation {
  std::string invariant;
  double deviation = 0.0;
};

/// Outcome of validating raw data against a domain type's invariants.
template <typename T> struct Validated {
  std::optional<T> value;
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return value.has_value(); }
};

class DensityMatrix {
public:
  /// Checks the invariants and throws InvalidArgument on the first failure.
  static DensityMatrix validated(Matrix entries, SubsystemLayout layout);
  /// Shape checks only. For operators produced by trusted constructions.
  static DensityMatrix assume_valid(Matrix entries, SubsystemLayout layout);
  static DensityMatrix maximally_mixed(SubsystemLayout layout);

  [[nodiscard]] const Matrix &matrix() const { return entries_; }
  [[nodiscard]] const SubsystemLayout &layout() const { return layout_; }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  [[nodiscard]] Complex trace() const { return entries_.trace(); }

  /// Same operator, new subsystem labelling with equal total dimension.
  [[nodiscard]] DensityMatrix relabel(SubsystemLayout layout) const;

private:
  DensityMatrix(Matrix entries, SubsystemLayout layout);

  Matrix entries_;
  SubsystemLayout layout_;
};

class PureStateVector {
public:
  static PureStateVector validated(Vector amplitudes, SubsystemLayout layout);
  /// Scales a non-zero vector to unit norm.
  static PureStateVector normalized(Vector amplitudes, SubsystemLayout layout);
  /// Computational basis state |index>.
  static PureStateVector basis(std::size_t index, SubsystemLayout layout);

  [[nodiscard]] const Vector &amplitudes() const { return amplitudes_; }
  [[nodiscard]] const SubsystemLayout &layout() const { return layout_; }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

  [[nodiscard]] DensityMatrix projector() const;

private:
  PureStateVector(Vector amplitudes, SubsystemLayout layout);

  Vector amplitudes_;
  SubsystemLayout layout_;
};

/// Positive operator-valued measure on a single subsystem.
class Povm {
public:
  static Povm validated(std::vector<Matrix> elements, std::vector<std::string> labels = {});
  /// Projective measurement onto the columns of a unitary.
  static Povm from_basis(const Matrix &basis, std::vector<std::string> labels = {});

  [[nodiscard]] std::size_t size() const { return elements_.size(); }
  [[nodiscard]] std::size_t dim() const;
  [[nodiscard]] const Matrix &element(std::size_t s) const { return elements_.at(s); }
  [[nodiscard]] const std::vector<Matrix> &elements() const { return elements_; }
  [[nodiscard]] const std::string &label(std::size_t s) const { return labels_.at(s); }
  /// Largest numerical rank among the elements.
  [[nodiscard]] std::size_t max_rank() const;
  /// Square root of element s. Rank-one projectors are returned as is.
  [[nodiscard]] Matrix sqrt_element(std::size_t s) const;

private:
  Povm(std::vector<Matrix> elements, std::vector<std::string> labels);
  friend Validated<Povm> validate_povm(const std::vector<Matrix> &elements);

  std::vector<Matrix> elements_;
  std::vector<std::string> labels_;
};

// -- validation ---------------------------------------------------------------

Validated<DensityMatrix> validate_density_matrix(const Matrix &m, const SubsystemLayout &layout);
Validated<Povm> validate_povm(const std::vector<Matrix> &elements);

// -- algebra --------------------------------------------------------------------

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b);
PureStateVector tensor_product(const PureStateVector &a, const PureStateVector &b);

/// Reduced state on `keep`, result subsystems in original order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep);

/// Reshapes the amplitudes into a (dim keep) x (dim rest) matrix.
Matrix bipartite_reshape(const Vector &amplitudes, const SubsystemLayout &layout,
                         std::span<const std::size_t> keep);

/// Applies `op` to subsystem `index` of a pure vector (no renormalization).
Vector apply_local(const Matrix &op, const Vector &amplitudes, const SubsystemLayout &layout,
                   std::size_t index);

/// Applies `op` to subsystem `index` of a density operator: (op) rho (op)^dagger.
Matrix conjugate_local(const Matrix &op, const Matrix &rho, const SubsystemLayout &layout,
                       std::size_t index);

// -- spectra and entropies -------------------------------------------------

/// Eigenvalues of (M + M^dagger)/2, ascending.
RealVector hermitian_eigenvalues(const Matrix &m);

/// -sum lambda log2 lambda over entries above `clamp`.
double entropy_from_spectrum(std::span<const double> eigenvalues,
                             double clamp = tol::kEigenClamp);
double entropy_from_spectrum(const RealVector &eigenvalues, double clamp = tol::kEigenClamp);

double von_neumann_entropy(const DensityMatrix &rho);
/// Entropy of a square matrix that is PSD with unit trace up to rounding.
double von_neumann_entropy(const Matrix &rho);

/// Entropy of the reduced state on `keep` of a (possibly unnormalized) pure
/// vector, computed from the smaller Gram matrix of its bipartite reshape.
/// The vector is normalized first.
double reduced_entropy(const Vector &amplitudes, const SubsystemLayout &layout,
                       std::span<const std::size_t> keep);

double shannon_entropy(std::span<const double> p);
double binary_entropy(double p);

} // namespace darwinlab
