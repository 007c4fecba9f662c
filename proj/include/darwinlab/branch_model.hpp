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

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "darwinlab/info_measures.hpp"
#include "darwinlab/qstate.hpp"

// A qubit system branching against a register of environment qubits:
//
//   |Psi> = sum_s c_s |s> (x)_k |psi_{k|s}>,
//   |psi_{k|s}> = cos(T_k/2)|0> + (-1)^s sin(T_k/2)|1>,
//
// so that <psi_{k|0}|psi_{k|1}> = cos T_k. Environment qubits are indexed
// 0..E-1; in the dense state vector qubit k is subsystem k+1.

namespace darwinlab {

/// Largest environment the dense oracle will build.
inline constexpr std::size_t kDenseEnvCap = 16;
/// Largest fragment (in qubits) the dense oracle will diagonalize.
inline constexpr std::size_t kDenseFragmentCap = 12;

/// Raised when a dense evaluation is requested beyond its size caps.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BranchModel {
public:
  /// Amplitudes must satisfy |c_0|^2 + |c_1|^2 = 1 to 1e-12.
  static BranchModel create(std::array<Complex, 2> amplitudes, std::vector<double> actions);
  /// Real amplitudes (sqrt(p0), sqrt(1 - p0)) and per-qubit actions.
  static BranchModel with_actions(std::vector<double> actions, double p0 = 0.5);
  static BranchModel uniform(std::size_t env_size, double action, double p0 = 0.5);

  [[nodiscard]] const std::array<Complex, 2> &amplitudes() const { return amplitudes_; }
  [[nodiscard]] std::array<double, 2> pointer_probabilities() const;
  [[nodiscard]] const std::vector<double> &actions() const { return actions_; }
  [[nodiscard]] std::size_t env_size() const { return actions_.size(); }
  /// True when every environment qubit has the same action.
  [[nodiscard]] bool uniform_actions() const;

private:
  BranchModel(std::array<Complex, 2> amplitudes, std::vector<double> actions);

  std::array<Complex, 2> amplitudes_;
  std::vector<double> actions_;
};

/// |+> = cos(mu/2)|0> + i sin(mu/2)|1>,  |-> = sin(mu/2)|0> - i cos(mu/2)|1>.
struct RotatedBasis {
  double mu = 0.0;

  /// Columns |+>, |->.
  [[nodiscard]] Matrix basis() const;
};

Povm make_rotated_povm(double mu);
/// Identity columns: the sigma_z eigenbasis.
Matrix pointer_basis();

/// prod_{k in subset} cos T_k; 1 for the empty subset.
Complex overlap(const BranchModel &model, std::span<const std::size_t> subset);

/// Environment qubits not in `subset`, ascending.
std::vector<std::size_t> complement(const BranchModel &model, std::span<const std::size_t> subset);

/// Every entropy the rank-2 evaluation produces, for callers that need more
/// than the InfoPoint.
struct BranchBreakdown {
  double h_system = 0.0;
  double h_fragment = 0.0;
  double h_system_fragment = 0.0;
  /// sum_s p_s H(rho_{F|s})
  double h_conditional = 0.0;
  /// Shannon entropy of the outcome distribution on rho_S.
  double h_outcomes = 0.0;
  Complex overlap_fragment = 1.0;
  Complex overlap_rest = 1.0;
  InfoPoint point;
};

/// Exact evaluation through 2x2 Gram matrices; cost is O(E) for the overlap
/// products and O(1) after that.
BranchBreakdown fast_breakdown(const BranchModel &model, std::span<const std::size_t> subset,
                               const Povm &povm);
InfoPoint fast_info_point(const BranchModel &model, std::span<const std::size_t> subset,
                          const Povm &povm);

/// Full 2^(E+1) amplitude vector. Throws CapExceeded for E > 16.
PureStateVector dense_state(const BranchModel &model);

/// Brute-force evaluation from the dense state vector.
InfoPoint dense_info_point(const BranchModel &model, std::span<const std::size_t> subset,
                           const Povm &povm);

/// Minimal error probability for telling apart two equiprobable pure
/// states with overlap `overlap`.
double helstrom_error(Complex overlap);

/// 8 sqrt(eps) log2(outcomes) + 2 H(2 sqrt(eps)). H saturates at 1 once its
/// argument reaches 1/2.
double alicki_fannes_bound(double eps, std::size_t outcomes);

} // namespace darwinlab
