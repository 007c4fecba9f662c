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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "darwinlab/qstate.hpp"

// Correlation measures between a system S and a fragment F.
//
// Operators passed as `rho_sf` carry S as subsystem 0; every other subsystem
// of the layout belongs to F. Entropies are in bits.

namespace darwinlab {

/// Outcomes below this probability carry no conditional state.
inline constexpr double kNegligibleOutcome = 1e-14;
/// Slack allowed for negative discord before a diagnostic is raised.
inline constexpr double kDiscordSlack = 1e-9;

/// Raised when a computed quantity leaves its mathematically allowed range
/// by more than numerical slack.
class NumericalDiagnostic : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ConditionalOutcome {
  double probability = 0.0;
  /// Empty for negligible outcomes.
  std::optional<DensityMatrix> state;
};

struct ConditionalEnsemble {
  std::vector<ConditionalOutcome> outcomes;

  /// sum_s p_s rho_{F|s}, rebuilt from the ensemble.
  [[nodiscard]] Matrix mixture() const;
  /// sum_s p_s H(rho_{F|s}).
  [[nodiscard]] double average_entropy() const;
};

struct InfoPoint {
  std::size_t fragment_size = 0;
  double fraction = 0.0;
  double mutual_information = 0.0;
  double holevo = 0.0;
  double discord = 0.0;
  /// Largest element rank of the POVM the point was evaluated with.
  std::size_t povm_rank = 1;
};

/// I(S:F) = H_S + H_F - H_SF.
double mutual_information(const DensityMatrix &rho_sf);

/// p_s rho_{F|s} = tr_S sqrt(pi_s) rho_SF sqrt(pi_s).
ConditionalEnsemble conditional_states(const DensityMatrix &rho_sf, const Povm &povm);

/// chi = H(sum_s p_s rho_{F|s}) - sum_s p_s H_{F|s}.
double holevo(const DensityMatrix &rho_sf, const Povm &povm);

/// D = H_S - H_SF + sum_s p_s H_{F|s}, which equals I - chi.
double discord(const DensityMatrix &rho_sf, const Povm &povm);

/// All three quantities at once, sharing the eigen-decompositions.
InfoPoint info_point(const DensityMatrix &rho_sf, const Povm &povm);

/// I, chi and D for the fragment `fragment` of a pure global state whose
/// subsystem 0 is S. Works from Schmidt spectra, so only the smaller side of
/// each bipartition is ever diagonalized.
InfoPoint info_point_pure(const PureStateVector &psi, std::span<const std::size_t> fragment,
                          const Povm &povm);

/// Plateau Holevo quantity H(Pi) - H(Pi | pointer) for a perfect pointer record.
double plateau_chi(std::span<const double> pointer_probs, const Povm &povm,
                   const Matrix &pointer_basis);

struct Complementarity {
  bool complementary = false;
  /// q_s = <s^|pi_s|s^>, averaged over the pointer states.
  std::vector<double> weights;
  /// max over s and pointer pairs of |<s^|pi_s|s^> - <s^'|pi_s|s^'>|.
  double max_bias = 0.0;
};

Complementarity is_complementary(const Povm &povm, const Matrix &pointer_basis);

/// sum_s sqrt(pi_s) rho_SF sqrt(pi_s). Fixes the sqrt(pi) Kraus convention.
DensityMatrix measured_state(const DensityMatrix &rho_sf, const Povm &povm);

/// Reduces a global state on [S, E_1, ..., E_n] to S and the listed
/// environment subsystems, flattened to the two-factor layout [d_S, d_F].
/// An empty fragment yields d_F = 1.
DensityMatrix system_fragment_state(const DensityMatrix &rho_se,
                                    std::span<const std::size_t> fragment);

/// Complement of `fragment` among subsystems 1..n-1 of `layout`.
std::vector<std::size_t> complement_fragment(const SubsystemLayout &layout,
                                             std::span<const std::size_t> fragment);

/// Shannon entropy of the outcome distribution tr(pi_s rho_S).
double outcome_entropy(const DensityMatrix &rho_s, const Povm &povm);

} // namespace darwinlab
