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
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "darwinlab/branch_model.hpp"
#include "darwinlab/qstate.hpp"

namespace darwinlab {

// -- random ensembles -------------------------------------------------------

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(std::size_t dim, Rng &rng);
/// Uniform under the unitarily invariant measure.
PureStateVector random_pure_state(const SubsystemLayout &layout, Rng &rng);
/// G G^dagger / tr for a dim x rank Ginibre matrix G. rank 0 draws a rank
/// uniformly from 1..dim.
DensityMatrix random_mixed_state(const SubsystemLayout &layout, Rng &rng, std::size_t rank = 0);
/// Projectors onto the columns of a Haar unitary.
Povm random_rank_one_povm(std::size_t dim, Rng &rng);
/// A rank-one POVM mixed with the identity and, for dim > 2, with two
/// outcomes merged; elements generally have rank > 1.
Povm random_general_povm(std::size_t dim, Rng &rng);
/// E drawn from 0..max_env, actions from [0, pi], random complex amplitudes.
BranchModel random_branch_model(std::size_t max_env, Rng &rng);

enum class EnsembleKind { PureHaar, MixedGinibre, BranchModel, PovmRankOne, PovmGeneral };

std::string_view to_string(EnsembleKind k);
EnsembleKind parse_ensemble_kind(std::string_view name);

struct RandomEnsembleSpec {
  EnsembleKind kind = EnsembleKind::PureHaar;
  /// Subsystem dimensions for states, the system dimension for POVMs, and
  /// the largest environment size for branch models.
  std::vector<std::size_t> dims{2};
  std::size_t count = 1;
  std::uint64_t seed = 0;
};

using EnsembleSample = std::variant<PureStateVector, DensityMatrix, BranchModel, Povm>;

/// Sample `index` of the ensemble; depends only on (spec.seed, index).
EnsembleSample generate_one(const RandomEnsembleSpec &spec, std::size_t index);
std::vector<EnsembleSample> generate(const RandomEnsembleSpec &spec);

// -- checks -----------------------------------------------------------------

struct CheckReport {
  std::string check;
  std::size_t count = 0;
  double tolerance = 0.0;
  /// Negative values are satisfied with margin.
  double max_violation = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  /// Empirical constant for bounds stated up to a constant.
  std::optional<double> fitted_constant;
  /// Instances outside the hypothesis of the check, skipped.
  std::optional<std::size_t> excluded;
};

struct HarnessOptions {
  /// Instances per randomized check; 0 keeps each check's default.
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Names of every registered check, sorted.
std::vector<std::string> available_checks();

/// Seed used by `check` under master seed `seed`.
std::uint64_t check_seed(std::uint64_t seed, std::string_view check);

CheckReport run_check(std::string_view name, const HarnessOptions &opts);

/// Runs the selected checks and returns their reports sorted by name.
/// Throws InvalidArgument for an empty selection or an unknown name.
std::vector<CheckReport> run_checks(const std::vector<std::string> &selection,
                                    const HarnessOptions &opts);

bool all_pass(const std::vector<CheckReport> &reports);

} // namespace darwinlab
