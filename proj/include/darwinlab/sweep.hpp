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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "darwinlab/branch_model.hpp"
#include "darwinlab/info_measures.hpp"

namespace darwinlab {

/// Fragment averaging switches to Monte Carlo above this many subsets.
inline constexpr std::size_t kExhaustiveLimit = 10000;
inline constexpr std::size_t kDefaultSamples = 1000;
/// Slack on the favourable side of the redundancy criterion.
inline constexpr double kRedundancyTie = 1e-12;

enum class AveragingStrategy { Auto, Exhaustive, MonteCarlo, Single };

std::string_view to_string(AveragingStrategy s);
AveragingStrategy parse_averaging(std::string_view name);

struct AveragingOptions {
  AveragingStrategy strategy = AveragingStrategy::Auto;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  /// 0 picks one worker per hardware thread.
  std::size_t threads = 0;
};

/// Either an explicit list of environment qubits or a size to average over.
struct FragmentSpec {
  std::variant<std::vector<std::size_t>, std::size_t> selection;
  AveragingOptions averaging;

  static FragmentSpec subset(std::vector<std::size_t> indices) { return {std::move(indices), {}}; }
  static FragmentSpec of_size(std::size_t m, AveragingOptions opts = {}) { return {m, opts}; }
};

using FragmentEvaluator = std::function<InfoPoint(std::span<const std::size_t>)>;

struct AveragedPoint {
  InfoPoint point;
  /// Strategy actually applied (Auto is resolved).
  AveragingStrategy strategy = AveragingStrategy::Single;
  std::size_t subsets = 1;
  /// True when the value is the exact fragment average.
  bool exact = true;
};

/// Number of size-m subsets of n, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t m);

/// Mean of I, chi and D over fragments of size m.
AveragedPoint average_over_fragments(const BranchModel &model, std::size_t m,
                                     const FragmentEvaluator &evaluate,
                                     const AveragingOptions &opts);

/// Fast-path evaluation of a FragmentSpec.
AveragedPoint evaluate_fragment(const BranchModel &model, const FragmentSpec &spec,
                                const Povm &povm);

struct InfoCurve {
  std::vector<InfoPoint> points;
  AveragingOptions averaging;
  /// Per-m strategy actually used.
  std::vector<AveragingStrategy> strategies;
  bool exact = true;
};

/// Points for m = 0..E through the fast path (or `evaluate` when given).
InfoCurve info_curve(const BranchModel &model, const Povm &povm, const AveragingOptions &opts,
                     const std::optional<FragmentEvaluator> &evaluate = std::nullopt);

enum class RedundancyMode { Holevo, MutualInformation };

std::string_view to_string(RedundancyMode m);
RedundancyMode parse_redundancy_mode(std::string_view name);

struct RedundancyOptions {
  RedundancyMode mode = RedundancyMode::Holevo;
  AveragingOptions averaging;
  /// Extend the scan from floor(E/2) to E, admitting a single copy.
  bool allow_single_copy = false;
};

struct RedundancyResult {
  double delta = 0.0;
  RedundancyMode mode = RedundancyMode::Holevo;
  /// Empty when unreachable.
  std::optional<std::size_t> fragment_size;
  std::optional<double> redundancy;
  /// (1 - delta) H(Pi_S) or (1 - delta) H_S.
  double target = 0.0;
  /// Largest m examined.
  std::size_t scan_limit = 0;
};

/// Smallest fragment size whose averaged chi (or I) reaches the target,
/// scanning m = 1, 2, ... in order.
RedundancyResult redundancy(const BranchModel &model, const Povm &povm, double delta,
                            const RedundancyOptions &opts = {});

/// n points evenly covering [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);
/// 64 angles in [0, pi/2].
std::vector<double> default_mu_grid(std::size_t n = 64);
/// T_i = (i + 1) (pi/2) / n for i < n.
std::vector<double> default_t_grid(std::size_t n = 64);

/// Solves H(cos^2(mu/2)) = delta H(Pi_mu) on (0, pi/2] for a fully decohered
/// pointer distribution (p0, 1 - p0). Beyond this angle a perfect pointer
/// record still misses the deficit target.
double critical_mu(double delta, double p0 = 0.5);

struct ChiSurface {
  double p0 = 0.5;
  double action = 0.0;
  std::size_t env_size = 0;
  std::vector<double> mu_grid;
  /// chi[i * (E + 1) + m] for mu_grid[i].
  std::vector<double> chi;
  /// Analytic plateau value per mu.
  std::vector<double> plateau;
  double critical_mu = 0.0;
  double delta = 0.0;

  [[nodiscard]] double at(std::size_t mu_index, std::size_t m) const {
    return chi[mu_index * (env_size + 1) + m];
  }
};

ChiSurface chi_surface(double p0, double action, std::size_t env_size,
                       const std::vector<double> &mu_grid, double delta, std::size_t threads = 0);

struct RedundancySurface {
  double p0 = 0.5;
  std::size_t env_size = 0;
  double delta = 0.0;
  std::vector<double> mu_grid;
  std::vector<double> t_grid;
  /// cells[j * mu_grid.size() + i] for (mu_grid[i], t_grid[j]).
  std::vector<RedundancyResult> cells;
  std::vector<double> plateau;
  double critical_mu = 0.0;

  [[nodiscard]] const RedundancyResult &at(std::size_t mu_index, std::size_t t_index) const {
    return cells[t_index * mu_grid.size() + mu_index];
  }
};

RedundancySurface redundancy_surface(double p0, std::size_t env_size,
                                     const std::vector<double> &mu_grid,
                                     const std::vector<double> &t_grid, double delta,
                                     const RedundancyOptions &opts = {});

} // namespace darwinlab
