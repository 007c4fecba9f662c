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

#include "darwinlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "darwinlab/parallel.hpp"

namespace darwinlab {

namespace {

constexpr double kConservationTolerance = 1e-9;

/// All size-m subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(m);
  std::iota(current.begin(), current.end(), std::size_t{0});
  while (true) {
    out.push_back(current);
    std::size_t i = m;
    while (i > 0 && current[i - 1] == n - m + (i - 1)) {
      --i;
    }
    if (i == 0) {
      return out;
    }
    ++current[i - 1];
    for (std::size_t j = i; j < m; ++j) {
      current[j] = current[j - 1] + 1;
    }
  }
}

/// Uniform size-m subset via a partial Fisher-Yates shuffle.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<std::size_t> first_qubits(std::size_t m) {
  std::vector<std::size_t> s(m);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

InfoPoint mean_of(const std::vector<InfoPoint> &points) {
  InfoPoint mean = points.front();
  mean.mutual_information = 0.0;
  mean.holevo = 0.0;
  mean.discord = 0.0;
  for (const auto &p : points) {
    mean.mutual_information += p.mutual_information;
    mean.holevo += p.holevo;
    mean.discord += p.discord;
    mean.povm_rank = std::max(mean.povm_rank, p.povm_rank);
  }
  const auto n = static_cast<double>(points.size());
  mean.mutual_information /= n;
  mean.holevo /= n;
  mean.discord /= n;
  return mean;
}

void require_conservation(const InfoPoint &p) {
  const double gap = std::abs(p.mutual_information - p.holevo - p.discord);
  if (gap > kConservationTolerance) {
    throw NumericalDiagnostic(
        fmt::format("I - chi - D = {:.3e} at m = {}", gap, p.fragment_size));
  }
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument(fmt::format("delta = {} outside (0, 1)", delta));
  }
}

FragmentEvaluator fast_evaluator(const BranchModel &model, const Povm &povm) {
  return [&model, &povm](std::span<const std::size_t> subset) {
    return fast_info_point(model, subset, povm);
  };
}

} // namespace

std::string_view to_string(AveragingStrategy s) {
  switch (s) {
  case AveragingStrategy::Auto:
    return "auto";
  case AveragingStrategy::Exhaustive:
    return "exhaustive";
  case AveragingStrategy::MonteCarlo:
    return "monte-carlo";
  case AveragingStrategy::Single:
    return "single";
  }
  return "?";
}

AveragingStrategy parse_averaging(std::string_view name) {
  for (auto s : {AveragingStrategy::Auto, AveragingStrategy::Exhaustive,
                 AveragingStrategy::MonteCarlo, AveragingStrategy::Single}) {
    if (name == to_string(s)) {
      return s;
    }
  }
  throw InvalidArgument(fmt::format("unknown averaging strategy '{}'", name));
}

std::string_view to_string(RedundancyMode m) {
  return m == RedundancyMode::Holevo ? "holevo" : "mutual-information";
}

RedundancyMode parse_redundancy_mode(std::string_view name) {
  if (name == "holevo" || name == "chi") {
    return RedundancyMode::Holevo;
  }
  if (name == "mutual-information" || name == "mi") {
    return RedundancyMode::MutualInformation;
  }
  throw InvalidArgument(fmt::format("unknown redundancy mode '{}'", name));
}

std::size_t binomial(std::size_t n, std::size_t m) {
  if (m > n) {
    return 0;
  }
  m = std::min(m, n - m);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    // result * (n - m + i) / i stays integral at every step.
    const std::size_t factor = n - m + i;
    if (result > std::numeric_limits<std::size_t>::max() / factor) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

AveragedPoint average_over_fragments(const BranchModel &model, std::size_t m,
                                     const FragmentEvaluator &evaluate,
                                     const AveragingOptions &opts) {
  const std::size_t n = model.env_size();
  if (m > n) {
    throw InvalidArgument(fmt::format("fragment size {} exceeds E = {}", m, n));
  }
  const std::size_t count = binomial(n, m);
  AveragingStrategy strategy = opts.strategy;
  if (strategy == AveragingStrategy::Auto) {
    if (count == 1 || model.uniform_actions()) {
      strategy = AveragingStrategy::Single;
    } else if (count <= kExhaustiveLimit) {
      strategy = AveragingStrategy::Exhaustive;
    } else {
      strategy = AveragingStrategy::MonteCarlo;
    }
  }

  AveragedPoint out;
  out.strategy = strategy;
  if (strategy == AveragingStrategy::Single) {
    out.point = evaluate(first_qubits(m));
    out.exact = count == 1 || model.uniform_actions();
    return out;
  }

  std::vector<std::vector<std::size_t>> subsets;
  if (strategy == AveragingStrategy::Exhaustive) {
    if (count > kExhaustiveLimit) {
      throw InvalidArgument(fmt::format("exhaustive averaging over {} subsets exceeds limit {}",
                                        count, kExhaustiveLimit));
    }
    subsets = all_subsets(n, m);
  } else {
    if (opts.samples == 0) {
      throw InvalidArgument("Monte Carlo averaging needs at least one sample");
    }
    const std::uint64_t stream = derive_seed(opts.seed, m);
    subsets.reserve(opts.samples);
    for (std::size_t i = 0; i < opts.samples; ++i) {
      subsets.push_back(random_subset(n, m, derive_seed(stream, i)));
    }
  }

  std::vector<InfoPoint> values(subsets.size());
  parallel_for(subsets.size(), opts.threads,
               [&](std::size_t i) { values[i] = evaluate(subsets[i]); });
  out.point = mean_of(values);
  out.subsets = subsets.size();
  out.exact = strategy == AveragingStrategy::Exhaustive;
  return out;
}

AveragedPoint evaluate_fragment(const BranchModel &model, const FragmentSpec &spec,
                                const Povm &povm) {
  if (const auto *subset = std::get_if<std::vector<std::size_t>>(&spec.selection)) {
    AveragedPoint out;
    out.point = fast_info_point(model, *subset, povm);
    return out;
  }
  return average_over_fragments(model, std::get<std::size_t>(spec.selection),
                                fast_evaluator(model, povm), spec.averaging);
}

InfoCurve info_curve(const BranchModel &model, const Povm &povm, const AveragingOptions &opts,
                     const std::optional<FragmentEvaluator> &evaluate) {
  const FragmentEvaluator eval = evaluate ? *evaluate : fast_evaluator(model, povm);
  const std::size_t n = model.env_size();
  InfoCurve curve;
  curve.averaging = opts;
  curve.points.resize(n + 1);
  curve.strategies.resize(n + 1);
  std::vector<char> exact(n + 1, 1);

  AveragingOptions inner = opts;
  inner.threads = 1;
  parallel_for(n + 1, opts.threads, [&](std::size_t m) {
    const AveragedPoint avg = average_over_fragments(model, m, eval, inner);
    require_conservation(avg.point);
    curve.points[m] = avg.point;
    curve.strategies[m] = avg.strategy;
    exact[m] = avg.exact ? 1 : 0;
  });
  curve.exact = std::all_of(exact.begin(), exact.end(), [](char e) { return e != 0; });
  return curve;
}

RedundancyResult redundancy(const BranchModel &model, const Povm &povm, double delta,
                            const RedundancyOptions &opts) {
  require_delta(delta);
  const BranchBreakdown whole = fast_breakdown(model, {}, povm);
  const double reference =
      opts.mode == RedundancyMode::Holevo ? whole.h_outcomes : whole.h_system;

  RedundancyResult result;
  result.delta = delta;
  result.mode = opts.mode;
  result.target = (1.0 - delta) * reference;
  const std::size_t n = model.env_size();
  result.scan_limit = opts.allow_single_copy ? n : n / 2;

  const FragmentEvaluator eval = fast_evaluator(model, povm);
  for (std::size_t m = 1; m <= result.scan_limit; ++m) {
    const InfoPoint p = average_over_fragments(model, m, eval, opts.averaging).point;
    const double value =
        opts.mode == RedundancyMode::Holevo ? p.holevo : p.mutual_information;
    if (value + kRedundancyTie >= result.target) {
      result.fragment_size = m;
      result.redundancy = static_cast<double>(n) / static_cast<double>(m);
      break;
    }
  }
  return result;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> default_mu_grid(std::size_t n) {
  return linspace(0.0, std::numbers::pi / 2.0, n);
}

std::vector<double> default_t_grid(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(i + 1) * (std::numbers::pi / 2.0) / static_cast<double>(n);
  }
  return out;
}

double critical_mu(double delta, double p0) {
  require_delta(delta);
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw InvalidArgument(fmt::format("p0 = {} outside [0, 1]", p0));
  }
  const auto gap = [&](double mu) {
    const double c2 = std::pow(std::cos(0.5 * mu), 2);
    const double p_plus = p0 * c2 + (1.0 - p0) * (1.0 - c2);
    return binary_entropy(c2) - delta * binary_entropy(p_plus);
  };
  double lo = 0.0;
  double hi = std::numbers::pi / 2.0;
  if (gap(hi) <= 0.0) {
    return hi;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

std::vector<double> plateau_column(double p0, const std::vector<double> &mu_grid) {
  const double probs[] = {p0, 1.0 - p0};
  std::vector<double> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    out.push_back(plateau_chi(probs, make_rotated_povm(mu), pointer_basis()));
  }
  return out;
}

void require_grid(const std::vector<double> &grid, const char *name) {
  if (grid.empty()) {
    throw InvalidArgument(fmt::format("{} grid is empty", name));
  }
}

} // namespace

ChiSurface chi_surface(double p0, double action, std::size_t env_size,
                       const std::vector<double> &mu_grid, double delta, std::size_t threads) {
  require_grid(mu_grid, "mu");
  const BranchModel model = BranchModel::uniform(env_size, action, p0);
  ChiSurface s;
  s.p0 = p0;
  s.action = action;
  s.env_size = env_size;
  s.mu_grid = mu_grid;
  s.delta = delta;
  s.chi.resize(mu_grid.size() * (env_size + 1));
  AveragingOptions opts;
  opts.threads = 1;
  parallel_for(mu_grid.size(), threads, [&](std::size_t i) {
    const InfoCurve curve = info_curve(model, make_rotated_povm(mu_grid[i]), opts);
    for (std::size_t m = 0; m <= env_size; ++m) {
      s.chi[i * (env_size + 1) + m] = curve.points[m].holevo;
    }
  });
  s.plateau = plateau_column(p0, mu_grid);
  s.critical_mu = critical_mu(delta, p0);
  return s;
}

RedundancySurface redundancy_surface(double p0, std::size_t env_size,
                                     const std::vector<double> &mu_grid,
                                     const std::vector<double> &t_grid, double delta,
                                     const RedundancyOptions &opts) {
  require_grid(mu_grid, "mu");
  require_grid(t_grid, "T");
  require_delta(delta);
  RedundancySurface s;
  s.p0 = p0;
  s.env_size = env_size;
  s.delta = delta;
  s.mu_grid = mu_grid;
  s.t_grid = t_grid;
  s.cells.resize(mu_grid.size() * t_grid.size());
  RedundancyOptions inner = opts;
  inner.averaging.threads = 1;
  parallel_for(s.cells.size(), opts.averaging.threads, [&](std::size_t cell) {
    const std::size_t i = cell % mu_grid.size();
    const std::size_t j = cell / mu_grid.size();
    const BranchModel model = BranchModel::uniform(env_size, t_grid[j], p0);
    s.cells[cell] = redundancy(model, make_rotated_povm(mu_grid[i]), delta, inner);
  });
  s.plateau = plateau_column(p0, mu_grid);
  s.critical_mu = critical_mu(delta, p0);
  return s;
}

} // namespace darwinlab
