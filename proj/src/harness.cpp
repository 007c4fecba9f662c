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

#include "darwinlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include <Eigen/QR>
#include <fmt/format.h>

#include "darwinlab/info_measures.hpp"
#include "darwinlab/parallel.hpp"
#include "darwinlab/sweep.hpp"

namespace darwinlab {

// -- random ensembles -------------------------------------------------------

namespace {

Matrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      // Fixed evaluation order keeps the stream reproducible.
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

std::size_t uniform_index(std::size_t lo, std::size_t hi, Rng &rng) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(double lo, double hi, Rng &rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace

Matrix random_unitary(std::size_t dim, Rng &rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

PureStateVector random_pure_state(const SubsystemLayout &layout, Rng &rng) {
  const Matrix g = ginibre(layout.total_dim(), 1, rng);
  return PureStateVector::normalized(g.col(0), layout);
}

DensityMatrix random_mixed_state(const SubsystemLayout &layout, Rng &rng, std::size_t rank) {
  const std::size_t dim = layout.total_dim();
  if (rank == 0) {
    rank = uniform_index(1, dim, rng);
  }
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::assume_valid(std::move(rho), layout);
}

Povm random_rank_one_povm(std::size_t dim, Rng &rng) {
  return Povm::from_basis(random_unitary(dim, rng));
}

Povm random_general_povm(std::size_t dim, Rng &rng) {
  const Matrix u = random_unitary(dim, rng);
  const double t = uniform_real(0.05, 0.95, rng);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> elements;
  for (Eigen::Index k = 0; k < d; ++k) {
    const Matrix proj = u.col(k) * u.col(k).adjoint();
    elements.push_back((1.0 - t) * proj + t * Matrix::Identity(d, d) / static_cast<double>(dim));
  }
  if (dim > 2) {
    elements[0] += elements.back();
    elements.pop_back();
  }
  return Povm::validated(std::move(elements));
}

BranchModel random_branch_model(std::size_t max_env, Rng &rng) {
  const std::size_t env = uniform_index(0, max_env, rng);
  std::vector<double> actions(env);
  for (double &t : actions) {
    t = uniform_real(0.0, std::numbers::pi, rng);
  }
  const double p0 = uniform_real(0.0, 1.0, rng);
  const double phase = uniform_real(0.0, 2.0 * std::numbers::pi, rng);
  return BranchModel::create({std::sqrt(p0), std::sqrt(1.0 - p0) * std::polar(1.0, phase)},
                             std::move(actions));
}

std::string_view to_string(EnsembleKind k) {
  switch (k) {
  case EnsembleKind::PureHaar:
    return "pure-haar";
  case EnsembleKind::MixedGinibre:
    return "mixed-ginibre";
  case EnsembleKind::BranchModel:
    return "branch-model";
  case EnsembleKind::PovmRankOne:
    return "povm-rank-one";
  case EnsembleKind::PovmGeneral:
    return "povm-general";
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  for (auto k : {EnsembleKind::PureHaar, EnsembleKind::MixedGinibre, EnsembleKind::BranchModel,
                 EnsembleKind::PovmRankOne, EnsembleKind::PovmGeneral}) {
    if (name == to_string(k)) {
      return k;
    }
  }
  throw InvalidArgument(fmt::format("unsupported ensemble kind '{}'", name));
}

EnsembleSample generate_one(const RandomEnsembleSpec &spec, std::size_t index) {
  if (spec.count < 1) {
    throw InvalidArgument("ensemble count must be at least 1");
  }
  if (spec.dims.empty() || std::any_of(spec.dims.begin(), spec.dims.end(),
                                       [](std::size_t d) { return d < 2; })) {
    throw InvalidArgument("ensemble dimensions must all be at least 2");
  }
  Rng rng(derive_seed(spec.seed, index));
  const SubsystemLayout layout(spec.dims);
  switch (spec.kind) {
  case EnsembleKind::PureHaar:
    return random_pure_state(layout, rng);
  case EnsembleKind::MixedGinibre:
    return random_mixed_state(layout, rng);
  case EnsembleKind::BranchModel:
    return random_branch_model(spec.dims.front(), rng);
  case EnsembleKind::PovmRankOne:
    return random_rank_one_povm(spec.dims.front(), rng);
  case EnsembleKind::PovmGeneral:
    return random_general_povm(spec.dims.front(), rng);
  }
  throw InvalidArgument("unsupported ensemble kind");
}

std::vector<EnsembleSample> generate(const RandomEnsembleSpec &spec) {
  std::vector<EnsembleSample> out;
  out.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    out.push_back(generate_one(spec, i));
  }
  return out;
}

// -- check plumbing -----------------------------------------------------------

namespace {

constexpr double kEquality = 1e-9;
constexpr double kComplementaryConstant = 10.0;
/// Overlap below which the fitted complementary constant is not sampled.
constexpr double kFitFloor = 1e-6;
/// Largest |overlap(E/F)| treated as surplus decoherence.
constexpr double kSurplusOverlap = 1e-9;

struct Instance {
  double violation = -std::numeric_limits<double>::infinity();
  bool excluded = false;
  /// Candidate for the fitted constant; NaN when not applicable.
  double ratio = std::numeric_limits<double>::quiet_NaN();
};

struct CheckContext {
  std::size_t trials;
  std::uint64_t seed;
  std::size_t threads;
};

using InstanceFn = std::function<Instance(std::size_t index, Rng &rng)>;

CheckReport run_instances(std::string name, std::size_t count, double tolerance,
                          const CheckContext &ctx, const InstanceFn &fn, bool fit = false) {
  std::vector<Instance> results(count);
  parallel_for(count, ctx.threads, [&](std::size_t i) {
    Rng rng(derive_seed(ctx.seed, i));
    results[i] = fn(i, rng);
  });
  CheckReport report;
  report.check = std::move(name);
  report.tolerance = tolerance;
  report.seed = ctx.seed;
  double worst = -std::numeric_limits<double>::infinity();
  double ratio = 0.0;
  std::size_t excluded = 0;
  for (const auto &r : results) {
    if (r.excluded) {
      ++excluded;
      continue;
    }
    ++report.count;
    worst = std::max(worst, r.violation);
    if (!std::isnan(r.ratio)) {
      ratio = std::max(ratio, r.ratio);
    }
  }
  report.max_violation = report.count == 0 ? 0.0 : worst;
  report.pass = report.count > 0 && report.max_violation <= tolerance;
  if (fit) {
    report.fitted_constant = ratio;
  }
  if (excluded > 0) {
    report.excluded = excluded;
  }
  return report;
}

/// [d_S, e_1, ..., e_k] with d_S in {2, 3} and prod e_i <= 16.
SubsystemLayout random_split_layout(Rng &rng) {
  std::vector<std::size_t> dims{uniform_index(2, 3, rng)};
  const std::size_t wanted = uniform_index(1, 4, rng);
  std::size_t env_dim = 1;
  for (std::size_t k = 0; k < wanted; ++k) {
    const std::size_t d = uniform_index(2, 3, rng);
    if (env_dim * d > 16) {
      break;
    }
    env_dim *= d;
    dims.push_back(d);
  }
  return SubsystemLayout(dims);
}

/// Each environment subsystem joins F with probability 1/2.
std::vector<std::size_t> random_fragment(const SubsystemLayout &layout, Rng &rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::size_t> f;
  for (std::size_t k = 1; k < layout.size(); ++k) {
    if (coin(rng)) {
      f.push_back(k);
    }
  }
  return f;
}

/// Two-factor layout [d_S, d_F] with d_S in {2, 3}, d_F in 2..8.
SubsystemLayout random_pair_layout(Rng &rng) {
  return SubsystemLayout({uniform_index(2, 3, rng), uniform_index(2, 8, rng)});
}

std::vector<std::size_t> random_env_subset(const BranchModel &model, std::size_t m, Rng &rng) {
  std::vector<std::size_t> pool(model.env_size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    std::swap(pool[i], pool[uniform_index(i, pool.size() - 1, rng)]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

double system_entropy(const DensityMatrix &rho) {
  const std::size_t s[] = {0};
  return von_neumann_entropy(partial_trace(rho, s));
}

/// 2x2 pointer-basis density matrix of S decohered to overlap lambda.
Matrix decohered_system(const BranchModel &model, Complex lambda) {
  const auto &c = model.amplitudes();
  Matrix rho(2, 2);
  rho << std::norm(c[0]), c[0] * std::conj(c[1]) * std::conj(lambda),
      c[1] * std::conj(c[0]) * lambda, std::norm(c[1]);
  return rho;
}

double max_abs_gap(const InfoPoint &a, const InfoPoint &b) {
  return std::max({std::abs(a.mutual_information - b.mutual_information),
                   std::abs(a.holevo - b.holevo), std::abs(a.discord - b.discord)});
}

// -- individual checks --------------------------------------------------------

CheckReport check_conservation(const CheckContext &ctx) {
  return run_instances("conservation", ctx.trials ? ctx.trials : 1000, kEquality, ctx,
                       [](std::size_t, Rng &rng) {
                         const auto layout = random_pair_layout(rng);
                         const DensityMatrix rho = random_mixed_state(layout, rng);
                         const Povm povm = random_rank_one_povm(layout.dim(0), rng);
                         const double i = mutual_information(rho);
                         const double chi = holevo(rho, povm);
                         const double d = discord(rho, povm);
                         return Instance{std::abs(i - chi - d)};
                       });
}

CheckReport check_antisymmetry(const CheckContext &ctx) {
  return run_instances(
      "antisymmetry", ctx.trials ? ctx.trials : 500, kEquality, ctx, [](std::size_t, Rng &rng) {
        const auto layout = random_split_layout(rng);
        const DensityMatrix rho = random_pure_state(layout, rng).projector();
        const Povm povm = random_rank_one_povm(layout.dim(0), rng);
        const auto f = random_fragment(layout, rng);
        const auto rest = complement_fragment(layout, f);
        const double d_rest = discord(system_fragment_state(rho, rest), povm);
        const double chi_f = holevo(system_fragment_state(rho, f), povm);
        return Instance{std::abs(d_rest - (system_entropy(rho) - chi_f))};
      });
}

CheckReport check_pivot(const CheckContext &ctx) {
  return run_instances(
      "pivot", ctx.trials ? ctx.trials : 500, kEquality, ctx, [](std::size_t, Rng &rng) {
        const auto layout = random_split_layout(rng);
        const PureStateVector psi = random_pure_state(layout, rng);
        const Povm povm = random_rank_one_povm(layout.dim(0), rng);
        const auto f = random_fragment(layout, rng);
        const auto rest = complement_fragment(layout, f);
        const std::size_t s[] = {0};
        const double half = 0.5 * reduced_entropy(psi.amplitudes(), layout, s);
        const double lhs = info_point_pure(psi, f, povm).holevo - half;
        const double rhs = half - info_point_pure(psi, rest, povm).discord;
        return Instance{std::abs(lhs - rhs)};
      });
}

CheckReport check_mi_antisymmetry(const CheckContext &ctx) {
  return run_instances(
      "mi-antisymmetry", ctx.trials ? ctx.trials : 500, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const auto layout = random_split_layout(rng);
        const DensityMatrix rho = random_pure_state(layout, rng).projector();
        const auto f = random_fragment(layout, rng);
        const auto rest = complement_fragment(layout, f);
        const double sum = mutual_information(system_fragment_state(rho, f)) +
                           mutual_information(system_fragment_state(rho, rest));
        return Instance{std::abs(sum - 2.0 * system_entropy(rho))};
      });
}

CheckReport check_mixed_inequality(const CheckContext &ctx) {
  return run_instances(
      "mixed-inequality", ctx.trials ? ctx.trials : 500, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const auto layout = random_split_layout(rng);
        const DensityMatrix rho = random_mixed_state(layout, rng);
        const Povm povm = random_rank_one_povm(layout.dim(0), rng);
        const auto f = random_fragment(layout, rng);
        const auto rest = complement_fragment(layout, f);
        const double d_rest = discord(system_fragment_state(rho, rest), povm);
        const double chi_f = holevo(system_fragment_state(rho, f), povm);
        return Instance{d_rest - (system_entropy(rho) - chi_f)};
      });
}

CheckReport check_measurement_loss(const CheckContext &ctx) {
  return run_instances(
      "measurement-loss", ctx.trials ? ctx.trials : 500, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const auto layout = random_pair_layout(rng);
        const DensityMatrix rho = random_mixed_state(layout, rng);
        const Povm povm = random_rank_one_povm(layout.dim(0), rng);
        const double loss = mutual_information(rho) - mutual_information(measured_state(rho, povm));
        return Instance{discord(rho, povm) - loss};
      });
}

CheckReport check_uninformative(const CheckContext &ctx) {
  return run_instances(
      "uninformative-povm", ctx.trials ? ctx.trials : 200, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const auto layout = random_pair_layout(rng);
        const DensityMatrix rho = random_mixed_state(layout, rng);
        const auto d = static_cast<Eigen::Index>(layout.dim(0));
        const std::vector<Matrix> elements(layout.dim(0),
                                           Matrix::Identity(d, d) / static_cast<double>(d));
        const InfoPoint p = info_point(rho, Povm::validated(elements));
        return Instance{std::max(std::abs(p.holevo), std::abs(p.discord - p.mutual_information))};
      });
}

CheckReport check_oracle(const CheckContext &ctx) {
  return run_instances(
      "oracle-equivalence", ctx.trials ? ctx.trials : 200, kEquality, ctx,
      [](std::size_t index, Rng &rng) {
        const BranchModel model = random_branch_model(10, rng);
        Povm povm = make_rotated_povm(uniform_real(-std::numbers::pi, std::numbers::pi, rng));
        // Every third instance uses a generic POVM instead of the rotated family.
        if (index % 3 == 1) {
          povm = random_rank_one_povm(2, rng);
        } else if (index % 3 == 2) {
          povm = random_general_povm(2, rng);
        }
        double worst = 0.0;
        for (std::size_t m = 0; m <= model.env_size(); ++m) {
          const auto subset = random_env_subset(model, m, rng);
          worst = std::max(worst, max_abs_gap(fast_info_point(model, subset, povm),
                                              dense_info_point(model, subset, povm)));
        }
        return Instance{worst};
      });
}

CheckReport check_pointer_minimizes(const CheckContext &ctx) {
  const auto grid = linspace(0.0, std::numbers::pi, 65);
  return run_instances(
      "pointer-minimizes-discord", ctx.trials ? ctx.trials : 20, kEquality, ctx,
      [&grid](std::size_t, Rng &rng) {
        const BranchModel model = random_branch_model(10, rng);
        std::vector<Povm> povms;
        for (double mu : grid) {
          povms.push_back(make_rotated_povm(mu));
        }
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m <= model.env_size(); ++m) {
          const auto subset = random_env_subset(model, m, rng);
          const double at_pointer = fast_info_point(model, subset, povms.front()).discord;
          double lowest = at_pointer;
          for (const auto &povm : povms) {
            lowest = std::min(lowest, fast_info_point(model, subset, povm).discord);
          }
          worst = std::max(worst, at_pointer - lowest);
        }
        return Instance{worst};
      });
}

CheckReport check_pointer_discord_form(const CheckContext &ctx) {
  return run_instances(
      "pointer-discord-form", ctx.trials ? ctx.trials : 200, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const BranchModel model = random_branch_model(40, rng);
        const Povm pointer = make_rotated_povm(0.0);
        double worst = 0.0;
        for (std::size_t m = 0; m <= model.env_size(); ++m) {
          const auto subset = random_env_subset(model, m, rng);
          const auto rest = complement(model, subset);
          const Complex lambda_rest = overlap(model, rest);
          const Complex lambda_env = overlap(model, subset) * lambda_rest;
          const double expected = von_neumann_entropy(decohered_system(model, lambda_env)) -
                                  von_neumann_entropy(decohered_system(model, lambda_rest));
          worst = std::max(worst,
                           std::abs(fast_info_point(model, subset, pointer).discord - expected));
        }
        return Instance{worst};
      });
}

CheckReport check_chi_for_pure_dec(const CheckContext &ctx) {
  return run_instances(
      "chi-for-pure-dec", ctx.trials ? ctx.trials : 100, kEquality, ctx,
      [](std::size_t, Rng &rng) {
        const BranchModel model = random_branch_model(6, rng);
        const Povm povm = make_rotated_povm(uniform_real(0.0, std::numbers::pi, rng));
        const Povm pointer = make_rotated_povm(0.0);
        const DensityMatrix rho = dense_state(model).projector();
        double worst = 0.0;
        for (std::size_t m = 0; m <= model.env_size(); ++m) {
          const auto subset = random_env_subset(model, m, rng);
          std::vector<std::size_t> fragment;
          for (std::size_t k : subset) {
            fragment.push_back(k + 1);
          }
          const double conditional =
              conditional_states(system_fragment_state(rho, fragment), povm).average_entropy();
          const double chi = fast_info_point(model, subset, povm).holevo;
          const double chi_pointer = dense_info_point(model, subset, pointer).holevo;
          worst = std::max(worst, std::abs(chi - (chi_pointer - conditional)));
        }
        return Instance{worst};
      });
}

CheckReport check_complementary(const CheckContext &ctx) {
  // Fixed grid at E = 100 followed by random heterogeneous models.
  constexpr std::size_t kEnv = 100;
  const auto t_grid = default_t_grid();
  const std::size_t grid_points = t_grid.size() * (kEnv + 1);
  const std::size_t random_models = ctx.trials ? ctx.trials : 100;
  const Povm complementary = make_rotated_povm(std::numbers::pi / 2.0);
  const Povm pointer = make_rotated_povm(0.0);
  const auto evaluate = [&](const BranchModel &model, std::span<const std::size_t> subset) {
    const double gap = std::abs(fast_info_point(model, subset, complementary).discord -
                                fast_info_point(model, subset, pointer).holevo);
    const double lambda = std::abs(overlap(model, complement(model, subset)));
    Instance r{gap - kComplementaryConstant * lambda};
    if (lambda > kFitFloor) {
      r.ratio = gap / lambda;
    }
    return r;
  };
  return run_instances(
      "complementary-identity", grid_points + random_models, kEquality, ctx,
      [&](std::size_t index, Rng &rng) {
        if (index < grid_points) {
          const BranchModel model = BranchModel::uniform(kEnv, t_grid[index / (kEnv + 1)]);
          std::vector<std::size_t> subset(index % (kEnv + 1));
          std::iota(subset.begin(), subset.end(), std::size_t{0});
          return evaluate(model, subset);
        }
        const BranchModel model = random_branch_model(12, rng);
        Instance worst;
        for (std::size_t m = 0; m <= model.env_size(); ++m) {
          const Instance r = evaluate(model, random_env_subset(model, m, rng));
          worst.violation = std::max(worst.violation, r.violation);
          if (!std::isnan(r.ratio) && !(r.ratio <= worst.ratio)) {
            worst.ratio = r.ratio;
          }
        }
        return worst;
      },
      true);
}

CheckReport check_plateau(const CheckContext &ctx) {
  constexpr std::size_t kEnv = 100;
  const auto mu_grid = default_mu_grid();
  const double p0s[] = {0.5, 0.3, 0.8};
  const std::size_t per_p = mu_grid.size() * (kEnv - 1);
  return run_instances(
      "plateau", per_p * std::size(p0s), kEquality, ctx, [&](std::size_t index, Rng &) {
        const double p0 = p0s[index / per_p];
        const std::size_t rem = index % per_p;
        const double mu = mu_grid[rem / (kEnv - 1)];
        const std::size_t m = 1 + rem % (kEnv - 1);
        const BranchModel model = BranchModel::uniform(kEnv, std::numbers::pi / 2.0, p0);
        const Povm povm = make_rotated_povm(mu);
        std::vector<std::size_t> subset(m);
        std::iota(subset.begin(), subset.end(), std::size_t{0});
        const double probs[] = {p0, 1.0 - p0};
        return Instance{std::abs(fast_info_point(model, subset, povm).holevo -
                                 plateau_chi(probs, povm, pointer_basis()))};
      });
}

CheckReport check_alicki_fannes(const CheckContext &ctx) {
  constexpr std::size_t kEnv = 100;
  const auto t_grid = default_t_grid();
  const auto mu_grid = default_mu_grid();
  const std::size_t per_t = mu_grid.size() * kEnv;
  return run_instances(
      "alicki-fannes", t_grid.size() * per_t, kEquality, ctx, [&](std::size_t index, Rng &) {
        const double t = t_grid[index / per_t];
        const std::size_t rem = index % per_t;
        const double mu = mu_grid[rem / kEnv];
        const std::size_t m = 1 + rem % kEnv;
        const BranchModel model = BranchModel::uniform(kEnv, t);
        std::vector<std::size_t> subset(m);
        std::iota(subset.begin(), subset.end(), std::size_t{0});
        const Povm povm = make_rotated_povm(mu);
        const BranchBreakdown b = fast_breakdown(model, subset, povm);
        if (std::abs(b.overlap_rest) > kSurplusOverlap) {
          return Instance{0.0, true};
        }
        const double probs[] = {0.5, 0.5};
        const double gap = std::abs(b.point.holevo - plateau_chi(probs, povm, pointer_basis()));
        return Instance{gap - alicki_fannes_bound(helstrom_error(b.overlap_fragment), povm.size())};
      });
}

using CheckFn = CheckReport (*)(const CheckContext &);

const std::map<std::string, CheckFn, std::less<>> &registry() {
  static const std::map<std::string, CheckFn, std::less<>> checks{
      {"alicki-fannes", check_alicki_fannes},
      {"antisymmetry", check_antisymmetry},
      {"chi-for-pure-dec", check_chi_for_pure_dec},
      {"complementary-identity", check_complementary},
      {"conservation", check_conservation},
      {"measurement-loss", check_measurement_loss},
      {"mi-antisymmetry", check_mi_antisymmetry},
      {"mixed-inequality", check_mixed_inequality},
      {"oracle-equivalence", check_oracle},
      {"pivot", check_pivot},
      {"plateau", check_plateau},
      {"pointer-discord-form", check_pointer_discord_form},
      {"pointer-minimizes-discord", check_pointer_minimizes},
      {"uninformative-povm", check_uninformative},
  };
  return checks;
}

} // namespace

std::vector<std::string> available_checks() {
  std::vector<std::string> names;
  for (const auto &[name, fn] : registry()) {
    names.push_back(name);
  }
  return names;
}

std::uint64_t check_seed(std::uint64_t seed, std::string_view check) {
  // FNV-1a over the name keeps streams stable when checks are added.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : check) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ h);
}

CheckReport run_check(std::string_view name, const HarnessOptions &opts) {
  const auto &checks = registry();
  const auto it = checks.find(name);
  if (it == checks.end()) {
    throw InvalidArgument(fmt::format("unknown check '{}'", name));
  }
  const CheckContext ctx{opts.trials, check_seed(opts.seed, name), opts.threads};
  return it->second(ctx);
}

std::vector<CheckReport> run_checks(const std::vector<std::string> &selection,
                                    const HarnessOptions &opts) {
  if (selection.empty()) {
    throw InvalidArgument("no checks selected");
  }
  std::vector<std::string> names = selection;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto &n : names) {
    if (!registry().contains(n)) {
      throw InvalidArgument(fmt::format("unknown check '{}'", n));
    }
  }
  std::vector<CheckReport> reports;
  reports.reserve(names.size());
  for (const auto &n : names) {
    reports.push_back(run_check(n, opts));
  }
  return reports;
}

bool all_pass(const std::vector<CheckReport> &reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport &r) { return r.pass; });
}

} // namespace darwinlab
