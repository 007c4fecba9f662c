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

#include "darwinlab/branch_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace darwinlab {

namespace {

/// Gram-matrix eigenvalues below this are treated as zero.
constexpr double kGramClamp = 1e-14;

using Mat2 = Eigen::Matrix2cd;

std::array<double, 2> hermitian2_eigenvalues(const Mat2 &m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  return {mean - radius, mean + radius};
}

/// Nonzero spectrum of sum_ij A_ij |v_i><v_j| for unit vectors with
/// <v_0|v_1> = g. Uses the Cholesky factor G = L L^dagger so that the
/// spectrum is that of the Hermitian L^dagger A L.
std::array<double, 2> gram_spectrum(const Mat2 &coeffs, Complex g) {
  Mat2 l;
  l << 1.0, 0.0, std::conj(g), std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
  return hermitian2_eigenvalues(l.adjoint() * coeffs * l);
}

double entropy2(const std::array<double, 2> &ev) {
  return entropy_from_spectrum(std::span<const double>(ev), kGramClamp);
}

/// Coefficient matrix c_i c_j^* <w_j|w_i> where <w_0|w_1> = lambda.
Mat2 branch_coefficients(const std::array<Complex, 2> &c, Complex lambda) {
  Mat2 a;
  a << std::norm(c[0]), c[0] * std::conj(c[1]) * std::conj(lambda),
      c[1] * std::conj(c[0]) * lambda, std::norm(c[1]);
  return a;
}

void check_subset(const BranchModel &model, std::span<const std::size_t> subset) {
  std::vector<bool> seen(model.env_size(), false);
  for (std::size_t k : subset) {
    if (k >= model.env_size()) {
      throw InvalidArgument(
          fmt::format("environment index {} out of range for E = {}", k, model.env_size()));
    }
    if (seen[k]) {
      throw InvalidArgument(fmt::format("environment index {} listed twice", k));
    }
    seen[k] = true;
  }
}

void require_qubit_povm(const Povm &povm) {
  if (povm.dim() != 2) {
    throw InvalidArgument("branch model evaluation needs a POVM on a qubit system");
  }
}

InfoPoint with_fragment_meta(InfoPoint p, const BranchModel &model, std::size_t m) {
  p.fragment_size = m;
  p.fraction = model.env_size() == 0
                   ? 0.0
                   : static_cast<double>(m) / static_cast<double>(model.env_size());
  return p;
}

} // namespace

// -- BranchModel ------------------------------------------------------------

BranchModel::BranchModel(std::array<Complex, 2> amplitudes, std::vector<double> actions)
    : amplitudes_(amplitudes), actions_(std::move(actions)) {}

BranchModel BranchModel::create(std::array<Complex, 2> amplitudes, std::vector<double> actions) {
  const double norm = std::norm(amplitudes[0]) + std::norm(amplitudes[1]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvalidArgument(fmt::format("branch amplitudes not normalized (|c|^2 = {})", norm));
  }
  for (double t : actions) {
    if (!std::isfinite(t)) {
      throw InvalidArgument("actions must be finite");
    }
  }
  return BranchModel(amplitudes, std::move(actions));
}

BranchModel BranchModel::with_actions(std::vector<double> actions, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) {
    throw InvalidArgument(fmt::format("p0 = {} outside [0, 1]", p0));
  }
  return create({std::sqrt(p0), std::sqrt(1.0 - p0)}, std::move(actions));
}

BranchModel BranchModel::uniform(std::size_t env_size, double action, double p0) {
  return with_actions(std::vector<double>(env_size, action), p0);
}

std::array<double, 2> BranchModel::pointer_probabilities() const {
  return {std::norm(amplitudes_[0]), std::norm(amplitudes_[1])};
}

bool BranchModel::uniform_actions() const {
  return std::adjacent_find(actions_.begin(), actions_.end(), std::not_equal_to<>()) ==
         actions_.end();
}

// -- bases ------------------------------------------------------------------

Matrix RotatedBasis::basis() const {
  const double c = std::cos(0.5 * mu);
  const double s = std::sin(0.5 * mu);
  Matrix b(2, 2);
  b << Complex(c, 0.0), Complex(s, 0.0), Complex(0.0, s), Complex(0.0, -c);
  return b;
}

Povm make_rotated_povm(double mu) { return Povm::from_basis(RotatedBasis{mu}.basis(), {"+", "-"}); }

Matrix pointer_basis() { return Matrix::Identity(2, 2); }

// -- overlaps ---------------------------------------------------------------

Complex overlap(const BranchModel &model, std::span<const std::size_t> subset) {
  check_subset(model, subset);
  double product = 1.0;
  for (std::size_t k : subset) {
    product *= std::cos(model.actions()[k]);
  }
  return product;
}

std::vector<std::size_t> complement(const BranchModel &model,
                                    std::span<const std::size_t> subset) {
  check_subset(model, subset);
  std::vector<bool> in(model.env_size(), false);
  for (std::size_t k : subset) {
    in[k] = true;
  }
  std::vector<std::size_t> rest;
  rest.reserve(model.env_size() - subset.size());
  for (std::size_t k = 0; k < model.env_size(); ++k) {
    if (!in[k]) {
      rest.push_back(k);
    }
  }
  return rest;
}

// -- fast path --------------------------------------------------------------

BranchBreakdown fast_breakdown(const BranchModel &model, std::span<const std::size_t> subset,
                               const Povm &povm) {
  require_qubit_povm(povm);
  const auto rest = complement(model, subset);
  const auto &c = model.amplitudes();

  BranchBreakdown out;
  out.overlap_fragment = overlap(model, subset);
  out.overlap_rest = overlap(model, rest);
  const Complex lambda_env = out.overlap_fragment * out.overlap_rest;

  // rho_S and rho_SF live on orthonormal system kets, so their Gram matrix
  // is the identity. rho_F keeps only the diagonal branch weights.
  const Mat2 a_system = branch_coefficients(c, lambda_env);
  const Mat2 a_joint = branch_coefficients(c, out.overlap_rest);
  Mat2 a_fragment = Mat2::Zero();
  a_fragment(0, 0) = a_joint(0, 0);
  a_fragment(1, 1) = a_joint(1, 1);

  out.h_system = entropy2(hermitian2_eigenvalues(a_system));
  out.h_system_fragment = entropy2(hermitian2_eigenvalues(a_joint));
  out.h_fragment = entropy2(gram_spectrum(a_fragment, out.overlap_fragment));

  // p_s rho_{F|s} = sum_ij A_ij <j|pi_s|i> |f_i><f_j|.
  std::vector<double> outcome_probs;
  outcome_probs.reserve(povm.size());
  for (std::size_t s = 0; s < povm.size(); ++s) {
    const Matrix &pi = povm.element(s);
    Mat2 cond;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        cond(i, j) = a_joint(i, j) * pi(j, i);
      }
    }
    const auto ev = gram_spectrum(cond, out.overlap_fragment);
    const double p = std::max(0.0, ev[0] + ev[1]);
    if (p >= kNegligibleOutcome) {
      out.h_conditional += p * entropy2({ev[0] / p, ev[1] / p});
    }
    Complex p_system = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        p_system += a_system(i, j) * pi(j, i);
      }
    }
    outcome_probs.push_back(std::clamp(p_system.real(), 0.0, 1.0));
  }
  double total = 0.0;
  for (double p : outcome_probs) {
    total += p;
  }
  for (double &p : outcome_probs) {
    p /= total;
  }
  out.h_outcomes = shannon_entropy(outcome_probs);

  InfoPoint &point = out.point;
  point.mutual_information = out.h_system + out.h_fragment - out.h_system_fragment;
  point.holevo = out.h_fragment - out.h_conditional;
  point.discord = out.h_system - out.h_system_fragment + out.h_conditional;
  if (point.discord < -kDiscordSlack) {
    throw NumericalDiagnostic(fmt::format("negative discord {:.3e} beyond slack", point.discord));
  }
  point.povm_rank = povm.max_rank();
  point = with_fragment_meta(point, model, subset.size());
  return out;
}

InfoPoint fast_info_point(const BranchModel &model, std::span<const std::size_t> subset,
                          const Povm &povm) {
  return fast_breakdown(model, subset, povm).point;
}

// -- dense oracle -----------------------------------------------------------

PureStateVector dense_state(const BranchModel &model) {
  const std::size_t env = model.env_size();
  if (env > kDenseEnvCap) {
    throw CapExceeded(
        fmt::format("dense state requested for E = {} (cap {})", env, kDenseEnvCap));
  }
  const std::size_t env_dim = std::size_t{1} << env;
  Vector amps(static_cast<Eigen::Index>(2 * env_dim));
  std::vector<double> cos_half(env), sin_half(env);
  for (std::size_t k = 0; k < env; ++k) {
    cos_half[k] = std::cos(0.5 * model.actions()[k]);
    sin_half[k] = std::sin(0.5 * model.actions()[k]);
  }
  for (std::size_t branch = 0; branch < 2; ++branch) {
    const double sign = branch == 0 ? 1.0 : -1.0;
    for (std::size_t bits = 0; bits < env_dim; ++bits) {
      // Qubit k is the (k+1)-th most significant factor.
      double a = 1.0;
      for (std::size_t k = 0; k < env; ++k) {
        const bool one = (bits >> (env - 1 - k)) & 1U;
        a *= one ? sign * sin_half[k] : cos_half[k];
      }
      amps(static_cast<Eigen::Index>(branch * env_dim + bits)) = model.amplitudes()[branch] * a;
    }
  }
  return PureStateVector::normalized(std::move(amps), SubsystemLayout::qubits(env + 1));
}

InfoPoint dense_info_point(const BranchModel &model, std::span<const std::size_t> subset,
                           const Povm &povm) {
  require_qubit_povm(povm);
  check_subset(model, subset);
  if (subset.size() > kDenseFragmentCap) {
    throw CapExceeded(fmt::format("dense fragment of {} qubits exceeds cap {}", subset.size(),
                                  kDenseFragmentCap));
  }
  const PureStateVector psi = dense_state(model);
  std::vector<std::size_t> fragment;
  fragment.reserve(subset.size());
  for (std::size_t k : subset) {
    fragment.push_back(k + 1);
  }
  std::sort(fragment.begin(), fragment.end());
  return with_fragment_meta(info_point_pure(psi, fragment, povm), model, subset.size());
}

// -- imperfect records ----------------------------------------------------------

double helstrom_error(Complex overlap) {
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - std::norm(overlap))));
}

double alicki_fannes_bound(double eps, std::size_t outcomes) {
  const double root = std::sqrt(std::max(0.0, eps));
  const double x = 2.0 * root;
  const double h = x >= 0.5 ? 1.0 : binary_entropy(x);
  return 8.0 * root * std::log2(static_cast<double>(outcomes)) + 2.0 * h;
}

} // namespace darwinlab
