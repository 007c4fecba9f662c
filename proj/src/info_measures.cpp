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

#include "darwinlab/info_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace darwinlab {

namespace {

void require_split(const DensityMatrix &rho_sf) {
  if (rho_sf.layout().size() < 2) {
    throw InvalidArgument("state has no system/fragment split (need at least two subsystems)");
  }
}

void require_povm_on_system(const DensityMatrix &rho_sf, const Povm &povm) {
  if (povm.dim() != rho_sf.layout().dim(0)) {
    throw InvalidArgument(fmt::format("POVM dimension {} does not match system dimension {}",
                                      povm.dim(), rho_sf.layout().dim(0)));
  }
}

std::vector<std::size_t> fragment_indices(const SubsystemLayout &layout) {
  std::vector<std::size_t> f(layout.size() - 1);
  std::iota(f.begin(), f.end(), std::size_t{1});
  return f;
}

double system_entropy(const DensityMatrix &rho_sf) {
  const std::size_t s[] = {0};
  return von_neumann_entropy(partial_trace(rho_sf, s));
}

double checked_discord(double value) {
  if (value < -kDiscordSlack) {
    throw NumericalDiagnostic(fmt::format("negative discord {:.3e} beyond slack", value));
  }
  return value;
}

void require_orthonormal(const Matrix &basis) {
  if (basis.rows() != basis.cols()) {
    throw InvalidArgument("pointer basis must be square");
  }
  const double dev =
      (basis.adjoint() * basis - Matrix::Identity(basis.rows(), basis.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw InvalidArgument(fmt::format("pointer basis not orthonormal (deviation {:.3e})", dev));
  }
}

} // namespace

Matrix ConditionalEnsemble::mixture() const {
  Matrix sum;
  for (const auto &o : outcomes) {
    if (!o.state) {
      continue;
    }
    if (sum.size() == 0) {
      sum = o.probability * o.state->matrix();
    } else {
      sum += o.probability * o.state->matrix();
    }
  }
  return sum;
}

double ConditionalEnsemble::average_entropy() const {
  double h = 0.0;
  for (const auto &o : outcomes) {
    if (o.state) {
      h += o.probability * von_neumann_entropy(*o.state);
    }
  }
  return h;
}

double mutual_information(const DensityMatrix &rho_sf) {
  require_split(rho_sf);
  const auto f = fragment_indices(rho_sf.layout());
  return system_entropy(rho_sf) + von_neumann_entropy(partial_trace(rho_sf, f)) -
         von_neumann_entropy(rho_sf);
}

ConditionalEnsemble conditional_states(const DensityMatrix &rho_sf, const Povm &povm) {
  require_split(rho_sf);
  require_povm_on_system(rho_sf, povm);
  const auto f = fragment_indices(rho_sf.layout());
  ConditionalEnsemble ensemble;
  ensemble.outcomes.reserve(povm.size());
  for (std::size_t s = 0; s < povm.size(); ++s) {
    const Matrix measured =
        conjugate_local(povm.sqrt_element(s), rho_sf.matrix(), rho_sf.layout(), 0);
    const DensityMatrix joint = DensityMatrix::assume_valid(measured, rho_sf.layout());
    const DensityMatrix unnormalized = partial_trace(joint, f);
    const double p = std::max(0.0, unnormalized.trace().real());
    ConditionalOutcome outcome{p, std::nullopt};
    if (p >= kNegligibleOutcome) {
      outcome.state =
          DensityMatrix::assume_valid(unnormalized.matrix() / p, unnormalized.layout());
    }
    ensemble.outcomes.push_back(std::move(outcome));
  }
  return ensemble;
}

double holevo(const DensityMatrix &rho_sf, const Povm &povm) {
  const ConditionalEnsemble ensemble = conditional_states(rho_sf, povm);
  return von_neumann_entropy(ensemble.mixture()) - ensemble.average_entropy();
}

double discord(const DensityMatrix &rho_sf, const Povm &povm) {
  const ConditionalEnsemble ensemble = conditional_states(rho_sf, povm);
  return checked_discord(system_entropy(rho_sf) - von_neumann_entropy(rho_sf) +
                         ensemble.average_entropy());
}

InfoPoint info_point(const DensityMatrix &rho_sf, const Povm &povm) {
  require_split(rho_sf);
  const auto f = fragment_indices(rho_sf.layout());
  const ConditionalEnsemble ensemble = conditional_states(rho_sf, povm);
  const double h_s = system_entropy(rho_sf);
  const double h_f = von_neumann_entropy(partial_trace(rho_sf, f));
  const double h_sf = von_neumann_entropy(rho_sf);
  const double h_cond = ensemble.average_entropy();

  InfoPoint point;
  point.mutual_information = h_s + h_f - h_sf;
  point.holevo = von_neumann_entropy(ensemble.mixture()) - h_cond;
  point.discord = checked_discord(h_s - h_sf + h_cond);
  point.povm_rank = povm.max_rank();
  return point;
}

InfoPoint info_point_pure(const PureStateVector &psi, std::span<const std::size_t> fragment,
                          const Povm &povm) {
  const SubsystemLayout &layout = psi.layout();
  if (layout.size() < 1 || povm.dim() != layout.dim(0)) {
    throw InvalidArgument("POVM dimension does not match system subsystem");
  }
  for (std::size_t k : fragment) {
    if (k == 0 || k >= layout.size()) {
      throw InvalidArgument(fmt::format("fragment index {} is not an environment subsystem", k));
    }
  }
  const std::size_t system[] = {0};
  std::vector<std::size_t> joint{0};
  joint.insert(joint.end(), fragment.begin(), fragment.end());

  const Vector &amps = psi.amplitudes();
  const double h_s = reduced_entropy(amps, layout, system);
  const double h_f = reduced_entropy(amps, layout, fragment);
  const double h_sf = reduced_entropy(amps, layout, joint);

  // (sqrt(pi_s) x I)|psi> is a pure vector whose reduction to F is p_s rho_{F|s}.
  double h_cond = 0.0;
  for (std::size_t s = 0; s < povm.size(); ++s) {
    const Vector branch = apply_local(povm.sqrt_element(s), amps, layout, 0);
    const double p = branch.squaredNorm();
    if (p >= kNegligibleOutcome) {
      h_cond += p * reduced_entropy(branch, layout, fragment);
    }
  }

  InfoPoint point;
  point.fragment_size = fragment.size();
  point.mutual_information = h_s + h_f - h_sf;
  point.holevo = h_f - h_cond;
  point.discord = checked_discord(h_s - h_sf + h_cond);
  point.povm_rank = povm.max_rank();
  return point;
}

double plateau_chi(std::span<const double> pointer_probs, const Povm &povm,
                   const Matrix &pointer_basis) {
  require_orthonormal(pointer_basis);
  const auto d = static_cast<std::size_t>(pointer_basis.rows());
  if (pointer_probs.size() != d || povm.dim() != d) {
    throw InvalidArgument("pointer probabilities, basis and POVM must share a dimension");
  }
  std::vector<double> p_s(povm.size(), 0.0);
  double conditional = 0.0;
  for (std::size_t hat = 0; hat < d; ++hat) {
    const auto col = pointer_basis.col(static_cast<Eigen::Index>(hat));
    std::vector<double> given(povm.size());
    for (std::size_t s = 0; s < povm.size(); ++s) {
      given[s] = std::max(0.0, (col.adjoint() * povm.element(s) * col)(0, 0).real());
      p_s[s] += given[s] * pointer_probs[hat];
    }
    if (pointer_probs[hat] > 0.0) {
      conditional += pointer_probs[hat] * shannon_entropy(given);
    }
  }
  return shannon_entropy(p_s) - conditional;
}

Complementarity is_complementary(const Povm &povm, const Matrix &pointer_basis) {
  require_orthonormal(pointer_basis);
  if (povm.dim() != static_cast<std::size_t>(pointer_basis.rows())) {
    throw InvalidArgument("POVM and pointer basis dimensions differ");
  }
  Complementarity out;
  const Eigen::Index d = pointer_basis.rows();
  for (std::size_t s = 0; s < povm.size(); ++s) {
    std::vector<double> diag(static_cast<std::size_t>(d));
    for (Eigen::Index hat = 0; hat < d; ++hat) {
      const auto col = pointer_basis.col(hat);
      diag[static_cast<std::size_t>(hat)] = (col.adjoint() * povm.element(s) * col)(0, 0).real();
    }
    const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
    out.max_bias = std::max(out.max_bias, *hi - *lo);
    out.weights.push_back(std::accumulate(diag.begin(), diag.end(), 0.0) /
                          static_cast<double>(d));
  }
  out.complementary = out.max_bias < 1e-10;
  return out;
}

DensityMatrix measured_state(const DensityMatrix &rho_sf, const Povm &povm) {
  require_split(rho_sf);
  require_povm_on_system(rho_sf, povm);
  Matrix sum = Matrix::Zero(rho_sf.matrix().rows(), rho_sf.matrix().cols());
  for (std::size_t s = 0; s < povm.size(); ++s) {
    sum += conjugate_local(povm.sqrt_element(s), rho_sf.matrix(), rho_sf.layout(), 0);
  }
  return DensityMatrix::assume_valid(std::move(sum), rho_sf.layout());
}

DensityMatrix system_fragment_state(const DensityMatrix &rho_se,
                                    std::span<const std::size_t> fragment) {
  std::vector<std::size_t> keep{0};
  for (std::size_t k : fragment) {
    if (k == 0) {
      throw InvalidArgument("fragment may not contain the system");
    }
    keep.push_back(k);
  }
  const DensityMatrix reduced = partial_trace(rho_se, keep);
  const std::size_t d_s = rho_se.layout().dim(0);
  return reduced.relabel(SubsystemLayout({d_s, reduced.dim() / d_s}));
}

std::vector<std::size_t> complement_fragment(const SubsystemLayout &layout,
                                             std::span<const std::size_t> fragment) {
  std::vector<bool> in(layout.size(), false);
  for (std::size_t k : fragment) {
    in.at(k) = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 1; k < layout.size(); ++k) {
    if (!in[k]) {
      rest.push_back(k);
    }
  }
  return rest;
}

double outcome_entropy(const DensityMatrix &rho_s, const Povm &povm) {
  if (povm.dim() != rho_s.dim()) {
    throw InvalidArgument("POVM dimension does not match state");
  }
  std::vector<double> p(povm.size());
  double total = 0.0;
  for (std::size_t s = 0; s < povm.size(); ++s) {
    p[s] = std::max(0.0, (povm.element(s) * rho_s.matrix()).trace().real());
    total += p[s];
  }
  for (double &x : p) {
    x /= total;
  }
  return shannon_entropy(p);
}

} // namespace darwinlab
