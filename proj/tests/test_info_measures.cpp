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

#include <vector>

#include "darwinlab/branch_model.hpp"
#include "darwinlab/harness.hpp"
#include "darwinlab/info_measures.hpp"
#include "test_support.hpp"

using namespace darwinlab;
using namespace darwinlab::test;

namespace {

Povm pointer_pvm() { return Povm::from_basis(Matrix::Identity(2, 2)); }

Povm uninformative(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return Povm::validated(std::vector<Matrix>(d, Matrix::Identity(n, n) / static_cast<double>(d)));
}

/// sum_s p_s |s><s| (x) |f_s><f_s| with the given fragment kets.
DensityMatrix surplus_state(double p0, const Vector &f0, const Vector &f1) {
  const auto d = f0.size();
  Matrix rho = Matrix::Zero(2 * d, 2 * d);
  rho.block(0, 0, d, d) = p0 * f0 * f0.adjoint();
  rho.block(d, d, d, d) = (1.0 - p0) * f1 * f1.adjoint();
  return DensityMatrix::validated(rho, SubsystemLayout({2, static_cast<std::size_t>(d)}));
}

} // namespace

TEST_CASE("mutual information") {
  SUBCASE("product state carries none") {
    Rng rng(1);
    const auto rho = tensor_product(random_mixed_state(SubsystemLayout({2}), rng),
                                    random_mixed_state(SubsystemLayout({3}), rng));
    CHECK_NEAR(mutual_information(rho), 0.0, 1e-12);
  }
  SUBCASE("Bell state carries two bits") {
    CHECK_NEAR(mutual_information(bell_state().projector()), 2.0, 1e-12);
  }
  SUBCASE("orthogonal records carry one bit") {
    const auto rho = surplus_state(0.5, ket({1.0, 0.0}), ket({0.0, 1.0}));
    CHECK_NEAR(mutual_information(rho), 1.0, 1e-12);
  }
  SUBCASE("requires a split") {
    CHECK_THROWS_AS(mutual_information(DensityMatrix::maximally_mixed(SubsystemLayout({4}))),
                    InvalidArgument);
  }
  SUBCASE("bounded by twice the smaller log dimension") {
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
      const auto rho = random_mixed_state(SubsystemLayout({2, 5}), rng);
      const double mi = mutual_information(rho);
      CHECK(mi >= -1e-9);
      CHECK(mi <= 2.0 + 1e-9);
    }
  }
}

TEST_CASE("conditional states") {
  SUBCASE("Bell state under the pointer measurement") {
    const auto e = conditional_states(bell_state().projector(), pointer_pvm());
    REQUIRE(e.outcomes.size() == 2);
    CHECK_NEAR(e.outcomes[0].probability, 0.5, 1e-14);
    CHECK(max_abs(e.outcomes[0].state->matrix() - diag2(1, 0)) < 1e-14);
    CHECK(max_abs(e.outcomes[1].state->matrix() - diag2(0, 1)) < 1e-14);
  }
  SUBCASE("uninformative POVM returns the fragment state") {
    Rng rng(3);
    const auto rho = random_mixed_state(SubsystemLayout({2, 3}), rng);
    const std::size_t f[] = {1};
    const Matrix rho_f = partial_trace(rho, f).matrix();
    const auto e = conditional_states(rho, uninformative(2));
    for (const auto &o : e.outcomes) {
      CHECK_NEAR(o.probability, 0.5, 1e-12);
      CHECK(max_abs(o.state->matrix() - rho_f) < 1e-12);
    }
  }
  SUBCASE("mixture reproduces the fragment state") {
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
      const auto rho = random_mixed_state(SubsystemLayout({3, 4}), rng);
      const auto e = conditional_states(rho, random_general_povm(3, rng));
      const std::size_t f[] = {1};
      CHECK(max_abs(e.mixture() - partial_trace(rho, f).matrix()) < 1e-10);
      double total = 0.0;
      for (const auto &o : e.outcomes) {
        total += o.probability;
      }
      CHECK_NEAR(total, 1.0, 1e-10);
    }
  }
  SUBCASE("complementary POVM on a surplus-decoherence state") {
    // Every conditional equals rho_F and p_s = q_s.
    const auto rho = surplus_state(0.3, ket({1.0, 0.0}), ket({0.6, 0.8}));
    const auto e = conditional_states(rho, make_rotated_povm(kPi / 2));
    const std::size_t f[] = {1};
    const Matrix rho_f = partial_trace(rho, f).matrix();
    for (const auto &o : e.outcomes) {
      CHECK_NEAR(o.probability, 0.5, 1e-14);
      CHECK(max_abs(o.state->matrix() - rho_f) < 1e-14);
    }
  }
  SUBCASE("negligible outcomes carry no state") {
    const auto rho = surplus_state(1.0, ket({1.0, 0.0}), ket({0.0, 1.0}));
    const auto e = conditional_states(rho, pointer_pvm());
    CHECK(e.outcomes[0].state.has_value());
    CHECK_FALSE(e.outcomes[1].state.has_value());
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(conditional_states(bell_state().projector(), uninformative(3)),
                    InvalidArgument);
  }
}

TEST_CASE("Holevo quantity and discord") {
  const auto bell = bell_state().projector();
  CHECK_NEAR(holevo(bell, pointer_pvm()), 1.0, 1e-12);
  CHECK_NEAR(discord(bell, pointer_pvm()), 1.0, 1e-12);
  CHECK_NEAR(holevo(bell, uninformative(2)), 0.0, 1e-12);

  SUBCASE("Bell discord is one bit for any orthonormal basis") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
      CHECK_NEAR(discord(bell, random_rank_one_povm(2, rng)), 1.0, 1e-9);
    }
  }
  SUBCASE("classical-classical state has no discord") {
    const auto rho = surplus_state(0.4, ket({1.0, 0.0}), ket({0.0, 1.0}));
    CHECK_NEAR(discord(rho, pointer_pvm()), 0.0, 1e-12);
  }
  SUBCASE("surplus-decoherence state") {
    const auto rho = surplus_state(0.5, ket({1.0, 0.0}), ket({0.6, 0.8}));
    CHECK_NEAR(discord(rho, pointer_pvm()), 0.0, 1e-12);
    CHECK_NEAR(holevo(rho, make_rotated_povm(kPi / 2)), 0.0, 1e-12);
  }
  SUBCASE("uninformative POVM: chi = 0 and D = I") {
    Rng rng(6);
    const auto rho = random_mixed_state(SubsystemLayout({3, 2}), rng);
    const InfoPoint p = info_point(rho, uninformative(3));
    CHECK_NEAR(p.holevo, 0.0, 1e-12);
    CHECK_NEAR(p.discord, p.mutual_information, 1e-12);
  }
  SUBCASE("holevo bounded by the outcome entropy") {
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
      const auto rho = random_mixed_state(SubsystemLayout({2, 4}), rng);
      const Povm povm = random_rank_one_povm(2, rng);
      const auto e = conditional_states(rho, povm);
      std::vector<double> p;
      for (const auto &o : e.outcomes) {
        p.push_back(o.probability);
      }
      const double chi = holevo(rho, povm);
      CHECK(chi >= -1e-9);
      CHECK(chi <= shannon_entropy(p) + 1e-9);
    }
  }
}

TEST_CASE("info point conservation and rank bookkeeping") {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_mixed_state(SubsystemLayout({2, 3}), rng);
    const Povm povm = i % 2 ? random_general_povm(2, rng) : random_rank_one_povm(2, rng);
    const InfoPoint p = info_point(rho, povm);
    CHECK_NEAR(p.mutual_information, p.holevo + p.discord, 1e-9);
    CHECK(p.discord >= -1e-9);
    CHECK(p.povm_rank == povm.max_rank());
  }
}

TEST_CASE("pure-state route matches the density-matrix route") {
  Rng rng(9);
  for (int i = 0; i < 15; ++i) {
    const SubsystemLayout layout({2, 2, 3, 2});
    const auto psi = random_pure_state(layout, rng);
    const Povm povm = i % 3 == 0 ? random_general_povm(2, rng) : random_rank_one_povm(2, rng);
    const std::size_t f[] = {1, 3};
    const InfoPoint fast = info_point_pure(psi, f, povm);
    const InfoPoint slow = info_point(system_fragment_state(psi.projector(), f), povm);
    CHECK_NEAR(fast.mutual_information, slow.mutual_information, 1e-10);
    CHECK_NEAR(fast.holevo, slow.holevo, 1e-10);
    CHECK_NEAR(fast.discord, slow.discord, 1e-10);
  }
  const std::size_t bad[] = {0};
  CHECK_THROWS_AS(info_point_pure(bell_state(), bad, pointer_pvm()), InvalidArgument);
}

TEST_CASE("plateau formula") {
  const double half[] = {0.5, 0.5};
  CHECK_NEAR(plateau_chi(half, make_rotated_povm(0.0), pointer_basis()), 1.0, 1e-14);
  CHECK_NEAR(plateau_chi(half, make_rotated_povm(kPi / 2), pointer_basis()), 0.0, 1e-14);
  CHECK_NEAR(plateau_chi(half, make_rotated_povm(kPi / 3), pointer_basis()), kPlateauPi3, 1e-14);
  Matrix skewed = Matrix::Identity(2, 2);
  skewed(0, 1) = 0.3;
  CHECK_THROWS_AS(plateau_chi(half, make_rotated_povm(0.0), skewed), InvalidArgument);
}

TEST_CASE("complementarity test") {
  const Complementarity y = is_complementary(make_rotated_povm(kPi / 2), pointer_basis());
  CHECK(y.complementary);
  REQUIRE(y.weights.size() == 2);
  CHECK_NEAR(y.weights[0], 0.5, 1e-15);
  CHECK_NEAR(y.weights[1], 0.5, 1e-15);
  CHECK_FALSE(is_complementary(make_rotated_povm(0.0), pointer_basis()).complementary);
  CHECK_FALSE(is_complementary(make_rotated_povm(kPi / 3), pointer_basis()).complementary);
  CHECK(is_complementary(uninformative(2), pointer_basis()).complementary);
}

TEST_CASE("measured state") {
  SUBCASE("surplus-decoherence state is unchanged by the pointer measurement") {
    const auto rho = surplus_state(0.3, ket({1.0, 0.0}), ket({0.6, 0.8}));
    CHECK(max_abs(measured_state(rho, pointer_pvm()).matrix() - rho.matrix()) < 1e-15);
  }
  SUBCASE("Bell state becomes classically correlated") {
    const auto m = measured_state(bell_state().projector(), pointer_pvm());
    CHECK_NEAR(mutual_information(m), 1.0, 1e-12);
    CHECK(std::abs(m.matrix()(0, 3)) < 1e-15);
  }
  SUBCASE("trivial POVM") {
    Rng rng(10);
    const auto rho = random_mixed_state(SubsystemLayout({2, 2}), rng);
    const Povm trivial = Povm::validated({Matrix::Identity(2, 2)});
    CHECK(max_abs(measured_state(rho, trivial).matrix() - rho.matrix()) < 1e-14);
  }
  SUBCASE("measurement never increases mutual information") {
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
      const auto rho = random_mixed_state(SubsystemLayout({3, 3}), rng);
      const Povm povm = random_general_povm(3, rng);
      CHECK(mutual_information(measured_state(rho, povm)) <= mutual_information(rho) + 1e-9);
    }
  }
}

TEST_CASE("fragment helpers") {
  const SubsystemLayout layout({2, 2, 3, 2});
  const std::size_t f[] = {2};
  CHECK(complement_fragment(layout, f) == std::vector<std::size_t>{1, 3});
  Rng rng(12);
  const auto rho = random_mixed_state(layout, rng);
  CHECK(system_fragment_state(rho, f).layout() == SubsystemLayout({2, 3}));
  CHECK(system_fragment_state(rho, std::span<const std::size_t>{}).layout() ==
        SubsystemLayout({2, 1}));
  const std::size_t with_system[] = {0, 1};
  CHECK_THROWS_AS(system_fragment_state(rho, with_system), InvalidArgument);
  CHECK_NEAR(outcome_entropy(DensityMatrix::maximally_mixed(SubsystemLayout({2})), pointer_pvm()),
             1.0, 1e-15);
}
