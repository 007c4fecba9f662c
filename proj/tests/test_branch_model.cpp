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

#include <numeric>
#include <vector>

#include "darwinlab/branch_model.hpp"
#include "darwinlab/harness.hpp"
#include "test_support.hpp"

using namespace darwinlab;
using namespace darwinlab::test;

namespace {

std::vector<std::size_t> range(std::size_t m) {
  std::vector<std::size_t> v(m);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

/// Heterogeneous reference model shared with the numpy oracle.
BranchModel reference_model() {
  return BranchModel::create({std::sqrt(0.3), std::sqrt(0.7) * std::polar(1.0, 0.4)},
                             {0.3, 0.9, 1.4, 2.2});
}

} // namespace

TEST_CASE("model construction") {
  const BranchModel m = BranchModel::uniform(3, 1.0);
  CHECK(m.env_size() == 3);
  CHECK(m.uniform_actions());
  CHECK_NEAR(m.pointer_probabilities()[0], 0.5, 1e-15);
  CHECK_FALSE(reference_model().uniform_actions());
  CHECK_THROWS_AS(BranchModel::create({1.0, 1.0}, {}), InvalidArgument);
  CHECK_THROWS_AS(BranchModel::with_actions({}, 1.5), InvalidArgument);
}

TEST_CASE("rotated POVM") {
  const Complex i(0.0, 1.0);
  SUBCASE("mu = 0 is the pointer measurement") {
    const Povm p = make_rotated_povm(0.0);
    CHECK(max_abs(p.element(0) - diag2(1, 0)) < 1e-15);
    CHECK(max_abs(p.element(1) - diag2(0, 1)) < 1e-15);
    CHECK(p.label(0) == "+");
  }
  SUBCASE("mu = pi/2 is the sigma_y eigenbasis") {
    const Povm p = make_rotated_povm(kPi / 2);
    Matrix sy(2, 2);
    sy << 0.0, -i, i, 0.0;
    CHECK(max_abs(sy * p.element(0) - p.element(0)) < 1e-15);
    CHECK(max_abs(sy * p.element(1) + p.element(1)) < 1e-15);
    CHECK(is_complementary(p, pointer_basis()).complementary);
  }
  SUBCASE("mu = pi swaps the pointer labels") {
    const Povm p = make_rotated_povm(kPi);
    CHECK(max_abs(p.element(0) - diag2(0, 1)) < 1e-15);
    CHECK(max_abs(p.element(1) - diag2(1, 0)) < 1e-15);
  }
  SUBCASE("basis is orthonormal for any angle") {
    for (double mu : {-2.0, 0.1, 0.7, 3.0, 5.5}) {
      const Matrix b = RotatedBasis{mu}.basis();
      CHECK(max_abs(b.adjoint() * b - Matrix::Identity(2, 2)) < 1e-12);
    }
  }
}

TEST_CASE("overlaps") {
  const BranchModel model = BranchModel::with_actions({0.2, kPi / 2, kPi / 3, kPi / 3});
  const std::size_t with_right_angle[] = {0, 1};
  CHECK(std::abs(overlap(model, with_right_angle)) < 1e-16);
  const std::size_t two[] = {2, 3};
  CHECK_NEAR(overlap(model, two).real(), 0.25, 1e-15);
  CHECK(overlap(model, {}) == Complex(1.0));
  const BranchModel uniform = BranchModel::uniform(10, 0.4);
  CHECK_NEAR(overlap(uniform, range(7)).real(), std::pow(std::cos(0.4), 7), 1e-15);
  const std::size_t dup[] = {1, 1};
  CHECK_THROWS_AS(overlap(model, dup), InvalidArgument);
  const std::size_t out_of_range[] = {4};
  CHECK_THROWS_AS(overlap(model, out_of_range), InvalidArgument);
  const std::size_t one[] = {2};
  CHECK(complement(model, one) == std::vector<std::size_t>{0, 1, 3});
}

TEST_CASE("fast path reference values") {
  SUBCASE("perfect one-qubit record at E = 100") {
    const BranchModel model = BranchModel::uniform(100, kPi / 2);
    const InfoPoint p = fast_info_point(model, range(1), make_rotated_povm(0.0));
    CHECK_NEAR(p.mutual_information, 1.0, 1e-12);
    CHECK_NEAR(p.holevo, 1.0, 1e-12);
    CHECK_NEAR(p.discord, 0.0, 1e-12);
    CHECK(p.fragment_size == 1);
    CHECK_NEAR(p.fraction, 0.01, 1e-15);
  }
  SUBCASE("T = pi/3, E = 2, m = 1") {
    const BranchModel model = BranchModel::uniform(2, kPi / 3);
    const BranchBreakdown b = fast_breakdown(model, range(1), make_rotated_povm(0.0));
    CHECK_NEAR(b.h_system, kH58, 1e-12);
    CHECK_NEAR(b.h_fragment, kH34, 1e-12);
    CHECK_NEAR(b.h_system_fragment, kH34, 1e-12);
    CHECK_NEAR(b.point.mutual_information, 0.954434002924965, 1e-12);
    CHECK_NEAR(b.point.holevo, 0.8112781244591327, 1e-12);
    CHECK_NEAR(b.point.discord, 0.14315587846583233, 1e-12);
  }
  SUBCASE("same model in the complementary basis") {
    const BranchModel model = BranchModel::uniform(2, kPi / 3);
    const InfoPoint p = fast_info_point(model, range(1), make_rotated_povm(kPi / 2));
    CHECK_NEAR(p.holevo, 0.15522056148641794, 1e-12);
    CHECK_NEAR(p.discord, 0.7992134414385471, 1e-12);
    // The gap to the pointer chi is controlled by |overlap(E/F)| = 1/2.
    CHECK(std::abs(p.discord - kH34) <= 10.0 * 0.5);
  }
  SUBCASE("heterogeneous actions with a complex amplitude") {
    const std::size_t f[] = {1, 3};
    const InfoPoint p = fast_info_point(reference_model(), f, make_rotated_povm(0.5));
    CHECK_NEAR(p.mutual_information, 0.8081597812836223, 1e-12);
    CHECK_NEAR(p.holevo, 0.5259005834415089, 1e-12);
    CHECK_NEAR(p.discord, 0.2822591978421134, 1e-12);
  }
  SUBCASE("whole environment") {
    const InfoPoint p = fast_info_point(reference_model(), range(4), make_rotated_povm(1.1));
    CHECK_NEAR(p.mutual_information, 1.7580504979823324, 1e-12);
    CHECK_NEAR(p.holevo, 0.8790252489911666, 1e-12);
    CHECK_NEAR(p.discord, 0.8790252489911657, 1e-12);
  }
  SUBCASE("rejects a non-qubit POVM") {
    const Povm qutrit = Povm::from_basis(Matrix::Identity(3, 3));
    CHECK_THROWS_AS(fast_info_point(BranchModel::uniform(2, 1.0), range(1), qutrit),
                    InvalidArgument);
  }
}

TEST_CASE("dense state") {
  SUBCASE("one environment qubit at T = pi/2") {
    const PureStateVector psi = dense_state(BranchModel::uniform(1, kPi / 2));
    const double h = 0.5;
    CHECK(psi.amplitudes().isApprox(ket({h, h, h, -h}), 1e-15));
  }
  SUBCASE("empty environment is the bare system") {
    const PureStateVector psi = dense_state(BranchModel::with_actions({}, 0.25));
    CHECK(psi.layout() == SubsystemLayout({2}));
    CHECK_NEAR(psi.amplitudes()(0).real(), 0.5, 1e-15);
  }
  SUBCASE("unit norm for random models") {
    Rng rng(1);
    for (int i = 0; i < 10; ++i) {
      CHECK_NEAR(dense_state(random_branch_model(8, rng)).amplitudes().norm(), 1.0, 1e-12);
    }
  }
  SUBCASE("caps") {
    CHECK_THROWS_AS(dense_state(BranchModel::uniform(17, 1.0)), CapExceeded);
    CHECK_THROWS_AS(dense_info_point(BranchModel::uniform(16, 1.0), range(13),
                                     make_rotated_povm(0.0)),
                    CapExceeded);
  }
}

TEST_CASE("dense oracle reference values") {
  SUBCASE("Bell-like state") {
    const InfoPoint p =
        dense_info_point(BranchModel::uniform(1, kPi / 2), range(1), make_rotated_povm(0.0));
    CHECK_NEAR(p.mutual_information, 2.0, 1e-12);
    CHECK_NEAR(p.holevo, 1.0, 1e-12);
    CHECK_NEAR(p.discord, 1.0, 1e-12);
  }
  SUBCASE("empty fragment") {
    const InfoPoint p = dense_info_point(reference_model(), {}, make_rotated_povm(0.3));
    CHECK_NEAR(p.mutual_information, 0.0, 1e-12);
    CHECK_NEAR(p.holevo, 0.0, 1e-12);
    CHECK_NEAR(p.discord, 0.0, 1e-12);
  }
  SUBCASE("heterogeneous reference model") {
    const std::size_t f[] = {1, 3};
    const InfoPoint p = dense_info_point(reference_model(), f, make_rotated_povm(0.5));
    CHECK_NEAR(p.holevo, 0.5259005834415089, 1e-12);
  }
}

TEST_CASE("fast path equals the dense oracle") {
  Rng rng(2);
  for (int i = 0; i < 40; ++i) {
    const BranchModel model = random_branch_model(8, rng);
    const Povm povm = i % 2 ? random_general_povm(2, rng) : make_rotated_povm(0.37 * i);
    for (std::size_t m = 0; m <= model.env_size(); ++m) {
      const auto subset = range(m);
      const InfoPoint a = fast_info_point(model, subset, povm);
      const InfoPoint b = dense_info_point(model, subset, povm);
      CHECK_NEAR(a.mutual_information, b.mutual_information, 1e-9);
      CHECK_NEAR(a.holevo, b.holevo, 1e-9);
      CHECK_NEAR(a.discord, b.discord, 1e-9);
    }
  }
}

TEST_CASE("uniform actions make subsets interchangeable") {
  const BranchModel model = BranchModel::uniform(12, 0.8);
  const Povm povm = make_rotated_povm(0.6);
  const InfoPoint a = fast_info_point(model, range(4), povm);
  const std::size_t other[] = {2, 5, 7, 11};
  const std::size_t spread[] = {0, 3, 8, 10};
  for (const auto &s : {std::span<const std::size_t>(other), std::span<const std::size_t>(spread)}) {
    const InfoPoint b = fast_info_point(model, s, povm);
    CHECK(a.holevo == b.holevo);
    CHECK(a.discord == b.discord);
  }
}

TEST_CASE("pointer chi grows with the fragment") {
  for (double t : {0.2, 0.7, 1.2, kPi / 2}) {
    const BranchModel model = BranchModel::uniform(30, t);
    double previous = -1.0;
    for (std::size_t m = 0; m <= 30; ++m) {
      const double chi = fast_info_point(model, range(m), make_rotated_povm(0.0)).holevo;
      CHECK(chi >= previous - 1e-12);
      previous = chi;
    }
  }
}

TEST_CASE("imperfect records") {
  CHECK_NEAR(helstrom_error(0.0), 0.0, 1e-16);
  CHECK_NEAR(helstrom_error(1.0), 0.5, 1e-16);
  CHECK_NEAR(helstrom_error(0.6), 0.1, 1e-15);
  // 2 sqrt(0.01) = 0.2 and H(0.2) = 0.721928094887362347870319429489.
  CHECK_NEAR(alicki_fannes_bound(0.01, 2), 0.8 + 2.0 * 0.721928094887362347870319429489, 1e-12);
  CHECK_NEAR(alicki_fannes_bound(0.1, 2), 8.0 * std::sqrt(0.1) + 2.0, 1e-12);
  CHECK_NEAR(alicki_fannes_bound(0.0, 2), 0.0, 1e-16);
  // H saturates once 2 sqrt(eps) reaches 1/2.
  CHECK_NEAR(alicki_fannes_bound(0.0625, 4), 8.0 * 0.25 * 2.0 + 2.0, 1e-14);
}
