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

#include <cstdint>
#include <limits>

#include "darwinlab/sweep.hpp"
#include "test_support.hpp"

using namespace darwinlab;
using namespace darwinlab::test;

namespace {

BranchModel reference_model() {
  return BranchModel::create({std::sqrt(0.3), std::sqrt(0.7) * std::polar(1.0, 0.4)},
                             {0.3, 0.9, 1.4, 2.2});
}

AveragingOptions with(AveragingStrategy s, std::size_t threads = 1, std::uint64_t seed = 0) {
  AveragingOptions o;
  o.strategy = s;
  o.threads = threads;
  o.seed = seed;
  return o;
}

} // namespace

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(100, 0) == 1);
  CHECK(binomial(100, 100) == 1);
  CHECK(binomial(100, 3) == 161700);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(200, 100) == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("strategy names round-trip") {
  for (auto s : {AveragingStrategy::Auto, AveragingStrategy::Exhaustive,
                 AveragingStrategy::MonteCarlo, AveragingStrategy::Single}) {
    CHECK(parse_averaging(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_averaging("sometimes"), InvalidArgument);
  CHECK(parse_redundancy_mode("chi") == RedundancyMode::Holevo);
  CHECK(parse_redundancy_mode("mi") == RedundancyMode::MutualInformation);
  CHECK_THROWS_AS(parse_redundancy_mode("discord"), InvalidArgument);
}

TEST_CASE("fragment averaging") {
  const Povm povm = make_rotated_povm(0.5);

  SUBCASE("exhaustive mean over heterogeneous fragments") {
    const AveragedPoint a =
        evaluate_fragment(reference_model(), FragmentSpec::of_size(2, with(AveragingStrategy::Auto)),
                          povm);
    CHECK(a.strategy == AveragingStrategy::Exhaustive);
    CHECK(a.subsets == 6);
    CHECK(a.exact);
    CHECK_NEAR(a.point.mutual_information, 0.8790252489911663, 1e-12);
    CHECK_NEAR(a.point.holevo, 0.5492657485203444, 1e-12);
    CHECK_NEAR(a.point.discord, 0.32975950047082175, 1e-12);
  }

  SUBCASE("explicit subset") {
    const AveragedPoint a = evaluate_fragment(reference_model(), FragmentSpec::subset({3, 1}), povm);
    CHECK(a.subsets == 1);
    CHECK_NEAR(a.point.holevo, 0.5259005834415089, 1e-12);
  }

  SUBCASE("uniform actions need one representative") {
    const BranchModel model = BranchModel::uniform(60, 0.9);
    const AveragedPoint a = evaluate_fragment(model, FragmentSpec::of_size(30), povm);
    CHECK(a.strategy == AveragingStrategy::Single);
    CHECK(a.exact);
    const AveragedPoint b = evaluate_fragment(
        model, FragmentSpec::of_size(30, with(AveragingStrategy::MonteCarlo, 1, 5)), povm);
    CHECK_NEAR(a.point.holevo, b.point.holevo, 1e-12);
  }

  SUBCASE("empty fragment") {
    const AveragedPoint a = evaluate_fragment(reference_model(), FragmentSpec::of_size(0), povm);
    CHECK(a.point.fragment_size == 0);
    CHECK_NEAR(a.point.holevo, 0.0, 1e-12);
  }

  SUBCASE("too large a fragment") {
    CHECK_THROWS_AS(evaluate_fragment(reference_model(), FragmentSpec::of_size(5), povm),
                    InvalidArgument);
  }
}

TEST_CASE("Monte Carlo averaging is reproducible") {
  std::vector<double> actions;
  for (int k = 0; k < 30; ++k) {
    actions.push_back(0.1 + 0.05 * k);
  }
  const BranchModel model = BranchModel::with_actions(actions, 0.4);
  const Povm povm = make_rotated_povm(0.3);
  AveragingOptions serial = with(AveragingStrategy::Auto, 1, 17);
  serial.samples = 200;
  AveragingOptions wide = serial;
  wide.threads = 4;
  const AveragedPoint a = evaluate_fragment(model, FragmentSpec::of_size(10, serial), povm);
  const AveragedPoint b = evaluate_fragment(model, FragmentSpec::of_size(10, wide), povm);
  CHECK(a.strategy == AveragingStrategy::MonteCarlo);
  CHECK_FALSE(a.exact);
  CHECK(a.subsets == 200);
  CHECK(a.point.holevo == b.point.holevo);
  CHECK(a.point.discord == b.point.discord);

  AveragingOptions reseeded = serial;
  reseeded.seed = 18;
  const AveragedPoint c = evaluate_fragment(model, FragmentSpec::of_size(10, reseeded), povm);
  CHECK(c.point.holevo != a.point.holevo);
  // Sampling noise stays small relative to the spread of fragment values.
  CHECK(std::abs(c.point.holevo - a.point.holevo) < 0.05);
}

TEST_CASE("information curve") {
  const BranchModel model = reference_model();
  const InfoCurve curve = info_curve(model, make_rotated_povm(0.5), with(AveragingStrategy::Auto));
  REQUIRE(curve.points.size() == 5);
  CHECK(curve.exact);
  CHECK_NEAR(curve.points[0].mutual_information, 0.0, 1e-12);
  CHECK_NEAR(curve.points[2].mutual_information, 0.8790252489911663, 1e-12);
  CHECK_NEAR(curve.points[4].mutual_information, 2.0 * 0.8790252489911663, 1e-12);
  for (const InfoPoint &p : curve.points) {
    CHECK_NEAR(p.mutual_information, p.holevo + p.discord, 1e-12);
  }

  const InfoCurve threaded =
      info_curve(model, make_rotated_povm(0.5), with(AveragingStrategy::Auto, 3));
  for (std::size_t m = 0; m < 5; ++m) {
    CHECK(threaded.points[m].holevo == curve.points[m].holevo);
  }
}

TEST_CASE("redundancy") {
  SUBCASE("perfect records give one qubit per copy") {
    const BranchModel model = BranchModel::uniform(100, kPi / 2);
    const RedundancyResult r = redundancy(model, make_rotated_povm(0.0), 0.1);
    REQUIRE(r.fragment_size.has_value());
    CHECK(*r.fragment_size == 1);
    CHECK_NEAR(*r.redundancy, 100.0, 1e-12);
    CHECK(r.scan_limit == 50);
    CHECK_NEAR(r.target, 0.9, 1e-12);
  }

  SUBCASE("weak records need larger fragments") {
    const BranchModel model = BranchModel::uniform(100, 1.2);
    const RedundancyResult chi = redundancy(model, make_rotated_povm(0.2), 0.1);
    REQUIRE(chi.fragment_size.has_value());
    CHECK(*chi.fragment_size == 2);
    CHECK_NEAR(*chi.redundancy, 50.0, 1e-12);
    RedundancyOptions mi;
    mi.mode = RedundancyMode::MutualInformation;
    const RedundancyResult r = redundancy(model, make_rotated_povm(0.2), 0.1, mi);
    CHECK(*r.fragment_size == 1);
  }

  SUBCASE("past the critical angle the target is out of reach") {
    const BranchModel model = BranchModel::uniform(100, kPi / 2);
    for (double mu : {0.23, 0.5, 1.0, kPi / 2}) {
      const RedundancyResult r = redundancy(model, make_rotated_povm(mu), 0.1);
      CHECK_FALSE(r.fragment_size.has_value());
      CHECK_FALSE(r.redundancy.has_value());
    }
    const RedundancyResult inside = redundancy(model, make_rotated_povm(0.22), 0.1);
    CHECK(inside.fragment_size.has_value());
  }

  SUBCASE("single copy only when allowed") {
    const BranchModel model = BranchModel::uniform(4, 0.3);
    const RedundancyResult strict = redundancy(model, make_rotated_povm(0.0), 0.1);
    CHECK(strict.scan_limit == 2);
    CHECK_FALSE(strict.fragment_size.has_value());
    RedundancyOptions loose;
    loose.allow_single_copy = true;
    const RedundancyResult r = redundancy(model, make_rotated_povm(0.0), 0.1, loose);
    CHECK(r.scan_limit == 4);
  }

  SUBCASE("delta must lie strictly inside (0, 1)") {
    const BranchModel model = BranchModel::uniform(4, 1.0);
    CHECK_THROWS_AS(redundancy(model, make_rotated_povm(0.0), 0.0), InvalidArgument);
    CHECK_THROWS_AS(redundancy(model, make_rotated_povm(0.0), 1.0), InvalidArgument);
  }
}

TEST_CASE("grids") {
  const auto g = linspace(0.0, 1.0, 5);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto mu = default_mu_grid();
  CHECK(mu.size() == 64);
  CHECK(mu.front() == 0.0);
  CHECK_NEAR(mu.back(), kPi / 2, 1e-15);
  const auto t = default_t_grid();
  CHECK(t.size() == 64);
  CHECK_NEAR(t.front(), kPi / 128, 1e-15);
  CHECK_NEAR(t.back(), kPi / 2, 1e-15);
}

TEST_CASE("critical angle") {
  CHECK_NEAR(critical_mu(0.1), kCriticalMu, 1e-12);
  CHECK(critical_mu(0.2) > critical_mu(0.1));
  const double biased = critical_mu(0.1, 0.8);
  CHECK(biased > 0.0);
  CHECK(biased < kPi / 2);
}

TEST_CASE("chi surface") {
  const auto mu = linspace(-kPi / 3, kPi / 3, 5);
  const ChiSurface s = chi_surface(0.5, kPi / 2, 20, mu, 0.1, 1);
  REQUIRE(s.chi.size() == 5 * 21);
  CHECK_NEAR(s.plateau[4], kPlateauPi3, 1e-12);
  CHECK_NEAR(s.at(4, 10), kPlateauPi3, 1e-12);
  CHECK_NEAR(s.at(2, 10), 1.0, 1e-12);
  for (std::size_t m = 0; m <= 20; ++m) {
    CHECK_NEAR(s.at(0, m), s.at(4, m), 1e-12);
    CHECK_NEAR(s.at(1, m), s.at(3, m), 1e-12);
  }
  CHECK_NEAR(s.critical_mu, kCriticalMu, 1e-12);
}

TEST_CASE("redundancy surface") {
  const auto mu = linspace(0.0, kPi / 2, 9);
  const auto t = std::vector<double>{0.5, 1.0, kPi / 2};
  RedundancyOptions opts;
  opts.averaging.threads = 2;
  const RedundancySurface s = redundancy_surface(0.5, 40, mu, t, 0.1, opts);
  REQUIRE(s.cells.size() == 27);
  for (std::size_t j = 0; j < t.size(); ++j) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] > s.critical_mu) {
        CHECK_FALSE(s.at(i, j).fragment_size.has_value());
      }
    }
  }
  CHECK(*s.at(0, 2).fragment_size == 1);
  CHECK(*s.at(0, 0).fragment_size > *s.at(0, 1).fragment_size);
}
