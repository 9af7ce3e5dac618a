#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bfstat/canonical.hpp"
#include "bfstat/compound.hpp"
#include "bfstat/grand_canonical.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/spectrum.hpp"

using namespace bfstat;

namespace {
Spectrum two_levels() { return Spectrum::from_grid_levels({{0, 1}, {1, 1}}); }

CompoundSystem make_pair(ExchangeMode mode,
                         Statistics st = Statistics::Bose) {
  std::vector<CompoundSystem::SubSystem> subs;
  subs.push_back({two_levels(), st});
  subs.push_back({two_levels(), st});
  return CompoundSystem(std::move(subs), mode);
}
}  // namespace

TEST_CASE("construction rules") {
  CHECK_THROWS_AS(CompoundSystem({{two_levels(), Statistics::Bose}},
                                 ExchangeMode::None),
                  std::invalid_argument);
  // mixed statistics are fine until particles flow
  std::vector<CompoundSystem::SubSystem> mixed;
  mixed.push_back({two_levels(), Statistics::Bose});
  mixed.push_back({two_levels(), Statistics::Fermi});
  CHECK_NOTHROW(CompoundSystem(std::vector(mixed), ExchangeMode::Energy));
  CHECK_THROWS_AS(
      CompoundSystem(std::vector(mixed), ExchangeMode::EnergyAndParticles),
      std::invalid_argument);
}

TEST_CASE("mode gates the operations") {
  CompoundSystem none = make_pair(ExchangeMode::None);
  CHECK_THROWS_AS(none.weight_energy_exchange({1, 1}, 1), std::logic_error);
  CHECK_THROWS_AS(none.weight_full_exchange(2, 1), std::logic_error);
  CompoundSystem energy = make_pair(ExchangeMode::Energy);
  CHECK_THROWS_AS(energy.weight_fixed({{1, 0}, {1, 1}}), std::logic_error);
}

TEST_CASE("fixed allocations multiply") {
  CompoundSystem c = make_pair(ExchangeMode::None);
  CHECK(c.weight_fixed({{1, 0}, {1, 1}}) == 1);
  CHECK(c.weight_fixed({{2, 1}, {1, 0}}) == 1);
  CHECK(c.weight_fixed({{1, 2}, {1, 0}}) == 0);  // infeasible left factor
  // occupancy at energy 0 with both subsystems pinned: left has 1 particle
  // at level 1 (n0 = 0), right has 1 at level 0 (n0 = 1).
  CHECK(c.occupancy_fixed({{1, 1}, {1, 0}}, 0) == ExactRatio(1));
  CHECK_THROWS_AS(c.occupancy_fixed({{1, 0}, {1, 0}}, 7),
                  std::invalid_argument);
}

TEST_CASE("energy exchange convolves weights") {
  CompoundSystem c = make_pair(ExchangeMode::Energy);
  // one particle each, shared U = 1: either sub-system carries it
  CHECK(c.weight_energy_exchange({1, 1}, 1) == 2);
  CHECK(c.weight_energy_exchange({1, 1}, 2) == 1);  // both excited
  CHECK(c.weight_energy_exchange({1, 1}, 3) == 0);
  // U = 1: every microstate has exactly one particle at energy 1 (in one
  // sub-system or the other), so the level-1 total is 1
  CHECK(c.occupancy_energy_exchange({1, 1}, 1, 1) == ExactRatio(1));
  // partition function is the product (1 + q)^2
  QSeries Z = c.partition_function_energy_exchange({1, 1});
  CHECK(Z.coefficient(0) == 1);
  CHECK(Z.coefficient(1) == 2);
  CHECK(Z.coefficient(2) == 1);
}

TEST_CASE("energy-exchange weights against a hand convolution") {
  std::vector<CompoundSystem::SubSystem> subs;
  subs.push_back({Spectrum::from_grid_levels({{0, 2}, {2, 1}}),
                  Statistics::Bose});
  subs.push_back({Spectrum::from_grid_levels({{1, 1}, {3, 1}}),
                  Statistics::Fermi});
  CompoundSystem c(std::move(subs), ExchangeMode::Energy);
  WeightTable a(Spectrum::from_grid_levels({{0, 2}, {2, 1}}),
                Statistics::Bose);
  WeightTable b(Spectrum::from_grid_levels({{1, 1}, {3, 1}}),
                Statistics::Fermi);
  for (std::int64_t U = 0; U <= 8; ++U) {
    BigCount expect = 0;
    for (std::int64_t u = 0; u <= U; ++u)
      expect += a.weight(2, u) * b.weight(1, U - u);
    CHECK(c.weight_energy_exchange({2, 1}, U) == expect);
  }
}

TEST_CASE("full exchange equals the merged single system") {
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CompoundSystem c = make_pair(ExchangeMode::EnergyAndParticles, st);
    Spectrum merged = c.merged_spectrum();
    CHECK(merged.degeneracy_at(0) == 2);
    CHECK(merged.degeneracy_at(1) == 2);
    WeightTable direct(merged, st);
    CanonicalContext ctx(merged, st);
    for (std::int64_t N = 0; N <= 4; ++N) {
      for (std::int64_t U = 0; U <= 6; ++U) {
        CHECK(c.weight_full_exchange(N, U) == direct.weight(N, U));
        for (std::int64_t eps : {0, 1})
          CHECK(c.occupancy_full_exchange(N, U, eps) ==
                direct.occupancy(N, U, eps));
      }
      CHECK(same_coefficients(c.partition_function_full_exchange(N),
                              ctx.partition_function(N)));
    }
  }
}

TEST_CASE("full-exchange example by hand: N = 2, U = 1") {
  CompoundSystem c = make_pair(ExchangeMode::EnergyAndParticles);
  // merged system: two states at 0, two at 1; bosonic W(2, 1) = 2 * 2
  CHECK(c.weight_full_exchange(2, 1) == 4);
}

TEST_CASE("grand partition adds over sub-systems") {
  CompoundSystem c = make_pair(ExchangeMode::EnergyAndParticles);
  const double z = 0.3, q0 = 0.5;
  const double combined = c.ln_grand_partition(z, q0);
  GrandContext single(two_levels(), Statistics::Bose, z, q0);
  CHECK(combined ==
        doctest::Approx(2 * ln_grand_partition(single)).epsilon(1e-14));
  GrandContext merged(c.merged_spectrum(), Statistics::Bose, z, q0);
  CHECK(combined ==
        doctest::Approx(ln_grand_partition(merged)).epsilon(1e-12));
}

TEST_CASE("merging requires one energy grid") {
  std::vector<CompoundSystem::SubSystem> subs;
  subs.push_back({two_levels(), Statistics::Bose});
  subs.push_back({Spectrum::from_levels({{ExactRatio(1, 2), 1}}),
                  Statistics::Bose});
  CompoundSystem c(std::move(subs), ExchangeMode::EnergyAndParticles);
  CHECK_THROWS_AS(c.merged_spectrum(), std::invalid_argument);
}
