#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bfstat/microcanonical.hpp"
#include "bfstat/oracle.hpp"
#include "bfstat/spectrum.hpp"

using namespace bfstat;

TEST_CASE("recursions match the magnetic trap enumeration") {
  Spectrum s = Spectrum::magnetic_example(22);
  WeightTable bose(s, Statistics::Bose);
  WeightTable fermi(s, Statistics::Fermi);

  CHECK(bose.weight(3, 22) == 34);
  CHECK(fermi.weight(3, 22) == 21);
  CHECK(bose.weight_energy_recursion(3, 22) == 34);
  CHECK(fermi.weight_energy_recursion(3, 22) == 21);
  CHECK(bose.occupancy_numerator(3, 22, 10) == 12);
  CHECK(fermi.occupancy_numerator(3, 22, 10) == 6);
  CHECK(bose.occupancy(3, 22, 10) == ExactRatio(6, 17));
  CHECK(fermi.occupancy(3, 22, 10) == ExactRatio(2, 7));
  CHECK(bose.occupancy_step(3, 22, 10) == ExactRatio(6, 17));
  CHECK(fermi.occupancy_step(3, 22, 10) == ExactRatio(2, 7));
}

TEST_CASE("boundary rows") {
  Spectrum s = Spectrum::from_grid_levels({{0, 2}, {1, 1}, {3, 2}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    WeightTable t(s, st);
    CHECK(t.weight(0, 0) == 1);
    CHECK(t.weight(0, 3) == 0);
    CHECK(t.weight(-1, 0) == 0);
    CHECK(t.weight(2, -1) == 0);
    // single particle: W(1, U) = g_U
    CHECK(t.weight(1, 0) == 2);
    CHECK(t.weight(1, 1) == 1);
    CHECK(t.weight(1, 2) == 0);
    CHECK(t.weight(1, 3) == 2);
  }
}

TEST_CASE("both weight recursions and both occupancy routes agree with "
          "enumeration on assorted spectra") {
  std::vector<Spectrum> spectra = {
      Spectrum::from_grid_levels({{0, 1}, {1, 1}}),
      Spectrum::from_grid_levels({{0, 3}, {2, 2}, {5, 1}}),
      Spectrum::from_grid_levels({{1, 2}, {2, 1}, {3, 3}, {7, 1}}),
      Spectrum::harmonic_oscillator(2, 6),
  };
  for (const auto& s : spectra) {
    for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
      WeightTable t(s, st);
      for (std::int64_t N = 0; N <= 4; ++N) {
        for (std::int64_t U = 0; U <= 12; ++U) {
          OccupancySums sums = enumerate_occupancies(s, st, N, U);
          CHECK(t.weight(N, U) == sums.weight);
          CHECK(t.weight_energy_recursion(N, U) == sums.weight);
          for (std::size_t i = 0; i < s.size(); ++i) {
            const std::int64_t eps = s.levels()[i].energy;
            CHECK(t.occupancy_numerator(N, U, eps) == sums.numerators[i]);
            CHECK(t.occupancy(N, U, eps) == t.occupancy_step(N, U, eps));
          }
        }
      }
    }
  }
}

TEST_CASE("occupancy asks for a real level") {
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {2, 1}});
  WeightTable t(s, Statistics::Bose);
  CHECK_THROWS_AS(t.occupancy_numerator(1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(t.occupancy(1, 2, 1), std::invalid_argument);
  // infeasible (N, U): occupancy is 0, not an error
  CHECK(t.occupancy(1, 5, 2) == 0);
}

TEST_CASE("entropy is ln W") {
  Spectrum s = Spectrum::magnetic_example(22);
  WeightTable t(s, Statistics::Bose);
  CHECK(t.entropy(3, 22) == doctest::Approx(std::log(34.0)).epsilon(1e-14));
  CHECK_THROWS_AS(t.entropy(1, 1), std::domain_error);  // W = 0
}

TEST_CASE("chargeless table matches its enumeration") {
  Spectrum s = Spectrum::from_grid_levels({{1, 2}, {2, 1}, {4, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    ChargelessWeightTable t(s, st);
    for (std::int64_t U = 0; U <= 14; ++U)
      CHECK(t.weight(U) == enumerate_chargeless_weight(s, st, U));
  }
}

TEST_CASE("chargeless bosons reject a zero level") {
  Spectrum z = Spectrum::from_grid_levels({{0, 2}, {1, 1}});
  CHECK_THROWS_AS(ChargelessWeightTable(z, Statistics::Bose),
                  std::invalid_argument);
  CHECK_NOTHROW(ChargelessWeightTable(z, Statistics::Fermi));
}

TEST_CASE("chargeless fermions with a zero level count its fillings") {
  // g0 = 2: every configuration exists in 4 variants differing only in the
  // zero level, so W(U) is 4 times the zero-free count and the zero level
  // holds exactly one particle on average.
  Spectrum z = Spectrum::from_grid_levels({{0, 2}, {1, 1}, {3, 1}});
  Spectrum nz = Spectrum::from_grid_levels({{1, 1}, {3, 1}});
  ChargelessWeightTable t(z, Statistics::Fermi);
  ChargelessWeightTable t0(nz, Statistics::Fermi);
  for (std::int64_t U = 0; U <= 8; ++U) {
    CHECK(t.weight(U) == 4 * t0.weight(U));
    CHECK(t.weight(U) == enumerate_chargeless_weight(z, Statistics::Fermi, U));
    if (t.weight(U) != 0) CHECK(t.occupancy(U, 0) == ExactRatio(1));
  }
}

TEST_CASE("chargeless occupancies agree with direct enumeration") {
  Spectrum s = Spectrum::from_grid_levels({{1, 2}, {3, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    ChargelessWeightTable t(s, st);
    for (std::int64_t U = 1; U <= 9; ++U) {
      if (t.weight(U) == 0) continue;
      // weighted occupancy sum over all particle numbers, done by hand via
      // the fixed-N oracle
      for (const auto& lv : s.levels()) {
        BigCount num = 0;
        std::int64_t n_max = st == Statistics::Fermi ? s.total_states()
                                                     : U / s.min_energy();
        for (std::int64_t n = 0; n <= n_max; ++n) {
          OccupancySums sums = enumerate_occupancies(s, st, n, U);
          std::size_t i = 0;
          while (s.levels()[i].energy != lv.energy) ++i;
          num += sums.numerators[i];
        }
        ExactRatio expect(num, t.weight(U));
        expect.canonicalize();
        CHECK(t.occupancy(U, lv.energy) == expect);
      }
    }
  }
}
