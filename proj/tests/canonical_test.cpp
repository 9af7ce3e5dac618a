#include <doctest.h>

#include <cmath>
#include <vector>

#include "bfstat/canonical.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/spectrum.hpp"

using namespace bfstat;

TEST_CASE("partition coefficients are the microcanonical weights") {
  std::vector<Spectrum> spectra = {
      Spectrum::from_grid_levels({{0, 1}, {1, 1}, {3, 2}}),
      Spectrum::magnetic_example(12),
  };
  for (const auto& s : spectra) {
    for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
      CanonicalContext ctx(s, st);
      WeightTable table(s, st);
      for (std::int64_t N = 0; N <= 4; ++N) {
        QSeries Z = ctx.partition_function(N);
        for (std::int64_t u = 0; u <= Z.degree() + 1; ++u)
          CHECK(Z.coefficient(u) == ExactRatio(table.weight(N, u)));
      }
    }
  }
}

TEST_CASE("cycle-sum assembly gives the identical polynomial") {
  Spectrum s = Spectrum::from_grid_levels({{0, 2}, {1, 1}, {2, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CanonicalContext ctx(s, st);
    for (std::int64_t N = 1; N <= 5; ++N)
      CHECK(ctx.partition_function(N) ==
            ctx.partition_function_via_partitions(N));
  }
}

TEST_CASE("both derivative recursions equal the formal derivative") {
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {1, 2}, {3, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CanonicalContext ctx(s, st);
    for (std::int64_t N = 1; N <= 5; ++N) {
      QSeries expect = ctx.partition_function(N).derivative();
      CHECK(ctx.partition_function_derivative(N) == expect);
      CHECK(ctx.partition_function_derivative_alt(N) == expect);
    }
  }
}

TEST_CASE("single particle splits by degeneracy") {
  Spectrum s = Spectrum::from_grid_levels({{0, 2}, {2, 3}});
  CanonicalContext ctx(s, Statistics::Bose);
  QSeries z1 = ctx.z1();
  CHECK(z1.coefficient(0) == 2);
  CHECK(z1.coefficient(2) == 3);
  CHECK(ctx.partition_function(1) == z1);
  QSeries z1_3 = ctx.z1_substituted(3);
  CHECK(z1_3.coefficient(0) == 2);
  CHECK(z1_3.coefficient(6) == 3);
}

TEST_CASE("formal occupancies sum to N") {
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {1, 2}, {2, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CanonicalContext ctx(s, st);
    for (std::int64_t N = 1; N <= 3; ++N) {
      QSeries num_total;
      QSeries den;
      for (const auto& lv : s.levels()) {
        QSeriesRatio r = ctx.occupancy_formal(N, lv.energy);
        if (den.is_zero()) den = r.denominator;
        // all levels share the denominator Z(N, q)
        CHECK(same_coefficients(r.denominator, den));
        num_total += r.numerator;
      }
      CHECK(same_coefficients(num_total, ExactRatio(N) * den));
    }
  }
}

TEST_CASE("occupancy values match the microcanonical mix") {
  // At fixed q the canonical occupancy is the W-weighted mean over U of the
  // microcanonical one: N_eps = sum_u M_eps(N, u) q^u / Z.
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {1, 1}, {2, 2}});
  const double q0 = 0.55;
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CanonicalContext ctx(s, st);
    WeightTable table(s, st);
    const std::int64_t N = 3;
    QSeries Z = ctx.partition_function(N);
    for (const auto& lv : s.levels()) {
      double num = 0;
      for (std::int64_t u = 0; u <= Z.degree(); ++u)
        num += table.occupancy_numerator(N, u, lv.energy).get_d() *
               std::pow(q0, static_cast<double>(u));
      const double expect = num / Z.evaluate(q0);
      CHECK(ctx.occupancy_value(N, lv.energy, q0) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("thermodynamics snapshot is internally consistent") {
  Spectrum s = Spectrum::magnetic_example(10);
  CanonicalContext ctx(s, Statistics::Bose);
  const std::int64_t N = 3;
  const double T = 4.0;
  const double q0 = std::exp(-1.0 / T);
  ThermoReport r = ctx.thermodynamics(N, q0);
  CHECK(r.particles == doctest::Approx(3.0));
  CHECK(r.integer_particles);
  CHECK(r.q == doctest::Approx(q0));
  CHECK(r.T == doctest::Approx(T).epsilon(1e-12));
  CHECK(r.VarU >= 0.0);
  CHECK(r.heat_capacity == doctest::Approx(r.VarU / (T * T)).epsilon(1e-12));
  // S = ln Z + U / T
  QSeries Z = ctx.partition_function(N);
  CHECK(r.entropy ==
        doctest::Approx(std::log(Z.evaluate(q0)) + r.U / T).epsilon(1e-10));
  // occupancies resum to N and tilt toward low levels
  double total = 0;
  for (const auto& o : r.occupancy) total += o.n;
  CHECK(total == doctest::Approx(3.0).epsilon(1e-10));
  // energy from occupancies
  double u = 0;
  for (const auto& o : r.occupancy)
    u += static_cast<double>(o.energy) * o.n;
  CHECK(u == doctest::Approx(r.U).epsilon(1e-10));
}

TEST_CASE("truncated context still gets low coefficients right") {
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {1, 1}, {2, 1}});
  CanonicalContext exact(s, Statistics::Bose);
  CanonicalContext cut(s, Statistics::Bose, 5);
  for (std::int64_t N = 1; N <= 4; ++N) {
    QSeries a = exact.partition_function(N);
    QSeries b = cut.partition_function(N);
    REQUIRE(b.cutoff().has_value());
    for (std::int64_t u = 0; u < *b.cutoff(); ++u)
      CHECK(a.coefficient(u) == b.coefficient(u));
  }
}

TEST_CASE("series thermodynamics: prefactor a q^b changes U by b but not c") {
  Spectrum s = Spectrum::from_grid_levels({{0, 1}, {1, 1}, {2, 1}});
  CanonicalContext ctx(s, Statistics::Fermi);
  QSeries Z = ctx.partition_function(2);
  const double q0 = 0.6;
  SeriesThermo base = thermo_from_series(Z, q0);
  SeriesThermo scaled =
      thermo_from_series(ExactRatio(7, 2) * Z.shifted(4), q0);
  CHECK(scaled.U == doctest::Approx(base.U + 4.0).epsilon(1e-12));
  CHECK(scaled.VarU == doctest::Approx(base.VarU).epsilon(1e-10));
  CHECK(scaled.heat_capacity ==
        doctest::Approx(base.heat_capacity).epsilon(1e-10));
}

TEST_CASE("chargeless partition function collects chargeless weights") {
  Spectrum s = Spectrum::from_grid_levels({{1, 2}, {2, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    ChargelessWeightTable t(s, st);
    QSeries Z = chargeless_partition_function(s, st, 10);
    for (std::int64_t u = 0; u < 10; ++u)
      CHECK(Z.coefficient(u) == ExactRatio(t.weight(u)));
  }
}

TEST_CASE("chargeless thermodynamics ties occupancies to U") {
  Spectrum s = Spectrum::from_grid_levels({{1, 2}, {2, 1}, {5, 1}});
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    ThermoReport r = chargeless_thermo(s, st, 0.45);
    CHECK(!r.integer_particles);
    double n = 0, u = 0;
    for (const auto& o : r.occupancy) {
      n += o.n;
      u += static_cast<double>(o.energy) * o.n;
    }
    CHECK(n == doctest::Approx(r.particles).epsilon(1e-9));
    CHECK(u == doctest::Approx(r.U).epsilon(1e-9));
    CHECK(r.VarU >= 0.0);
  }
}

TEST_CASE("mean energy grows with temperature") {
  // dU/dT = VarU / T^2 >= 0, so the U column of any sweep is monotone.
  Spectrum s = Spectrum::magnetic_example(10);
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    CanonicalContext ctx(s, st);
    double prev = -1.0;
    for (double T = 0.5; T <= 5.0; T += 0.5) {
      double u = ctx.thermodynamics(3, std::exp(-1.0 / T)).U;
      CHECK(u > prev);
      prev = u;
    }
  }
}
