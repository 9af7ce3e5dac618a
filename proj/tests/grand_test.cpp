#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bfstat/grand_canonical.hpp"
#include "bfstat/spectrum.hpp"

using namespace bfstat;

namespace {
Spectrum three_levels() {
  return Spectrum::from_grid_levels({{0, 1}, {1, 2}, {3, 1}});
}
}  // namespace

TEST_CASE("constructor guards the physical domain") {
  Spectrum s = three_levels();
  CHECK_THROWS_AS(GrandContext(s, Statistics::Bose, -0.5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(GrandContext(s, Statistics::Bose, 0.5, 1.5),
                  std::invalid_argument);
  // bosons need z q^eps < 1 at every level; eps_min = 0 here, so z >= 1 dies
  CHECK_THROWS_AS(GrandContext(s, Statistics::Bose, 1.0, 0.5),
                  std::invalid_argument);
  CHECK_NOTHROW(GrandContext(s, Statistics::Bose, 0.9, 0.5));
  // fermions are fine at any positive fugacity
  CHECK_NOTHROW(GrandContext(s, Statistics::Fermi, 3.0, 0.5));
}

TEST_CASE("product and series routes agree") {
  Spectrum s = three_levels();
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    GrandContext ctx(s, st, 0.4, 0.35);
    const double lp = ln_grand_partition(ctx);
    const double ls = ln_grand_partition_series(ctx);
    CHECK(lp == doctest::Approx(ls).epsilon(1e-12));
    // hand product over levels
    double expect = 0;
    for (const auto& lv : s.levels()) {
      const double x = 0.4 * std::pow(0.35, static_cast<double>(lv.energy));
      expect += static_cast<double>(lv.degeneracy) *
                (st == Statistics::Fermi ? std::log1p(x) : -std::log1p(-x));
    }
    CHECK(lp == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("closed-form occupancies and their sums") {
  Spectrum s = three_levels();
  const double z = 0.3, q0 = 0.5;
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    GrandContext ctx(s, st, z, q0);
    double n_direct = 0, u_direct = 0;
    for (const auto& lv : s.levels()) {
      const double x = z * std::pow(q0, static_cast<double>(lv.energy));
      const double expect = st == Statistics::Fermi
                                ? lv.degeneracy * x / (1 + x)
                                : lv.degeneracy * x / (1 - x);
      CHECK(occupancy_grand(ctx, lv.energy) ==
            doctest::Approx(expect).epsilon(1e-14));
      n_direct += expect;
      u_direct += static_cast<double>(lv.energy) * expect;
    }
    auto [N, U] = mean_N_and_U(ctx);
    CHECK(N == doctest::Approx(n_direct).epsilon(1e-11));
    CHECK(U == doctest::Approx(u_direct).epsilon(1e-11));
  }
  GrandContext b(s, Statistics::Bose, z, q0);
  CHECK_THROWS_AS(occupancy_grand(b, 2), std::invalid_argument);
}

TEST_CASE("fugacity past the bosonic radius still works for fermions") {
  // z q^{eps_min} = 2 > 1: the power-sum series diverges, the closed forms
  // do not. The engine must fall back silently.
  Spectrum s = three_levels();
  GrandContext ctx(s, Statistics::Fermi, 2.0, 0.6);
  const double lnXi = ln_grand_partition(ctx);
  double expect = 0;
  for (const auto& lv : s.levels())
    expect += lv.degeneracy *
              std::log1p(2.0 * std::pow(0.6, static_cast<double>(lv.energy)));
  CHECK(lnXi == doctest::Approx(expect).epsilon(1e-14));
  auto [N, U] = mean_N_and_U(ctx);
  double n_direct = 0;
  for (const auto& lv : s.levels())
    n_direct += occupancy_grand(ctx, lv.energy);
  CHECK(N == doctest::Approx(n_direct).epsilon(1e-12));
  CHECK(U >= 0);
}

TEST_CASE("fugacity derivatives recover N and U") {
  Spectrum s = three_levels();
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    const double z = 0.45, q0 = 0.4, h = 1e-6;
    GrandContext ctx(s, st, z, q0);
    auto [N, U] = mean_N_and_U(ctx);
    // N = z d(ln Xi)/dz
    GrandContext zp(s, st, z + h, q0), zm(s, st, z - h, q0);
    const double dN =
        z * (ln_grand_partition(zp) - ln_grand_partition(zm)) / (2 * h);
    CHECK(dN == doctest::Approx(N).epsilon(1e-7));
    // U = q d(ln Xi)/dq
    GrandContext qp(s, st, z, q0 + h), qm(s, st, z, q0 - h);
    const double dU =
        q0 * (ln_grand_partition(qp) - ln_grand_partition(qm)) / (2 * h);
    CHECK(dU == doctest::Approx(U).epsilon(1e-7));
  }
}

TEST_CASE("report fields are coherent") {
  Spectrum s = three_levels();
  GrandContext ctx(s, Statistics::Fermi, 0.7, 0.45);
  ThermoReport r = grand_report(ctx);
  CHECK(!r.integer_particles);
  REQUIRE(r.fugacity.has_value());
  CHECK(*r.fugacity == doctest::Approx(0.7));
  REQUIRE(r.chemical_potential.has_value());
  CHECK(*r.chemical_potential ==
        doctest::Approx(ctx.temperature() * std::log(0.7)).epsilon(1e-14));
  CHECK(r.T == doctest::Approx(-1.0 / std::log(0.45)).epsilon(1e-14));
  double n = 0, u = 0;
  for (const auto& o : r.occupancy) {
    n += o.n;
    u += static_cast<double>(o.energy) * o.n;
  }
  CHECK(r.particles == doctest::Approx(n).epsilon(1e-10));
  CHECK(r.U == doctest::Approx(u).epsilon(1e-10));
  CHECK(r.VarU >= 0);
  CHECK(r.heat_capacity ==
        doctest::Approx(r.VarU / (r.T * r.T)).epsilon(1e-12));
  // S = ln Xi + U/T - N ln z
  CHECK(r.entropy == doctest::Approx(ln_grand_partition(ctx) + r.U / r.T -
                                     r.particles * std::log(0.7))
                         .epsilon(1e-10));
}

TEST_CASE("entropy stays positive on a plain gas") {
  Spectrum s = three_levels();
  for (Statistics st : {Statistics::Bose, Statistics::Fermi}) {
    GrandContext ctx(s, st, 0.5, 0.5);
    CHECK(entropy_grand(ctx) > 0);
  }
}
