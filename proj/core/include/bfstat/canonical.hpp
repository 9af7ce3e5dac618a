#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

struct LevelOccupancyValue {
  std::int64_t energy = 0;
  double n = 0;
};

// Thermodynamic snapshot at one temperature. Temperatures are in grid-energy
// units with k_B = 1, so q = exp(-1/T) and T = -1/ln(q).
struct ThermoReport {
  double particles = 0;  // exact integer for the fixed-N ensembles
  bool integer_particles = true;
  double q = 0;
  double T = 0;
  double Z_value = 1;
  double U = 0;
  double VarU = 0;
  double heat_capacity = 0;
  double entropy = 0;
  std::vector<LevelOccupancyValue> occupancy;
  std::optional<double> fugacity;            // grand canonical only
  std::optional<double> chemical_potential;  // grand canonical only
};

// Canonical-ensemble engine for one (spectrum, statistics) pair. Partition
// functions are exact polynomials in q (finite spectra), cached as N grows;
// an optional cutoff truncates everything to a power series.
//
// Cache insertion is mutex-guarded and entries are immutable, so concurrent
// readers are safe.
class CanonicalContext {
 public:
  CanonicalContext(Spectrum spectrum, Statistics stats,
                   std::optional<std::int64_t> cutoff = {});

  CanonicalContext(const CanonicalContext&) = delete;
  CanonicalContext& operator=(const CanonicalContext&) = delete;

  const Spectrum& spectrum() const { return spectrum_; }
  Statistics statistics() const { return stats_; }
  std::optional<std::int64_t> cutoff() const { return cutoff_; }

  // Z(1, q) = sum_eps g_eps q^eps and its q -> q^n substitution.
  QSeries z1() const;
  QSeries z1_substituted(std::int64_t n) const;

  // Z(N, q) by the signed recursion over Z(N - n, q) Z(1, q^n).
  QSeries partition_function(std::int64_t N) const;
  // Same polynomial assembled from integer partitions of N (cycle sums).
  QSeries partition_function_via_partitions(std::int64_t N) const;
  // dZ/dq by the signed recursion seeded with Z'(1, q^n).
  QSeries partition_function_derivative(std::int64_t N) const;
  // dZ/dq again, from the complementary recursion that falls out of
  // differentiating the Z(N) recursion and eliminating the direct route.
  QSeries partition_function_derivative_alt(std::int64_t N) const;

  // N_eps(N, q) as an exact ratio of polynomials.
  QSeriesRatio occupancy_formal(std::int64_t N, std::int64_t energy) const;
  double occupancy_value(std::int64_t N, std::int64_t energy, double q0) const;

  // U, Var(U), c, S and per-level occupancies at q0 in (0, 1).
  ThermoReport thermodynamics(std::int64_t N, double q0) const;

 private:
  QSeries z1_substituted_unlocked(std::int64_t n) const;
  const QSeries& partition_function_unlocked(std::int64_t N) const;

  Spectrum spectrum_;
  Statistics stats_;
  std::optional<std::int64_t> cutoff_;
  QSeries z1_;

  mutable std::mutex mu_;
  mutable std::vector<QSeries> z_cache_;        // index N
  mutable std::vector<QSeries> zprime_cache_;   // index N, recursion route
  mutable std::map<std::int64_t, QSeries> z1_sub_cache_;
  mutable std::map<std::int64_t, QSeries> z1_prime_sub_cache_;
};

// U, Var(U), c, S read off an arbitrary partition series at q0. Exposed so
// the same thermodynamics can be driven by truncated series (unbounded
// spectra) and by hand-modified series in tests.
struct SeriesThermo {
  double Z = 1;
  double U = 0;
  double VarU = 0;
  double heat_capacity = 0;
  double entropy = 0;
  double T = 0;
};
SeriesThermo thermo_from_series(const QSeries& Z, double q0);

// Chargeless canonical ensemble: Z(q) = sum_U W(U) q^U as a level product,
// truncated at `cutoff`. Bosonic spectra must have min energy >= 1.
QSeries chargeless_partition_function(const Spectrum& s, Statistics stats,
                                      std::int64_t cutoff);

// Mean N(q), U(q), Var(U), S and per-level occupancies of the chargeless
// ensemble at q0, via closed-form occupancies and power-sum series. Series
// are summed until the next term drops below `tolerance` relative to the
// running sum; exceeding `term_cap` throws SeriesCapExceeded.
ThermoReport chargeless_thermo(const Spectrum& s, Statistics stats, double q0,
                               double tolerance = 1e-15,
                               int term_cap = 10000);

}  // namespace bfstat
