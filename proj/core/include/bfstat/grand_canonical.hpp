#pragma once

#include <cstdint>
#include <utility>

#include "bfstat/canonical.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// Grand-canonical state: fugacity z > 0 and q0 = exp(-1/T) in (0, 1).
// The chemical potential is derived, mu = T ln z. For bosons every level
// must satisfy z q0^eps < 1 or the ensemble does not exist; the constructor
// rejects such states.
class GrandContext {
 public:
  GrandContext(Spectrum spectrum, Statistics stats, double fugacity, double q0,
               double series_tolerance = 1e-15, int series_cap = 10000);

  const Spectrum& spectrum() const { return spectrum_; }
  Statistics statistics() const { return stats_; }
  double fugacity() const { return fugacity_; }
  double q0() const { return q0_; }
  double temperature() const;
  double chemical_potential() const;  // T ln z
  double series_tolerance() const { return series_tolerance_; }
  int series_cap() const { return series_cap_; }

 private:
  Spectrum spectrum_;
  Statistics stats_;
  double fugacity_;
  double q0_;
  double series_tolerance_;
  int series_cap_;
};

// ln of the grand partition function via the level product. Whenever the
// power-sum series converges it is evaluated too and the two must agree to
// 1e-10 relative; the product value is returned.
double ln_grand_partition(const GrandContext& ctx);

// ln of the grand partition function via the power-sum series alone.
double ln_grand_partition_series(const GrandContext& ctx);

// Closed-form mean occupancy of one level: g z q^eps / (1 -+ z q^eps).
double occupancy_grand(const GrandContext& ctx, std::int64_t energy);

// (mean N, mean U). Computed from the power-sum series when it converges
// (cross-checked against the direct occupancy sums to 1e-10), otherwise from
// the occupancy sums directly.
std::pair<double, double> mean_N_and_U(const GrandContext& ctx);

// S = ln Xi + U/T - mu N / T.
double entropy_grand(const GrandContext& ctx);

// Full snapshot for reporting: N, U, Var(U), c, S, occupancies, z and mu.
ThermoReport grand_report(const GrandContext& ctx);

}  // namespace bfstat
