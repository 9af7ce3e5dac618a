#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "bfstat/exact.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// Memoized statistical weights W(N, U) for one (spectrum, statistics) pair.
//
// Two independent recursion routes are kept side by side: weight() averages
// over particle removals (the 1/N recursion), weight_energy_recursion() over
// energy removals (the 1/U recursion). Each signed sum the theory guarantees
// divisible is divided exactly; a failed divisibility throws instead of
// silently falling back to rationals.
//
// Thread safety: lookups and insertions are mutex-guarded and stored values
// are immutable, so concurrent readers race only on who computes a cell
// first, never on its value.
class WeightTable {
 public:
  WeightTable(Spectrum spectrum, Statistics stats);

  WeightTable(const WeightTable&) = delete;
  WeightTable& operator=(const WeightTable&) = delete;

  const Spectrum& spectrum() const { return spectrum_; }
  Statistics statistics() const { return stats_; }

  BigCount weight(std::int64_t N, std::int64_t U) const;
  BigCount weight_energy_recursion(std::int64_t N, std::int64_t U) const;

  // M_eps(N, U) = W(N, U) * N_eps(N, U), always an exact integer: the total
  // particle count at the level summed over all microstates.
  BigCount occupancy_numerator(std::int64_t N, std::int64_t U,
                               std::int64_t energy) const;
  ExactRatio occupancy(std::int64_t N, std::int64_t U,
                       std::int64_t energy) const;
  // One-step route: climbs N one particle at a time instead of using the
  // signed sum. Must agree with occupancy() exactly.
  ExactRatio occupancy_step(std::int64_t N, std::int64_t U,
                            std::int64_t energy) const;

  // ln W(N, U); throws std::domain_error when W = 0.
  double entropy(std::int64_t N, std::int64_t U) const;

 private:
  bool feasible(std::int64_t N, std::int64_t U) const;
  BigCount weight_unlocked(std::int64_t N, std::int64_t U) const;

  Spectrum spectrum_;
  Statistics stats_;
  std::int64_t total_states_ = 0;
  // Prefix sums over levels ascending: state counts and cheapest fill
  // energies, used for exact feasibility pruning.
  std::vector<std::int64_t> cum_states_;
  std::vector<std::int64_t> cum_energy_;

  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, BigCount> memo_;
  mutable std::unordered_map<std::uint64_t, BigCount> memo_energy_;
};

// Chargeless variant: no particle-number constraint, W(U) alone. Models
// photon/phonon statistics. Bosonic spectra must have min energy >= 1.
class ChargelessWeightTable {
 public:
  ChargelessWeightTable(Spectrum spectrum, Statistics stats);

  ChargelessWeightTable(const ChargelessWeightTable&) = delete;
  ChargelessWeightTable& operator=(const ChargelessWeightTable&) = delete;

  const Spectrum& spectrum() const { return spectrum_; }
  Statistics statistics() const { return stats_; }

  BigCount weight(std::int64_t U) const;
  ExactRatio occupancy(std::int64_t U, std::int64_t energy) const;
  double entropy(std::int64_t U) const;

 private:
  Spectrum spectrum_;
  Statistics stats_;
  BigCount base_;  // W(0): 1, except 2^g0 for fermions with a zero level

  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, BigCount> memo_;
};

}  // namespace bfstat
