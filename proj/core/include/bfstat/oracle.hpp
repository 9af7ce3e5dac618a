#pragma once

#include <cstdint>
#include <vector>

#include "bfstat/exact.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

// Exhaustive microstate enumeration. Deliberately brute force: it walks the
// occupation vectors directly, so it shares no code path with the recursive
// weight engines it is used to validate.

struct OccupancySums {
  BigCount weight;  // W(N, U)
  // Per level (same order as the spectrum): sum over all microstates of the
  // level's particle count, i.e. W(N, U) * N_eps(N, U) as an exact integer.
  std::vector<BigCount> numerators;
};

BigCount enumerate_weight(const Spectrum& s, Statistics stats, std::int64_t N,
                          std::int64_t U,
                          std::uint64_t node_budget = kDefaultOracleBudget);

OccupancySums enumerate_occupancies(
    const Spectrum& s, Statistics stats, std::int64_t N, std::int64_t U,
    std::uint64_t node_budget = kDefaultOracleBudget);

ExactRatio enumerate_occupancy(const Spectrum& s, Statistics stats,
                               std::int64_t N, std::int64_t U,
                               std::int64_t energy,
                               std::uint64_t node_budget = kDefaultOracleBudget);

// Sum of enumerate_weight over all particle numbers that can carry energy U.
// Bosonic spectra must not contain a zero level (the sum would not be finite).
BigCount enumerate_chargeless_weight(
    const Spectrum& s, Statistics stats, std::int64_t U,
    std::uint64_t node_budget = kDefaultOracleBudget);

}  // namespace bfstat
