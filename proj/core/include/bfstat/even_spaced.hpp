#pragma once

#include <cstdint>
#include <vector>

#include "bfstat/exact.hpp"
#include "bfstat/identity_report.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// Closed forms and ladder identities special to the evenly spaced band
// {0, 1, ..., B}, all cross-checkable against the generic engines.

// p(B, N, U): partitions of U into at most N parts, each part at most B.
// Recurrence: condition on whether there are fewer than N parts, else strip
// one unit from each of the N parts: p(B,N,U) = p(B,N-1,U) + p(B-1,N,U-N).
BigCount restricted_partition_count(std::int64_t B, std::int64_t N,
                                    std::int64_t U);

// Bosonic band weight W+(N, U) = p(B, N, U).
BigCount bose_band_weight(std::int64_t B, std::int64_t N, std::int64_t U);

// Fermionic band weight via the staircase shift: subtracting the Pauli
// ground state maps N-fermion configurations to partitions with at most
// B - N + 1 columns: W-(N, U) = p(B - N + 1, N, U - N(N-1)/2).
BigCount fermi_band_weight(std::int64_t B, std::int64_t N, std::int64_t U);

// Evaluates the band's exact weight/occupancy-moment identities at (B, N, U):
// the bosonic and fermionic two-term weight shuffles, the level-resolved
// ladder identities for every level k, and the fermionic ground-level
// closure. All sides are exact integers.
std::vector<IdentityReport> micro_identity_suite(std::int64_t B,
                                                 std::int64_t N,
                                                 std::int64_t U);
// Same, reusing caller-owned weight tables (both must be over the band B).
std::vector<IdentityReport> micro_identity_suite(const WeightTable& bose,
                                                 const WeightTable& fermi,
                                                 std::int64_t B,
                                                 std::int64_t N,
                                                 std::int64_t U);

// Z(N, q) in product form: the Gaussian binomial for bosons, and
// q^{N(N-1)/2} times the complementary one for fermions (needs N <= B + 1).
// Assembled by exact polynomial division; must equal the generic recursion.
QSeries gaussian_partition_function(std::int64_t B, std::int64_t N,
                                    Statistics stats);

// Canonical occupancies N_k(N, q) for k = 0..B as exact rational functions,
// built by the two-term ladder recursion from the ground level up.
std::vector<QSeriesRatio> occupancy_ladder_formal(std::int64_t B,
                                                  std::int64_t N,
                                                  Statistics stats);
// Same ladder evaluated numerically at q0 in (0, 1).
std::vector<double> occupancy_ladder(std::int64_t B, std::int64_t N,
                                     Statistics stats, double q0);

// B -> infinity limit as a truncated series: 1/(q)_N for bosons, shifted by
// the Pauli staircase q^{N(N-1)/2} for fermions. Coefficients of the bosonic
// series are the unrestricted at-most-N-part partition counts.
QSeries unbounded_partition_function(std::int64_t N, Statistics stats,
                                     std::int64_t cutoff);

}  // namespace bfstat
