#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "bfstat/exact.hpp"
#include "bfstat/identity_report.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// Boson <-> fermion correspondences on a shared spectrum: fermionic weights
// reconstructed from bosonic ones alone, and the matching partition-function
// and grand-partition identities.

// Builds fermionic W-(N, U) from bosonic weights via the pair-subtraction
// recursion: W-(N, U) = sum_n (-1)^n sum_u W-(n, u) W+(N - 2n, U - 2u),
// where the inner fermionic factors carry at most N/2 particles. Never
// consults a fermionic weight table.
class DualWeightTable {
 public:
  explicit DualWeightTable(Spectrum spectrum);

  DualWeightTable(const DualWeightTable&) = delete;
  DualWeightTable& operator=(const DualWeightTable&) = delete;

  const Spectrum& spectrum() const { return bose_.spectrum(); }
  const WeightTable& bose_table() const { return bose_; }

  BigCount fermi_weight_from_bose(std::int64_t N, std::int64_t U) const;

 private:
  WeightTable bose_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, BigCount> memo_;
};

// Second route: inclusion-exclusion over sets of doubly-occupied states,
// W-(N, U) = sum over per-level pair counts c_eps <= g_eps of
// (-1)^{sum c} prod C(g_eps, c_eps) W+(N - 2 sum c, U - 2 sum c_eps eps).
// Intended for small spectra (at most 12 levels).
BigCount fermi_weight_subset_sum(const WeightTable& bose, std::int64_t N,
                                 std::int64_t U);

// Exact polynomial identities tying Z+ and Z- together, checked for
// N = 1..N_max: the fermionic reconstruction from bosonic factors with
// doubled steps, the alternating product that must vanish, and the mirrored
// bosonic reconstruction.
std::vector<IdentityReport> canonical_duality_suite(const Spectrum& s,
                                                    std::int64_t N_max);

// Level product of the grand partition function with a signed fugacity.
// Negative z is an algebraic device here, not a physical state; each factor
// must stay positive or the value does not exist.
double grand_product_signed(const Spectrum& s, Statistics stats, double z,
                            double q0);

// Numeric grand-side identities at (z, q0): Xi-(z, q) against
// Xi+(z, q) Xi-(-z^2, q^2), and Xi+(z, q) Xi-(-z, q) against 1.
std::vector<IdentityReport> grand_duality_check(const Spectrum& s, double z,
                                                double q0,
                                                double tolerance = 1e-10);

}  // namespace bfstat
