#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "bfstat/canonical.hpp"
#include "bfstat/exact.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// What the sub-systems may trade with each other.
enum class ExchangeMode { None, Energy, EnergyAndParticles };

const char* to_string(ExchangeMode m);
ExchangeMode exchange_mode_from_string(const std::string& name);

// Two or more non-interacting sub-systems considered as one. Depending on
// the exchange mode, compound weights are plain products, energy
// convolutions, or energy-and-particle double convolutions of the
// sub-system weights; multi-system cases fold left.
//
// Mixing statistics across sub-systems is fine as long as particles stay
// put; particle exchange requires identical statistics everywhere.
class CompoundSystem {
 public:
  struct SubSystem {
    Spectrum spectrum;
    Statistics stats;
  };

  CompoundSystem(std::vector<SubSystem> subs, ExchangeMode mode);

  ExchangeMode mode() const { return mode_; }
  std::size_t size() const { return subs_.size(); }
  const SubSystem& sub(std::size_t i) const { return subs_[i]; }

  // --- mode None: every sub-system keeps its own (N_i, U_i) ---
  BigCount weight_fixed(
      const std::vector<std::pair<std::int64_t, std::int64_t>>& alloc) const;
  ExactRatio occupancy_fixed(
      const std::vector<std::pair<std::int64_t, std::int64_t>>& alloc,
      std::int64_t energy) const;

  // --- mode Energy: fixed per-system N_i, shared total U ---
  BigCount weight_energy_exchange(const std::vector<std::int64_t>& Ns,
                                  std::int64_t U) const;
  ExactRatio occupancy_energy_exchange(const std::vector<std::int64_t>& Ns,
                                       std::int64_t U,
                                       std::int64_t energy) const;
  QSeries partition_function_energy_exchange(
      const std::vector<std::int64_t>& Ns) const;

  // --- mode EnergyAndParticles: shared totals N, U ---
  BigCount weight_full_exchange(std::int64_t N, std::int64_t U) const;
  ExactRatio occupancy_full_exchange(std::int64_t N, std::int64_t U,
                                     std::int64_t energy) const;
  QSeries partition_function_full_exchange(std::int64_t N) const;
  double ln_grand_partition(double fugacity, double q0) const;

  // Union of the sub-spectra with degeneracies added. With full exchange the
  // compound is statistically identical to this single system; with energy
  // exchange only, it is not.
  Spectrum merged_spectrum() const;

 private:
  void require_mode(ExchangeMode m, const char* op) const;
  const WeightTable& table(std::size_t i) const;
  const CanonicalContext& context(std::size_t i) const;

  std::vector<SubSystem> subs_;
  ExchangeMode mode_;
  std::vector<std::unique_ptr<WeightTable>> tables_;
  std::vector<std::unique_ptr<CanonicalContext>> contexts_;
};

}  // namespace bfstat
