#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bfstat/exact.hpp"

namespace bfstat {

enum class Statistics { Bose, Fermi };

const char* to_string(Statistics s);
Statistics statistics_from_string(const std::string& name);

struct EnergyLevel {
  std::int64_t energy = 0;      // grid units, >= 0
  std::int64_t degeneracy = 1;  // >= 1
  friend bool operator==(const EnergyLevel&, const EnergyLevel&) = default;
};

// A single-particle spectrum on an integer energy grid. Levels are strictly
// ascending in energy; `unit` is the physical energy of one grid step, so a
// level at grid energy e sits at physical energy e * unit.
class Spectrum {
 public:
  // Rescales rational physical energies onto the integer grid: the grid step
  // becomes 1/lcm(denominators). Idempotent: feeding level * unit back in
  // reproduces the same spectrum, unit included.
  static Spectrum from_levels(
      const std::vector<std::pair<ExactRatio, std::int64_t>>& energies,
      std::string label = "");

  // Levels already on an integer grid.
  static Spectrum from_grid_levels(std::vector<EnergyLevel> levels,
                                   ExactRatio unit = ExactRatio(1),
                                   std::string label = "");

  // eps = 2k - 1 + l^2 over positive integers k, l, keeping eps <= energy_cap.
  // Distinct (k, l) pairs landing on the same eps add up in the degeneracy.
  static Spectrum magnetic_example(std::int64_t energy_cap);

  // Isotropic d-dimensional oscillator: levels k = 0..k_max with
  // C(k + d - 1, d - 1) states each. The constant zero-point offset d/2 is
  // dropped from the grid; the label records it.
  static Spectrum harmonic_oscillator(std::int64_t d, std::int64_t k_max);

  // Non-degenerate evenly spaced band {0, 1, ..., top_level}.
  static Spectrum evenly_spaced_band(std::int64_t top_level);

  const std::vector<EnergyLevel>& levels() const { return levels_; }
  const ExactRatio& unit() const { return unit_; }
  const std::string& label() const { return label_; }

  std::size_t size() const { return levels_.size(); }
  std::int64_t min_energy() const { return levels_.front().energy; }
  std::int64_t max_energy() const { return levels_.back().energy; }
  std::int64_t total_states() const;
  std::int64_t degeneracy_at(std::int64_t energy) const;  // 0 when absent
  bool has_level(std::int64_t energy) const;

  // Compares levels and unit; the label is informational only.
  friend bool operator==(const Spectrum& a, const Spectrum& b);

 private:
  Spectrum() = default;

  std::vector<EnergyLevel> levels_;
  ExactRatio unit_{1};
  std::string label_;
};

}  // namespace bfstat
