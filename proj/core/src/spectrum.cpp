#include "bfstat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bfstat/exact.hpp"

namespace bfstat {

BigCount binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return BigCount(0);
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

BigCount factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

double log_big(const BigCount& v) {
  if (v <= 0) throw std::domain_error("log_big needs a positive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

ExactRatio parse_ratio(const std::string& text) {
  ExactRatio r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string ratio_to_string(const ExactRatio& r) { return r.get_str(); }

const char* to_string(Statistics s) {
  return s == Statistics::Bose ? "bose" : "fermi";
}

Statistics statistics_from_string(const std::string& name) {
  if (name == "bose" || name == "boson" || name == "bosons")
    return Statistics::Bose;
  if (name == "fermi" || name == "fermion" || name == "fermions")
    return Statistics::Fermi;
  throw std::invalid_argument("unknown statistics '" + name +
                              "' (expected bose or fermi)");
}

Spectrum Spectrum::from_grid_levels(std::vector<EnergyLevel> levels,
                                    ExactRatio unit, std::string label) {
  if (levels.empty()) throw std::invalid_argument("spectrum has no levels");
  if (unit <= 0) throw std::invalid_argument("spectrum unit must be positive");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].energy < 0)
      throw std::invalid_argument("negative level energy");
    if (levels[i].degeneracy < 1)
      throw std::invalid_argument("level degeneracy must be >= 1");
    if (i > 0 && levels[i].energy <= levels[i - 1].energy)
      throw std::invalid_argument(
          "levels must be strictly ascending in energy");
  }
  Spectrum s;
  s.levels_ = std::move(levels);
  unit.canonicalize();
  s.unit_ = std::move(unit);
  s.label_ = std::move(label);
  return s;
}

Spectrum Spectrum::from_levels(
    const std::vector<std::pair<ExactRatio, std::int64_t>>& energies,
    std::string label) {
  if (energies.empty()) throw std::invalid_argument("spectrum has no levels");
  // Common denominator of all energies; the grid step is its reciprocal.
  BigCount lcm(1);
  for (const auto& [e, g] : energies) {
    if (e < 0) throw std::invalid_argument("negative level energy");
    if (g < 1) throw std::invalid_argument("level degeneracy must be >= 1");
    ExactRatio canon = e;
    canon.canonicalize();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), canon.get_den().get_mpz_t());
  }
  std::map<std::int64_t, std::int64_t> grid;
  for (const auto& [e, g] : energies) {
    ExactRatio canon = e;
    canon.canonicalize();
    BigCount scaled = canon.get_num() * (lcm / canon.get_den());
    if (!scaled.fits_slong_p())
      throw std::invalid_argument("rescaled level energy overflows the grid");
    auto [it, inserted] = grid.emplace(scaled.get_si(), g);
    if (!inserted)
      throw std::invalid_argument("duplicate level energy in input");
  }
  std::vector<EnergyLevel> levels;
  levels.reserve(grid.size());
  for (const auto& [e, g] : grid) levels.push_back({e, g});
  ExactRatio unit(BigCount(1), lcm);
  unit.canonicalize();
  return from_grid_levels(std::move(levels), unit, std::move(label));
}

Spectrum Spectrum::magnetic_example(std::int64_t energy_cap) {
  if (energy_cap < 2)
    throw std::invalid_argument(
        "magnetic_example needs energy_cap >= 2 (lowest level is 2)");
  std::map<std::int64_t, std::int64_t> grid;
  for (std::int64_t k = 1; 2 * k - 1 + 1 <= energy_cap; ++k)
    for (std::int64_t l = 1; 2 * k - 1 + l * l <= energy_cap; ++l)
      grid[2 * k - 1 + l * l] += 1;
  std::vector<EnergyLevel> levels;
  for (const auto& [e, g] : grid) levels.push_back({e, g});
  return from_grid_levels(std::move(levels), ExactRatio(1),
                          "magnetic trap, eps = 2k - 1 + l^2, capped at " +
                              std::to_string(energy_cap));
}

Spectrum Spectrum::harmonic_oscillator(std::int64_t d, std::int64_t k_max) {
  if (d < 1) throw std::invalid_argument("oscillator dimension must be >= 1");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  std::vector<EnergyLevel> levels;
  levels.reserve(static_cast<std::size_t>(k_max) + 1);
  for (std::int64_t k = 0; k <= k_max; ++k) {
    BigCount g = binomial(k + d - 1, d - 1);
    if (!g.fits_slong_p())
      throw std::invalid_argument("oscillator degeneracy overflows");
    levels.push_back({k, g.get_si()});
  }
  return from_grid_levels(std::move(levels), ExactRatio(1),
                          std::to_string(d) +
                              "d oscillator, zero-point offset " +
                              std::to_string(d) + "/2 dropped");
}

Spectrum Spectrum::evenly_spaced_band(std::int64_t top_level) {
  if (top_level < 0) throw std::invalid_argument("band top must be >= 0");
  std::vector<EnergyLevel> levels;
  levels.reserve(static_cast<std::size_t>(top_level) + 1);
  for (std::int64_t e = 0; e <= top_level; ++e) levels.push_back({e, 1});
  return from_grid_levels(std::move(levels), ExactRatio(1),
                          "evenly spaced band 0.." + std::to_string(top_level));
}

std::int64_t Spectrum::total_states() const {
  std::int64_t total = 0;
  for (const auto& lv : levels_) total += lv.degeneracy;
  return total;
}

std::int64_t Spectrum::degeneracy_at(std::int64_t energy) const {
  auto it = std::lower_bound(
      levels_.begin(), levels_.end(), energy,
      [](const EnergyLevel& lv, std::int64_t e) { return lv.energy < e; });
  if (it == levels_.end() || it->energy != energy) return 0;
  return it->degeneracy;
}

bool Spectrum::has_level(std::int64_t energy) const {
  return degeneracy_at(energy) > 0;
}

bool operator==(const Spectrum& a, const Spectrum& b) {
  return a.levels_ == b.levels_ && a.unit_ == b.unit_;
}

}  // namespace bfstat
