#include "bfstat/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bfstat/errors.hpp"

namespace bfstat {

namespace {

// Depth-first walk over occupation vectors, highest level first so the
// energy bounds bite early. Counts every visited node against the budget.
struct Enumerator {
  const std::vector<EnergyLevel>& levels;
  bool fermi;
  std::uint64_t budget;
  std::uint64_t nodes = 0;

  std::int64_t min_energy;
  std::vector<std::int64_t> cum_states;  // states in levels[0..i]

  BigCount weight{0};
  std::vector<BigCount> numerators;
  std::vector<std::int64_t> occupation;

  explicit Enumerator(const Spectrum& s, Statistics stats, std::uint64_t b)
      : levels(s.levels()),
        fermi(stats == Statistics::Fermi),
        budget(b),
        min_energy(s.min_energy()),
        numerators(s.size(), BigCount(0)),
        occupation(s.size(), 0) {
    cum_states.reserve(levels.size());
    std::int64_t acc = 0;
    for (const auto& lv : levels) {
      acc += lv.degeneracy;
      cum_states.push_back(acc);
    }
  }

  // Ways to place m indistinguishable particles into g states.
  BigCount multiplicity(std::int64_t m, std::int64_t g) const {
    return fermi ? binomial(g, m) : binomial(g + m - 1, m);
  }

  void walk(std::int64_t idx, std::int64_t n_rem, std::int64_t u_rem,
            const BigCount& mult) {
    if (++nodes > budget)
      throw BudgetExceeded("enumeration exceeded its node budget of " +
                           std::to_string(budget));
    if (idx < 0) {
      if (n_rem == 0 && u_rem == 0) {
        weight += mult;
        for (std::size_t j = 0; j < levels.size(); ++j)
          if (occupation[j] != 0) numerators[j] += occupation[j] * mult;
      }
      return;
    }
    const auto& lv = levels[static_cast<std::size_t>(idx)];
    if (u_rem < n_rem * min_energy) return;   // even the cheapest fill is over
    if (u_rem > n_rem * lv.energy) return;    // even all-at-the-top is short
    if (fermi && n_rem > cum_states[static_cast<std::size_t>(idx)]) return;

    std::int64_t m_max = n_rem;
    if (fermi) m_max = std::min(m_max, lv.degeneracy);
    if (lv.energy > 0) m_max = std::min(m_max, u_rem / lv.energy);
    for (std::int64_t m = 0; m <= m_max; ++m) {
      occupation[static_cast<std::size_t>(idx)] = m;
      walk(idx - 1, n_rem - m, u_rem - m * lv.energy,
           mult * multiplicity(m, lv.degeneracy));
    }
    occupation[static_cast<std::size_t>(idx)] = 0;
  }
};

}  // namespace

OccupancySums enumerate_occupancies(const Spectrum& s, Statistics stats,
                                    std::int64_t N, std::int64_t U,
                                    std::uint64_t node_budget) {
  if (N < 0 || U < 0)
    return {BigCount(0), std::vector<BigCount>(s.size(), BigCount(0))};
  Enumerator e(s, stats, node_budget);
  e.walk(static_cast<std::int64_t>(s.size()) - 1, N, U, BigCount(1));
  return {std::move(e.weight), std::move(e.numerators)};
}

BigCount enumerate_weight(const Spectrum& s, Statistics stats, std::int64_t N,
                          std::int64_t U, std::uint64_t node_budget) {
  return enumerate_occupancies(s, stats, N, U, node_budget).weight;
}

ExactRatio enumerate_occupancy(const Spectrum& s, Statistics stats,
                               std::int64_t N, std::int64_t U,
                               std::int64_t energy,
                               std::uint64_t node_budget) {
  if (!s.has_level(energy))
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  OccupancySums sums = enumerate_occupancies(s, stats, N, U, node_budget);
  if (sums.weight == 0) return ExactRatio(0);
  std::size_t idx = 0;
  while (s.levels()[idx].energy != energy) ++idx;
  ExactRatio r(sums.numerators[idx], sums.weight);
  r.canonicalize();
  return r;
}

BigCount enumerate_chargeless_weight(const Spectrum& s, Statistics stats,
                                     std::int64_t U,
                                     std::uint64_t node_budget) {
  if (U < 0) return BigCount(0);
  if (stats == Statistics::Bose && s.min_energy() == 0)
    throw std::invalid_argument(
        "chargeless bosons need a spectrum without a zero level");
  std::int64_t n_max;
  if (stats == Statistics::Fermi) {
    n_max = s.total_states();
  } else {
    n_max = U / s.min_energy();
  }
  BigCount total(0);
  for (std::int64_t n = 0; n <= n_max; ++n)
    total += enumerate_weight(s, stats, n, U, node_budget);
  return total;
}

}  // namespace bfstat
