#include "bfstat/compound.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "bfstat/grand_canonical.hpp"

namespace bfstat {

const char* to_string(ExchangeMode m) {
  switch (m) {
    case ExchangeMode::None:
      return "none";
    case ExchangeMode::Energy:
      return "energy";
    case ExchangeMode::EnergyAndParticles:
      return "energy-and-particles";
  }
  return "?";
}

ExchangeMode exchange_mode_from_string(const std::string& name) {
  if (name == "none") return ExchangeMode::None;
  if (name == "energy") return ExchangeMode::Energy;
  if (name == "energy-and-particles") return ExchangeMode::EnergyAndParticles;
  throw std::invalid_argument(
      "unknown exchange mode '" + name +
      "' (want none | energy | energy-and-particles)");
}

CompoundSystem::CompoundSystem(std::vector<SubSystem> subs, ExchangeMode mode)
    : subs_(std::move(subs)), mode_(mode) {
  if (subs_.size() < 2)
    throw std::invalid_argument("a compound system needs >= 2 sub-systems");
  if (mode_ == ExchangeMode::EnergyAndParticles) {
    for (const auto& s : subs_)
      if (s.stats != subs_.front().stats)
        throw std::invalid_argument(
            "particle exchange requires every sub-system to carry the same "
            "statistics");
  }
  for (const auto& s : subs_) {
    tables_.push_back(std::make_unique<WeightTable>(s.spectrum, s.stats));
    contexts_.push_back(
        std::make_unique<CanonicalContext>(s.spectrum, s.stats));
  }
}

void CompoundSystem::require_mode(ExchangeMode m, const char* op) const {
  if (mode_ != m)
    throw std::logic_error(std::string(op) + " applies to exchange mode '" +
                           to_string(m) + "', this system is '" +
                           to_string(mode_) + "'");
}

const WeightTable& CompoundSystem::table(std::size_t i) const {
  return *tables_[i];
}

const CanonicalContext& CompoundSystem::context(std::size_t i) const {
  return *contexts_[i];
}

BigCount CompoundSystem::weight_fixed(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& alloc) const {
  require_mode(ExchangeMode::None, "weight_fixed");
  if (alloc.size() != subs_.size())
    throw std::invalid_argument("allocation size does not match sub-systems");
  BigCount w(1);
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    w *= table(i).weight(alloc[i].first, alloc[i].second);
    if (w == 0) return w;
  }
  return w;
}

ExactRatio CompoundSystem::occupancy_fixed(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& alloc,
    std::int64_t energy) const {
  require_mode(ExchangeMode::None, "occupancy_fixed");
  if (alloc.size() != subs_.size())
    throw std::invalid_argument("allocation size does not match sub-systems");
  bool present = false;
  ExactRatio total(0);
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    if (!subs_[i].spectrum.has_level(energy)) continue;
    present = true;
    total += table(i).occupancy(alloc[i].first, alloc[i].second, energy);
  }
  if (!present)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is a level of no sub-system");
  total.canonicalize();
  return total;
}

namespace {

// conv[u] = sum_{a+b=u} lhs[a] rhs[b], u = 0..U
std::vector<BigCount> convolve(const std::vector<BigCount>& lhs,
                               const std::vector<BigCount>& rhs) {
  std::vector<BigCount> out(lhs.size(), BigCount(0));
  for (std::size_t a = 0; a < lhs.size(); ++a) {
    if (lhs[a] == 0) continue;
    for (std::size_t b = 0; a + b < rhs.size(); ++b) {
      if (rhs[b] == 0) continue;
      out[a + b] += lhs[a] * rhs[b];
    }
  }
  return out;
}

using Grid = std::vector<std::vector<BigCount>>;  // [n][u]

Grid zero_grid(std::int64_t N, std::int64_t U) {
  return Grid(static_cast<std::size_t>(N) + 1,
              std::vector<BigCount>(static_cast<std::size_t>(U) + 1,
                                    BigCount(0)));
}

Grid convolve2(const Grid& lhs, const Grid& rhs) {
  const std::int64_t N = static_cast<std::int64_t>(lhs.size()) - 1;
  const std::int64_t U = static_cast<std::int64_t>(lhs[0].size()) - 1;
  Grid out = zero_grid(N, U);
  for (std::int64_t n = 0; n <= N; ++n)
    for (std::int64_t u = 0; u <= U; ++u) {
      if (lhs[n][u] == 0) continue;
      for (std::int64_t m = 0; n + m <= N; ++m)
        for (std::int64_t v = 0; u + v <= U; ++v) {
          if (rhs[m][v] == 0) continue;
          out[n + m][u + v] += lhs[n][u] * rhs[m][v];
        }
    }
  return out;
}

}  // namespace

BigCount CompoundSystem::weight_energy_exchange(
    const std::vector<std::int64_t>& Ns, std::int64_t U) const {
  require_mode(ExchangeMode::Energy, "weight_energy_exchange");
  if (Ns.size() != subs_.size())
    throw std::invalid_argument("particle counts do not match sub-systems");
  if (U < 0) return BigCount(0);
  std::vector<BigCount> acc(static_cast<std::size_t>(U) + 1, BigCount(0));
  acc[0] = 1;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    std::vector<BigCount> wi(static_cast<std::size_t>(U) + 1);
    for (std::int64_t u = 0; u <= U; ++u)
      wi[static_cast<std::size_t>(u)] = table(i).weight(Ns[i], u);
    acc = convolve(acc, wi);
  }
  return acc[static_cast<std::size_t>(U)];
}

ExactRatio CompoundSystem::occupancy_energy_exchange(
    const std::vector<std::int64_t>& Ns, std::int64_t U,
    std::int64_t energy) const {
  require_mode(ExchangeMode::Energy, "occupancy_energy_exchange");
  if (Ns.size() != subs_.size())
    throw std::invalid_argument("particle counts do not match sub-systems");
  bool present = false;
  for (const auto& s : subs_) present = present || s.spectrum.has_level(energy);
  if (!present)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is a level of no sub-system");
  if (U < 0) return ExactRatio(0);

  const std::size_t m = subs_.size();
  const std::size_t cells = static_cast<std::size_t>(U) + 1;
  // prefix[i] = weights of sub-systems 0..i-1 convolved, suffix[i] = i..m-1
  std::vector<std::vector<BigCount>> wi(m);
  for (std::size_t i = 0; i < m; ++i) {
    wi[i].resize(cells);
    for (std::int64_t u = 0; u <= U; ++u)
      wi[i][static_cast<std::size_t>(u)] = table(i).weight(Ns[i], u);
  }
  std::vector<std::vector<BigCount>> prefix(m + 1), suffix(m + 1);
  prefix[0].assign(cells, BigCount(0));
  prefix[0][0] = 1;
  for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = convolve(prefix[i], wi[i]);
  suffix[m].assign(cells, BigCount(0));
  suffix[m][0] = 1;
  for (std::size_t i = m; i-- > 0;) suffix[i] = convolve(wi[i], suffix[i + 1]);

  const BigCount& W = prefix[m][static_cast<std::size_t>(U)];
  if (W == 0) return ExactRatio(0);

  BigCount numerator(0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!subs_[i].spectrum.has_level(energy)) continue;
    // others[x] = everything except sub-system i, sharing energy x
    std::vector<BigCount> others = convolve(prefix[i], suffix[i + 1]);
    for (std::int64_t u = 0; u <= U; ++u) {
      const BigCount& rest = others[static_cast<std::size_t>(U - u)];
      if (rest == 0) continue;
      BigCount mi = table(i).occupancy_numerator(Ns[i], u, energy);
      if (mi == 0) continue;
      numerator += mi * rest;
    }
  }
  ExactRatio r(numerator, W);
  r.canonicalize();
  return r;
}

QSeries CompoundSystem::partition_function_energy_exchange(
    const std::vector<std::int64_t>& Ns) const {
  require_mode(ExchangeMode::Energy, "partition_function_energy_exchange");
  if (Ns.size() != subs_.size())
    throw std::invalid_argument("particle counts do not match sub-systems");
  QSeries z = QSeries::one();
  for (std::size_t i = 0; i < subs_.size(); ++i)
    z *= context(i).partition_function(Ns[i]);
  return z;
}

BigCount CompoundSystem::weight_full_exchange(std::int64_t N,
                                              std::int64_t U) const {
  require_mode(ExchangeMode::EnergyAndParticles, "weight_full_exchange");
  if (N < 0 || U < 0) return BigCount(0);
  Grid acc = zero_grid(N, U);
  acc[0][0] = 1;
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    Grid wi = zero_grid(N, U);
    for (std::int64_t n = 0; n <= N; ++n)
      for (std::int64_t u = 0; u <= U; ++u) wi[n][u] = table(i).weight(n, u);
    acc = convolve2(acc, wi);
  }
  return acc[static_cast<std::size_t>(N)][static_cast<std::size_t>(U)];
}

ExactRatio CompoundSystem::occupancy_full_exchange(std::int64_t N,
                                                   std::int64_t U,
                                                   std::int64_t energy) const {
  require_mode(ExchangeMode::EnergyAndParticles, "occupancy_full_exchange");
  bool present = false;
  for (const auto& s : subs_) present = present || s.spectrum.has_level(energy);
  if (!present)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is a level of no sub-system");
  if (N < 0 || U < 0) return ExactRatio(0);

  const std::size_t m = subs_.size();
  std::vector<Grid> wi(m);
  for (std::size_t i = 0; i < m; ++i) {
    wi[i] = zero_grid(N, U);
    for (std::int64_t n = 0; n <= N; ++n)
      for (std::int64_t u = 0; u <= U; ++u)
        wi[i][n][u] = table(i).weight(n, u);
  }
  std::vector<Grid> prefix(m + 1), suffix(m + 1);
  prefix[0] = zero_grid(N, U);
  prefix[0][0][0] = 1;
  for (std::size_t i = 0; i < m; ++i)
    prefix[i + 1] = convolve2(prefix[i], wi[i]);
  suffix[m] = zero_grid(N, U);
  suffix[m][0][0] = 1;
  for (std::size_t i = m; i-- > 0;)
    suffix[i] = convolve2(wi[i], suffix[i + 1]);

  const BigCount& W =
      prefix[m][static_cast<std::size_t>(N)][static_cast<std::size_t>(U)];
  if (W == 0) return ExactRatio(0);

  BigCount numerator(0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!subs_[i].spectrum.has_level(energy)) continue;
    Grid others = convolve2(prefix[i], suffix[i + 1]);
    for (std::int64_t n = 0; n <= N; ++n)
      for (std::int64_t u = 0; u <= U; ++u) {
        const BigCount& rest = others[static_cast<std::size_t>(N - n)]
                                     [static_cast<std::size_t>(U - u)];
        if (rest == 0) continue;
        BigCount mi = table(i).occupancy_numerator(n, u, energy);
        if (mi == 0) continue;
        numerator += mi * rest;
      }
  }
  ExactRatio r(numerator, W);
  r.canonicalize();
  return r;
}

QSeries CompoundSystem::partition_function_full_exchange(
    std::int64_t N) const {
  require_mode(ExchangeMode::EnergyAndParticles,
               "partition_function_full_exchange");
  if (N < 0) return QSeries();
  std::vector<QSeries> acc(static_cast<std::size_t>(N) + 1);
  acc[0] = QSeries::one();
  for (std::size_t i = 0; i < subs_.size(); ++i) {
    std::vector<QSeries> next(static_cast<std::size_t>(N) + 1);
    for (std::int64_t n = 0; n <= N; ++n) {
      QSeries cell;
      for (std::int64_t k = 0; k <= n; ++k)
        cell += acc[static_cast<std::size_t>(k)] *
                context(i).partition_function(n - k);
      next[static_cast<std::size_t>(n)] = std::move(cell);
    }
    acc = std::move(next);
  }
  return acc[static_cast<std::size_t>(N)];
}

double CompoundSystem::ln_grand_partition(double fugacity, double q0) const {
  require_mode(ExchangeMode::EnergyAndParticles, "ln_grand_partition");
  double acc = 0.0;
  for (const auto& s : subs_) {
    GrandContext ctx(s.spectrum, s.stats, fugacity, q0);
    acc += bfstat::ln_grand_partition(ctx);
  }
  return acc;
}

Spectrum CompoundSystem::merged_spectrum() const {
  const ExactRatio& unit = subs_.front().spectrum.unit();
  for (const auto& s : subs_)
    if (s.spectrum.unit() != unit)
      throw std::invalid_argument(
          "sub-system spectra live on different energy grids; rescale first");
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& s : subs_)
    for (const auto& lv : s.spectrum.levels())
      merged[lv.energy] += lv.degeneracy;
  std::vector<EnergyLevel> levels;
  levels.reserve(merged.size());
  for (const auto& [e, g] : merged) levels.push_back({e, g});
  return Spectrum::from_grid_levels(std::move(levels), unit, "merged");
}

}  // namespace bfstat
