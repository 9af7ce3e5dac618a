#include "bfstat/microcanonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bfstat/errors.hpp"

namespace bfstat {

namespace {

constexpr std::int64_t kPackLimit = std::int64_t{1} << 31;

std::uint64_t pack(std::int64_t N, std::int64_t U) {
  return (static_cast<std::uint64_t>(N) << 32) | static_cast<std::uint64_t>(U);
}

void check_packable(std::int64_t N, std::int64_t U) {
  if (N >= kPackLimit || U >= kPackLimit)
    throw std::invalid_argument("N or U too large for the weight table");
}

}  // namespace

WeightTable::WeightTable(Spectrum spectrum, Statistics stats)
    : spectrum_(std::move(spectrum)), stats_(stats) {
  std::int64_t states = 0, energy = 0;
  for (const auto& lv : spectrum_.levels()) {
    states += lv.degeneracy;
    energy += lv.degeneracy * lv.energy;
    cum_states_.push_back(states);
    cum_energy_.push_back(energy);
  }
  total_states_ = states;
}

// Exact occupancy bounds: a configuration exists only if U lies between the
// cheapest and the priciest way of placing N particles. For gappy spectra
// the recursion itself still returns zero inside the window.
bool WeightTable::feasible(std::int64_t N, std::int64_t U) const {
  if (N == 0) return U == 0;
  if (stats_ == Statistics::Bose) {
    return U >= N * spectrum_.min_energy() && U <= N * spectrum_.max_energy();
  }
  if (N > total_states_) return false;
  const auto& lv = spectrum_.levels();
  // cheapest: fill levels from the bottom
  std::int64_t cheapest = 0, left = N;
  for (std::size_t i = 0; i < lv.size() && left > 0; ++i) {
    std::int64_t take = std::min(left, lv[i].degeneracy);
    cheapest += take * lv[i].energy;
    left -= take;
  }
  // priciest: fill levels from the top
  std::int64_t priciest = 0;
  left = N;
  for (std::size_t i = lv.size(); i-- > 0 && left > 0;) {
    std::int64_t take = std::min(left, lv[i].degeneracy);
    priciest += take * lv[i].energy;
    left -= take;
  }
  return U >= cheapest && U <= priciest;
}

BigCount WeightTable::weight(std::int64_t N, std::int64_t U) const {
  if (N < 0 || U < 0) return BigCount(0);
  if (N == 0) return BigCount(U == 0 ? 1 : 0);
  if (!feasible(N, U)) return BigCount(0);
  check_packable(N, U);
  const std::uint64_t key = pack(N, U);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  // N W(N, U) = sum_{n, eps} (+-1)^{n-1} g_eps W(N - n, U - n eps)
  BigCount sum(0);
  for (std::int64_t n = 1; n <= N; ++n) {
    const bool negative = (stats_ == Statistics::Fermi) && (n % 2 == 0);
    for (const auto& lv : spectrum_.levels()) {
      const std::int64_t rem = U - n * lv.energy;
      if (rem < 0) break;
      BigCount w = weight(N - n, rem);
      if (w == 0) continue;
      w *= lv.degeneracy;
      if (negative)
        sum -= w;
      else
        sum += w;
    }
  }
  if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(N)))
    throw ConsistencyError("weight recursion sum not divisible by N at N=" +
                           std::to_string(N) + " U=" + std::to_string(U));
  BigCount out;
  mpz_divexact_ui(out.get_mpz_t(), sum.get_mpz_t(),
                  static_cast<unsigned long>(N));
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, out);
  }
  return out;
}

BigCount WeightTable::weight_energy_recursion(std::int64_t N,
                                              std::int64_t U) const {
  if (N < 0 || U < 0) return BigCount(0);
  if (N == 0) return BigCount(U == 0 ? 1 : 0);
  if (U == 0) return weight(N, 0);  // the 1/U form is silent here
  if (!feasible(N, U)) return BigCount(0);
  check_packable(N, U);
  const std::uint64_t key = pack(N, U);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_energy_.find(key);
    if (it != memo_energy_.end()) return it->second;
  }

  // U W(N, U) = sum_{n, eps} (+-1)^{n-1} eps g_eps W(N - n, U - n eps);
  // zero-energy levels drop out under the eps factor.
  BigCount sum(0);
  for (std::int64_t n = 1; n <= N; ++n) {
    const bool negative = (stats_ == Statistics::Fermi) && (n % 2 == 0);
    for (const auto& lv : spectrum_.levels()) {
      if (lv.energy == 0) continue;
      const std::int64_t rem = U - n * lv.energy;
      if (rem < 0) break;
      BigCount w = weight_energy_recursion(N - n, rem);
      if (w == 0) continue;
      w *= lv.degeneracy * lv.energy;
      if (negative)
        sum -= w;
      else
        sum += w;
    }
  }
  if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(U)))
    throw ConsistencyError("weight recursion sum not divisible by U at N=" +
                           std::to_string(N) + " U=" + std::to_string(U));
  BigCount out;
  mpz_divexact_ui(out.get_mpz_t(), sum.get_mpz_t(),
                  static_cast<unsigned long>(U));
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_energy_.emplace(key, out);
  }
  return out;
}

BigCount WeightTable::occupancy_numerator(std::int64_t N, std::int64_t U,
                                          std::int64_t energy) const {
  const std::int64_t g = spectrum_.degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  if (N <= 0 || U < 0) return BigCount(0);
  std::int64_t n_max = N;
  if (energy > 0) n_max = std::min(n_max, U / energy);
  BigCount sum(0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const bool negative = (stats_ == Statistics::Fermi) && (n % 2 == 0);
    BigCount w = weight(N - n, U - n * energy);
    if (w == 0) continue;
    if (negative)
      sum -= w;
    else
      sum += w;
  }
  return sum * g;
}

ExactRatio WeightTable::occupancy(std::int64_t N, std::int64_t U,
                                  std::int64_t energy) const {
  BigCount w = weight(N, U);
  if (w == 0) {
    // still validate the level
    occupancy_numerator(0, 0, energy);
    return ExactRatio(0);
  }
  ExactRatio r(occupancy_numerator(N, U, energy), w);
  r.canonicalize();
  return r;
}

ExactRatio WeightTable::occupancy_step(std::int64_t N, std::int64_t U,
                                       std::int64_t energy) const {
  const std::int64_t g = spectrum_.degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  if (N <= 0 || U < 0) return ExactRatio(0);
  // Climb one particle at a time: at step n the system holds n particles and
  // energy U - (N - n) eps, and
  //   N_eps(n, u) = W(n-1, u-eps)/W(n, u) * (g +- N_eps(n-1, u-eps)).
  ExactRatio val(0);
  for (std::int64_t n = 1; n <= N; ++n) {
    const std::int64_t u = U - (N - n) * energy;
    if (u < 0) {
      val = 0;
      continue;
    }
    BigCount w_n = weight(n, u);
    if (w_n == 0) {
      val = 0;
      continue;
    }
    BigCount w_prev = weight(n - 1, u - energy);
    ExactRatio inner = stats_ == Statistics::Fermi
                           ? ExactRatio(ExactRatio(g) - val)
                           : ExactRatio(ExactRatio(g) + val);
    ExactRatio factor(w_prev, w_n);
    factor.canonicalize();
    val = factor * inner;
  }
  return val;
}

double WeightTable::entropy(std::int64_t N, std::int64_t U) const {
  BigCount w = weight(N, U);
  if (w == 0)
    throw std::domain_error("entropy undefined: W(" + std::to_string(N) +
                            ", " + std::to_string(U) + ") = 0");
  return log_big(w);
}

ChargelessWeightTable::ChargelessWeightTable(Spectrum spectrum,
                                             Statistics stats)
    : spectrum_(std::move(spectrum)), stats_(stats), base_(1) {
  if (stats_ == Statistics::Bose && spectrum_.min_energy() == 0)
    throw std::invalid_argument(
        "chargeless bosons need a spectrum without a zero level");
  // A fermionic zero level holds any subset of its g0 states at no energy
  // cost, so the U = 0 count is 2^g0 rather than 1.
  if (stats_ == Statistics::Fermi && spectrum_.min_energy() == 0) {
    mpz_ui_pow_ui(base_.get_mpz_t(), 2,
                  static_cast<unsigned long>(spectrum_.levels()[0].degeneracy));
  }
}

BigCount ChargelessWeightTable::weight(std::int64_t U) const {
  if (U < 0) return BigCount(0);
  if (U == 0) return base_;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(U);
    if (it != memo_.end()) return it->second;
  }
  // U W(U) = sum_{eps >= 1} eps g_eps sum_n (+-1)^{n-1} W(U - n eps)
  BigCount sum(0);
  for (const auto& lv : spectrum_.levels()) {
    if (lv.energy == 0 || lv.energy > U) continue;
    BigCount inner(0);
    for (std::int64_t n = 1; n * lv.energy <= U; ++n) {
      const bool negative = (stats_ == Statistics::Fermi) && (n % 2 == 0);
      BigCount w = weight(U - n * lv.energy);
      if (negative)
        inner -= w;
      else
        inner += w;
    }
    sum += inner * (lv.energy * lv.degeneracy);
  }
  if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(U)))
    throw ConsistencyError(
        "chargeless weight recursion sum not divisible by U at U=" +
        std::to_string(U));
  BigCount out;
  mpz_divexact_ui(out.get_mpz_t(), sum.get_mpz_t(),
                  static_cast<unsigned long>(U));
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(U, out);
  }
  return out;
}

ExactRatio ChargelessWeightTable::occupancy(std::int64_t U,
                                            std::int64_t energy) const {
  const std::int64_t g = spectrum_.degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  if (U < 0) return ExactRatio(0);
  BigCount w = weight(U);
  if (w == 0) return ExactRatio(0);
  if (energy == 0) {
    // Fermionic only (bosonic zero levels are rejected at construction).
    // Toggling one zero-level state pairs the microstates up, so exactly
    // half of them occupy it: the mean is g/2 at every U.
    ExactRatio half(g, 2);
    half.canonicalize();
    return half;
  }
  BigCount sum(0);
  for (std::int64_t n = 1; n * energy <= U; ++n) {
    const bool negative = (stats_ == Statistics::Fermi) && (n % 2 == 0);
    BigCount t = weight(U - n * energy);
    if (negative)
      sum -= t;
    else
      sum += t;
  }
  ExactRatio r(sum * g, w);
  r.canonicalize();
  return r;
}

double ChargelessWeightTable::entropy(std::int64_t U) const {
  BigCount w = weight(U);
  if (w == 0)
    throw std::domain_error("entropy undefined: W(" + std::to_string(U) +
                            ") = 0");
  return log_big(w);
}

}  // namespace bfstat
