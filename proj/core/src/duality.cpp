#include "bfstat/duality.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "bfstat/canonical.hpp"
#include "bfstat/qseries.hpp"

namespace bfstat {

namespace {

constexpr std::int64_t kPackLimit = std::int64_t(1) << 31;

std::uint64_t pack(std::int64_t N, std::int64_t U) {
  if (N >= kPackLimit || U >= kPackLimit)
    throw std::invalid_argument("N and U must stay below 2^31");
  return (static_cast<std::uint64_t>(N) << 32) | static_cast<std::uint64_t>(U);
}

std::string num_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DualWeightTable::DualWeightTable(Spectrum spectrum)
    : bose_(std::move(spectrum), Statistics::Bose) {}

BigCount DualWeightTable::fermi_weight_from_bose(std::int64_t N,
                                                 std::int64_t U) const {
  if (N < 0 || U < 0) return BigCount(0);
  if (N == 0) return BigCount(U == 0 ? 1 : 0);
  const std::uint64_t key = pack(N, U);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  // n = 0 contributes the unconstrained bosonic count; each n >= 1 subtracts
  // or restores configurations holding n doubled pairs of energy 2u
  BigCount total = bose_.weight(N, U);
  for (std::int64_t n = 1; 2 * n <= N; ++n) {
    const bool negative = (n % 2 == 1);
    for (std::int64_t u = 0; 2 * u <= U; ++u) {
      BigCount pairs = fermi_weight_from_bose(n, u);
      if (pairs == 0) continue;
      BigCount rest = bose_.weight(N - 2 * n, U - 2 * u);
      if (rest == 0) continue;
      if (negative)
        total -= pairs * rest;
      else
        total += pairs * rest;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(key, std::move(total)).first->second;
}

BigCount fermi_weight_subset_sum(const WeightTable& bose, std::int64_t N,
                                 std::int64_t U) {
  if (bose.statistics() != Statistics::Bose)
    throw std::invalid_argument("subset-sum route needs the bosonic table");
  if (N < 0 || U < 0) return BigCount(0);
  const auto& levels = bose.spectrum().levels();
  BigCount total(0);
  // DFS over the number of doubly occupied states per level
  auto walk = [&](auto&& self, std::size_t idx, std::int64_t pairs,
                  std::int64_t pair_energy, const BigCount& factor) -> void {
    if (2 * pairs > N || 2 * pair_energy > U) return;
    if (idx == levels.size()) {
      BigCount rest = bose.weight(N - 2 * pairs, U - 2 * pair_energy);
      if (rest == 0) return;
      if (pairs % 2 == 1)
        total -= factor * rest;
      else
        total += factor * rest;
      return;
    }
    const auto& lv = levels[idx];
    for (std::int64_t c = 0; c <= lv.degeneracy; ++c) {
      if (2 * (pairs + c) > N) break;
      if (2 * (pair_energy + c * lv.energy) > U) break;
      self(self, idx + 1, pairs + c, pair_energy + c * lv.energy,
           factor * binomial(lv.degeneracy, c));
    }
  };
  walk(walk, 0, 0, 0, BigCount(1));
  return total;
}

std::vector<IdentityReport> canonical_duality_suite(const Spectrum& s,
                                                    std::int64_t N_max) {
  if (N_max < 1) throw std::invalid_argument("N_max must be >= 1");
  CanonicalContext bose(s, Statistics::Bose);
  CanonicalContext fermi(s, Statistics::Fermi);
  std::vector<IdentityReport> out;
  for (std::int64_t N = 1; N <= N_max; ++N) {
    const std::string params = "N=" + std::to_string(N);

    // fermionic Z rebuilt from bosonic factors and doubled-step fermionic ones
    QSeries rebuilt;
    for (std::int64_t n = 0; 2 * n <= N; ++n) {
      QSeries term = bose.partition_function(N - 2 * n) *
                     fermi.partition_function(n).substituted_power(2);
      if (n % 2 == 1)
        rebuilt -= term;
      else
        rebuilt += term;
    }
    IdentityReport r1;
    r1.name = "fermi-from-bose";
    r1.parameters = params;
    r1.left = fermi.partition_function(N).to_text();
    r1.right = rebuilt.to_text();
    r1.pass = same_coefficients(fermi.partition_function(N), rebuilt);
    out.push_back(std::move(r1));

    // the signed convolution of the two partition functions vanishes
    QSeries alternating;
    for (std::int64_t n = 0; n <= N; ++n) {
      QSeries term =
          bose.partition_function(n) * fermi.partition_function(N - n);
      if (n % 2 == 1)
        alternating -= term;
      else
        alternating += term;
    }
    IdentityReport r2;
    r2.name = "alternating-sum";
    r2.parameters = params;
    r2.left = alternating.to_text();
    r2.right = "0";
    r2.pass = alternating.is_zero();
    out.push_back(std::move(r2));

    // mirrored rebuild of the bosonic Z from fermionic factors
    QSeries mirrored;
    for (std::int64_t n = 0; 2 * n <= N; ++n)
      mirrored += fermi.partition_function(N - 2 * n) *
                  bose.partition_function(n).substituted_power(2);
    IdentityReport r3;
    r3.name = "bose-mirror";
    r3.parameters = params;
    r3.left = bose.partition_function(N).to_text();
    r3.right = mirrored.to_text();
    r3.pass = same_coefficients(bose.partition_function(N), mirrored);
    out.push_back(std::move(r3));
  }
  return out;
}

double grand_product_signed(const Spectrum& s, Statistics stats, double z,
                            double q0) {
  if (!(q0 > 0.0 && q0 < 1.0))
    throw std::invalid_argument("q0 must lie in (0, 1)");
  double acc = 1.0;
  for (const auto& lv : s.levels()) {
    const double x = z * std::pow(q0, static_cast<double>(lv.energy));
    double factor;
    if (stats == Statistics::Bose) {
      if (!(1.0 - x > 0.0))
        throw std::domain_error("bosonic factor 1 - z q^eps vanishes or "
                                "turns negative at level " +
                                std::to_string(lv.energy));
      factor = 1.0 / (1.0 - x);
    } else {
      if (!(1.0 + x > 0.0))
        throw std::domain_error("fermionic factor 1 + z q^eps vanishes or "
                                "turns negative at level " +
                                std::to_string(lv.energy));
      factor = 1.0 + x;
    }
    acc *= std::pow(factor, static_cast<double>(lv.degeneracy));
  }
  return acc;
}

std::vector<IdentityReport> grand_duality_check(const Spectrum& s, double z,
                                                double q0, double tolerance) {
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  auto check = [&](const char* name, double left, double right) {
    IdentityReport r;
    r.name = name;
    r.parameters = "z=" + num_text(z) + " q=" + num_text(q0);
    r.left = num_text(left);
    r.right = num_text(right);
    const double scale = std::max({1.0, std::abs(left), std::abs(right)});
    r.pass = std::abs(left - right) <= tolerance * scale;
    return r;
  };
  std::vector<IdentityReport> out;
  out.push_back(check(
      "grand-fermi-split", grand_product_signed(s, Statistics::Fermi, z, q0),
      grand_product_signed(s, Statistics::Bose, z, q0) *
          grand_product_signed(s, Statistics::Fermi, -z * z, q0 * q0)));
  out.push_back(check(
      "grand-inverse",
      grand_product_signed(s, Statistics::Bose, z, q0) *
          grand_product_signed(s, Statistics::Fermi, -z, q0),
      1.0));
  out.push_back(check(
      "grand-bose-split", grand_product_signed(s, Statistics::Bose, z, q0),
      grand_product_signed(s, Statistics::Fermi, z, q0) *
          grand_product_signed(s, Statistics::Bose, z * z, q0 * q0)));
  return out;
}

}  // namespace bfstat
