#include "bfstat/even_spaced.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "bfstat/canonical.hpp"
#include "bfstat/errors.hpp"

namespace bfstat {

namespace {

using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

BigCount partition_count_rec(std::int64_t B, std::int64_t N, std::int64_t U,
                             std::map<Key, BigCount>& memo) {
  if (U < 0) return BigCount(0);
  if (U == 0) return BigCount(1);
  if (B <= 0 || N <= 0) return BigCount(0);
  if (U > B * N) return BigCount(0);
  const Key key{B, N, U};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  // split on whether all N parts are used; if so strip one unit from each
  BigCount r = partition_count_rec(B, N - 1, U, memo) +
               partition_count_rec(B - 1, N, U - N, memo);
  memo.emplace(key, r);
  return r;
}

std::string params_text(std::int64_t B, std::int64_t N, std::int64_t U) {
  return "B=" + std::to_string(B) + " N=" + std::to_string(N) +
         " U=" + std::to_string(U);
}

IdentityReport make_report(std::string name, std::string params,
                           const BigCount& left, const BigCount& right) {
  IdentityReport r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  r.left = left.get_str();
  r.right = right.get_str();
  r.pass = (left == right);
  return r;
}

// 1 - q^e
QSeries one_minus(std::int64_t e) {
  return QSeries::one() - QSeries::monomial(ExactRatio(1), e);
}

}  // namespace

BigCount restricted_partition_count(std::int64_t B, std::int64_t N,
                                    std::int64_t U) {
  static std::mutex mu;
  static std::map<Key, BigCount> memo;
  std::lock_guard<std::mutex> lock(mu);
  return partition_count_rec(B, N, U, memo);
}

BigCount bose_band_weight(std::int64_t B, std::int64_t N, std::int64_t U) {
  if (N < 0 || B < 0) return BigCount(0);
  return restricted_partition_count(B, N, U);
}

BigCount fermi_band_weight(std::int64_t B, std::int64_t N, std::int64_t U) {
  if (N < 0 || B < 0) return BigCount(0);
  if (N > B + 1) return BigCount(0);
  return restricted_partition_count(B - N + 1, N, U - N * (N - 1) / 2);
}

std::vector<IdentityReport> micro_identity_suite(std::int64_t B,
                                                 std::int64_t N,
                                                 std::int64_t U) {
  WeightTable bose(Spectrum::evenly_spaced_band(B), Statistics::Bose);
  WeightTable fermi(Spectrum::evenly_spaced_band(B), Statistics::Fermi);
  return micro_identity_suite(bose, fermi, B, N, U);
}

std::vector<IdentityReport> micro_identity_suite(const WeightTable& bose,
                                                 const WeightTable& fermi,
                                                 std::int64_t B,
                                                 std::int64_t N,
                                                 std::int64_t U) {
  if (bose.statistics() != Statistics::Bose ||
      fermi.statistics() != Statistics::Fermi)
    throw std::invalid_argument("tables passed in the wrong order");
  const Spectrum band = Spectrum::evenly_spaced_band(B);
  if (!(bose.spectrum() == band) || !(fermi.spectrum() == band))
    throw std::invalid_argument("weight tables are not over the band 0.." +
                                std::to_string(B));

  const std::string params = params_text(B, N, U);
  std::vector<IdentityReport> out;

  // removing the ground level: microstates with nothing at level 0 shift
  // down to (N, U-N)-microstates, minus those that spill past the top
  out.push_back(make_report(
      "bose-shift", params,
      bose.weight(N, U) - bose.weight(N - 1, U),
      bose.weight(N, U - N) - bose.weight(N - 1, U - N - B)));

  // the same shift applied to the occupancy moments M_k = W * N_k couples
  // adjacent levels k and k+1
  for (std::int64_t k = 0; k + 1 <= B; ++k) {
    const BigCount left = bose.weight(N, U) +
                          bose.occupancy_numerator(N, U, k + 1) -
                          bose.occupancy_numerator(N, U + k + 1, k + 1);
    const BigCount right = bose.weight(N, U - N) +
                           bose.occupancy_numerator(N, U - N, k) -
                           bose.occupancy_numerator(N, U - N - B + k, k);
    out.push_back(make_report("bose-adjacent(k=" + std::to_string(k) + ")",
                              params, left, right));
  }

  // fermionic shift, phrased with a fictitious level B+1 on the left and a
  // fictitious level -1 on the right
  out.push_back(make_report(
      "fermi-shift", params,
      fermi.weight(N, U) + fermi.weight(N - 1, U - B - 1),
      fermi.weight(N, U - N) + fermi.weight(N - 1, U - N + 1)));

  // ground-level occupancy closure of the same shift
  out.push_back(make_report(
      "fermi-ground", params,
      fermi.occupancy_numerator(N, U, 0) +
          fermi.occupancy_numerator(N - 1, U - B - 1, 0),
      fermi.weight(N - 1, U - N + 1)));

  for (std::int64_t k = 0; k + 1 <= B; ++k) {
    const BigCount left = fermi.weight(N, U) -
                          fermi.occupancy_numerator(N, U, k + 1) +
                          fermi.occupancy_numerator(N, U - B + k, k + 1);
    const BigCount right = fermi.weight(N, U - N) -
                           fermi.occupancy_numerator(N, U - N, k) +
                           fermi.occupancy_numerator(N, U - N + 1 + k, k);
    out.push_back(make_report("fermi-adjacent(k=" + std::to_string(k) + ")",
                              params, left, right));
  }

  // the adjacent-level relation extended one step below the band
  out.push_back(make_report(
      "fermi-adjacent(k=-1)", params, fermi.occupancy_numerator(N, U, 0),
      fermi.occupancy_numerator(N, U - B - 1, 0) + fermi.weight(N, U) -
          fermi.weight(N, U - N)));

  return out;
}

QSeries gaussian_partition_function(std::int64_t B, std::int64_t N,
                                    Statistics stats) {
  if (B < 0 || N < 0) throw std::invalid_argument("band needs B, N >= 0");
  if (stats == Statistics::Bose) {
    const QSeries num = QSeries::pochhammer(B + N);
    const QSeries den = QSeries::pochhammer(B) * QSeries::pochhammer(N);
    return QSeries::divide_exact(num, den);
  }
  if (N > B + 1)
    throw std::invalid_argument(
        "a band with top level " + std::to_string(B) + " holds at most " +
        std::to_string(B + 1) + " fermions");
  const QSeries num = QSeries::pochhammer(B + 1);
  const QSeries den =
      QSeries::pochhammer(B + 1 - N) * QSeries::pochhammer(N);
  return QSeries::divide_exact(num, den).shifted(N * (N - 1) / 2);
}

std::vector<QSeriesRatio> occupancy_ladder_formal(std::int64_t B,
                                                  std::int64_t N,
                                                  Statistics stats) {
  if (B < 0 || N < 0) throw std::invalid_argument("band needs B, N >= 0");
  if (stats == Statistics::Fermi && N > B + 1)
    throw std::invalid_argument(
        "a band with top level " + std::to_string(B) + " holds at most " +
        std::to_string(B + 1) + " fermions");
  std::vector<QSeriesRatio> out;
  out.reserve(static_cast<std::size_t>(B) + 1);

  QSeriesRatio cur;
  if (stats == Statistics::Fermi) {
    // the shift argument closes at the ground level: N_0 = (1-q^N)/(1-q^{B+1})
    cur.numerator = one_minus(N);
    cur.denominator = one_minus(B + 1);
  } else {
    // no closed bosonic ground form; seed from the generic signed sum
    CanonicalContext ctx(Spectrum::evenly_spaced_band(B), Statistics::Bose);
    cur = ctx.occupancy_formal(N, 0);
  }
  out.push_back(cur);

  const QSeries qN = QSeries::monomial(ExactRatio(1), N);
  const QSeries step_gain = one_minus(N);  // 1 - q^N
  for (std::int64_t k = 0; k + 1 <= B; ++k) {
    const QSeries qk1 = QSeries::monomial(ExactRatio(1), k + 1);
    // 1 - q^{k+1} and q^{k+1} - q^{B+1}: the hole and particle step weights
    const QSeries hole = one_minus(k + 1);
    const QSeries part = qk1 - QSeries::monomial(ExactRatio(1), B + 1);
    QSeriesRatio next;
    if (stats == Statistics::Bose) {
      next.numerator =
          qk1 * step_gain * cur.denominator - qN * part * cur.numerator;
      next.denominator = hole * cur.denominator;
    } else {
      next.numerator =
          qk1 * step_gain * cur.denominator - qN * hole * cur.numerator;
      next.denominator = part * cur.denominator;
    }
    out.push_back(next);
    cur = std::move(next);
  }
  return out;
}

std::vector<double> occupancy_ladder(std::int64_t B, std::int64_t N,
                                     Statistics stats, double q0) {
  if (!(q0 > 0.0 && q0 < 1.0))
    throw std::invalid_argument("q0 must lie in (0, 1)");
  if (B < 0 || N < 0) throw std::invalid_argument("band needs B, N >= 0");
  if (stats == Statistics::Fermi && N > B + 1)
    throw std::invalid_argument(
        "a band with top level " + std::to_string(B) + " holds at most " +
        std::to_string(B + 1) + " fermions");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(B) + 1);

  const double qN = std::pow(q0, static_cast<double>(N));
  const double qB1 = std::pow(q0, static_cast<double>(B + 1));
  double cur;
  if (stats == Statistics::Fermi) {
    cur = (1.0 - qN) / (1.0 - qB1);
  } else {
    CanonicalContext ctx(Spectrum::evenly_spaced_band(B), Statistics::Bose);
    cur = ctx.occupancy_value(N, 0, q0);
  }
  out.push_back(cur);
  for (std::int64_t k = 0; k + 1 <= B; ++k) {
    const double qk1 = std::pow(q0, static_cast<double>(k + 1));
    double next;
    if (stats == Statistics::Bose)
      next = (qk1 * (1.0 - qN) - qN * (qk1 - qB1) * cur) / (1.0 - qk1);
    else
      next = (qk1 * (1.0 - qN) - qN * (1.0 - qk1) * cur) / (qk1 - qB1);
    out.push_back(next);
    cur = next;
  }
  return out;
}

QSeries unbounded_partition_function(std::int64_t N, Statistics stats,
                                     std::int64_t cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  const QSeries bose =
      QSeries::pochhammer(N, cutoff).reciprocal(cutoff);
  if (stats == Statistics::Bose) return bose;
  return bose.shifted(N * (N - 1) / 2).truncated(cutoff);
}

}  // namespace bfstat
