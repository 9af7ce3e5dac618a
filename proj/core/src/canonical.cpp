#include "bfstat/canonical.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "bfstat/errors.hpp"

namespace bfstat {

CanonicalContext::CanonicalContext(Spectrum spectrum, Statistics stats,
                                   std::optional<std::int64_t> cutoff)
    : spectrum_(std::move(spectrum)), stats_(stats), cutoff_(cutoff) {
  if (cutoff_ && *cutoff_ < 1)
    throw std::invalid_argument("cutoff must be >= 1");
  for (const auto& lv : spectrum_.levels())
    z1_ += QSeries::monomial(ExactRatio(lv.degeneracy), lv.energy);
  if (cutoff_) z1_ = z1_.truncated(*cutoff_);
  z_cache_.push_back(cutoff_ ? QSeries::one().truncated(*cutoff_)
                             : QSeries::one());
  zprime_cache_.push_back(QSeries());  // Z'(0, q) = 0
}

QSeries CanonicalContext::z1() const { return z1_; }

QSeries CanonicalContext::z1_substituted_unlocked(std::int64_t n) const {
  auto it = z1_sub_cache_.find(n);
  if (it != z1_sub_cache_.end()) return it->second;
  QSeries sub = z1_.substituted_power(n);
  if (cutoff_) sub = sub.truncated(*cutoff_);
  z1_sub_cache_.emplace(n, sub);
  return sub;
}

QSeries CanonicalContext::z1_substituted(std::int64_t n) const {
  std::lock_guard<std::mutex> lock(mu_);
  return z1_substituted_unlocked(n);
}

const QSeries& CanonicalContext::partition_function_unlocked(
    std::int64_t N) const {
  // N Z(N, q) = sum_{n=1..N} (+-1)^{n-1} Z(N - n, q) Z(1, q^n)
  while (static_cast<std::int64_t>(z_cache_.size()) <= N) {
    const std::int64_t m = static_cast<std::int64_t>(z_cache_.size());
    QSeries acc;
    for (std::int64_t n = 1; n <= m; ++n) {
      QSeries term = z_cache_[static_cast<std::size_t>(m - n)] *
                     z1_substituted_unlocked(n);
      if (stats_ == Statistics::Fermi && n % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    ExactRatio inv_m(1, m);
    inv_m.canonicalize();
    z_cache_.push_back(inv_m * acc);
  }
  return z_cache_[static_cast<std::size_t>(N)];
}

QSeries CanonicalContext::partition_function(std::int64_t N) const {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  return partition_function_unlocked(N);
}

QSeries CanonicalContext::partition_function_via_partitions(
    std::int64_t N) const {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  // Z(N, q) = sum over partitions of N with multiplicities nu_k of
  //   prod_k [(+-1)^{k-1}]^{nu_k} Z(1, q^k)^{nu_k} / (nu_k! k^{nu_k}).
  QSeries total;
  std::vector<std::int64_t> nu(static_cast<std::size_t>(N) + 1, 0);
  std::function<void(std::int64_t, std::int64_t)> emit =
      [&](std::int64_t k, std::int64_t rem) {
        if (rem == 0) {
          ExactRatio coeff(1);
          QSeries series = cutoff_ ? QSeries::one().truncated(*cutoff_)
                                   : QSeries::one();
          bool minus = false;
          for (std::int64_t part = 1; part <= N; ++part) {
            const std::int64_t m = nu[static_cast<std::size_t>(part)];
            if (m == 0) continue;
            if (stats_ == Statistics::Fermi && (part - 1) * m % 2 != 0)
              minus = !minus;
            BigCount denom = factorial(m);
            BigCount kpow;
            mpz_ui_pow_ui(kpow.get_mpz_t(), static_cast<unsigned long>(part),
                          static_cast<unsigned long>(m));
            denom *= kpow;
            ExactRatio f(BigCount(1), denom);
            f.canonicalize();
            coeff *= f;
            series *= z1_substituted_unlocked(part).pow(m);
          }
          if (minus) coeff = -coeff;
          total += coeff * series;
          return;
        }
        if (k > rem) return;
        for (std::int64_t m = 0; m * k <= rem; ++m) {
          nu[static_cast<std::size_t>(k)] = m;
          emit(k + 1, rem - m * k);
        }
        nu[static_cast<std::size_t>(k)] = 0;
      };
  emit(1, N);
  return total;
}

QSeries CanonicalContext::partition_function_derivative(std::int64_t N) const {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  partition_function_unlocked(N);
  // Z'(N, q) = sum_{n=1..N} (+-1)^{n-1} q^{n-1} Z(N - n, q) Z'(1, q^n)
  QSeries acc;
  for (std::int64_t n = 1; n <= N; ++n) {
    auto it = z1_prime_sub_cache_.find(n);
    if (it == z1_prime_sub_cache_.end()) {
      QSeries sub = z1_.derivative().substituted_power(n);
      if (cutoff_) sub = sub.truncated(*cutoff_);
      it = z1_prime_sub_cache_.emplace(n, sub).first;
    }
    QSeries term =
        (z_cache_[static_cast<std::size_t>(N - n)] * it->second).shifted(n - 1);
    if (cutoff_) term = term.truncated(*cutoff_);
    if (stats_ == Statistics::Fermi && n % 2 == 0)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

QSeries CanonicalContext::partition_function_derivative_alt(
    std::int64_t N) const {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  partition_function_unlocked(N);
  // Differentiating the Z(N) recursion and cancelling the direct derivative
  // route leaves, for N >= 2:
  //   (N-1) Z'(N) = sum_{n=1}^{N-1} (+-1)^{n-1} Z'(N-n) Z(1, q^n)
  //               + sum_{n=2}^{N} (+-1)^{n-1} (n-1) q^{n-1} Z(N-n) Z'(1, q^n)
  // seeded with Z'(1) = dZ(1)/dq. The Z'(N-n) factors come from this same
  // route, so it never consults the direct recursion above.
  while (static_cast<std::int64_t>(zprime_cache_.size()) <= N) {
    const std::int64_t m = static_cast<std::int64_t>(zprime_cache_.size());
    if (m == 1) {
      zprime_cache_.push_back(z1_.derivative());
      continue;
    }
    QSeries acc;
    for (std::int64_t n = 1; n <= m - 1; ++n) {
      QSeries term = zprime_cache_[static_cast<std::size_t>(m - n)] *
                     z1_substituted_unlocked(n);
      if (stats_ == Statistics::Fermi && n % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    for (std::int64_t n = 2; n <= m; ++n) {
      auto it = z1_prime_sub_cache_.find(n);
      if (it == z1_prime_sub_cache_.end()) {
        QSeries sub = z1_.derivative().substituted_power(n);
        if (cutoff_) sub = sub.truncated(*cutoff_);
        it = z1_prime_sub_cache_.emplace(n, sub).first;
      }
      QSeries term = ExactRatio(n - 1) *
                     (z_cache_[static_cast<std::size_t>(m - n)] * it->second)
                         .shifted(n - 1);
      if (cutoff_) term = term.truncated(*cutoff_);
      if (stats_ == Statistics::Fermi && n % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    ExactRatio inv(1, m - 1);
    inv.canonicalize();
    zprime_cache_.push_back(inv * acc);
  }
  return zprime_cache_[static_cast<std::size_t>(N)];
}

QSeriesRatio CanonicalContext::occupancy_formal(std::int64_t N,
                                                std::int64_t energy) const {
  const std::int64_t g = spectrum_.degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  partition_function_unlocked(N);
  // N_eps(N, q) = g sum_{n=1..N} (+-1)^{n-1} q^{n eps} Z(N-n, q) / Z(N, q)
  QSeries num;
  for (std::int64_t n = 1; n <= N; ++n) {
    QSeries term =
        z_cache_[static_cast<std::size_t>(N - n)].shifted(n * energy);
    if (cutoff_) term = term.truncated(*cutoff_);
    if (stats_ == Statistics::Fermi && n % 2 == 0)
      num -= term;
    else
      num += term;
  }
  num = ExactRatio(g) * num;
  return {num, z_cache_[static_cast<std::size_t>(N)]};
}

double CanonicalContext::occupancy_value(std::int64_t N, std::int64_t energy,
                                         double q0) const {
  const std::int64_t g = spectrum_.degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (!(q0 > 0.0 && q0 < 1.0))
    throw std::domain_error("occupancy_value needs q0 in (0, 1)");
  std::vector<double> zvals(static_cast<std::size_t>(N) + 1);
  {
    std::lock_guard<std::mutex> lock(mu_);
    partition_function_unlocked(N);
    for (std::int64_t n = 0; n <= N; ++n)
      zvals[static_cast<std::size_t>(n)] =
          z_cache_[static_cast<std::size_t>(n)].evaluate(q0);
  }
  if (zvals[static_cast<std::size_t>(N)] == 0.0) return 0.0;  // empty ensemble
  double acc = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    double term = std::pow(q0, static_cast<double>(n * energy)) *
                  zvals[static_cast<std::size_t>(N - n)];
    if (stats_ == Statistics::Fermi && n % 2 == 0)
      acc -= term;
    else
      acc += term;
  }
  return static_cast<double>(g) * acc / zvals[static_cast<std::size_t>(N)];
}

SeriesThermo thermo_from_series(const QSeries& Z, double q0) {
  if (!(q0 > 0.0 && q0 < 1.0))
    throw std::domain_error("thermo needs q0 in (0, 1)");
  const double zv = Z.evaluate(q0);
  if (!(zv > 0.0))
    throw std::domain_error("partition function is not positive at q0");
  const QSeries Zp = Z.derivative();
  const QSeries Zpp = Zp.derivative();
  const double zpv = Zp.evaluate(q0);
  const double zppv = Zpp.evaluate(q0);
  SeriesThermo t;
  t.Z = zv;
  t.T = -1.0 / std::log(q0);
  t.U = q0 * zpv / zv;
  // Var(U) = (q d/dq)^2 ln Z = q (Z' + q Z'')/Z - U^2
  t.VarU = q0 * (zpv + q0 * zppv) / zv - t.U * t.U;
  t.heat_capacity = t.VarU / (t.T * t.T);
  t.entropy = std::log(zv) + t.U / t.T;
  return t;
}

ThermoReport CanonicalContext::thermodynamics(std::int64_t N,
                                              double q0) const {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  SeriesThermo t = thermo_from_series(partition_function(N), q0);
  ThermoReport r;
  r.particles = static_cast<double>(N);
  r.integer_particles = true;
  r.q = q0;
  r.T = t.T;
  r.Z_value = t.Z;
  r.U = t.U;
  r.VarU = t.VarU;
  r.heat_capacity = t.heat_capacity;
  r.entropy = t.entropy;
  for (const auto& lv : spectrum_.levels())
    r.occupancy.push_back({lv.energy, occupancy_value(N, lv.energy, q0)});
  return r;
}

QSeries chargeless_partition_function(const Spectrum& s, Statistics stats,
                                      std::int64_t cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (stats == Statistics::Bose && s.min_energy() == 0)
    throw std::invalid_argument(
        "chargeless bosons need a spectrum without a zero level");
  QSeries acc = QSeries::one().truncated(cutoff);
  for (const auto& lv : s.levels()) {
    QSeries factor;
    if (stats == Statistics::Bose) {
      // 1/(1 - q^eps) truncated: the geometric series (eps >= 1 here)
      for (std::int64_t e = 0; e < cutoff; e += lv.energy)
        factor += QSeries::monomial(ExactRatio(1), e);
    } else {
      factor = QSeries::one() + QSeries::monomial(ExactRatio(1), lv.energy);
    }
    factor = factor.truncated(cutoff);
    acc *= factor.pow(lv.degeneracy);
  }
  return acc;
}

ThermoReport chargeless_thermo(const Spectrum& s, Statistics stats, double q0,
                               double tolerance, int term_cap) {
  if (!(q0 > 0.0 && q0 < 1.0))
    throw std::domain_error("chargeless_thermo needs q0 in (0, 1)");
  if (stats == Statistics::Bose && s.min_energy() == 0)
    throw std::invalid_argument(
        "chargeless bosons need a spectrum without a zero level");

  QSeries z1;
  for (const auto& lv : s.levels())
    z1 += QSeries::monomial(ExactRatio(lv.degeneracy), lv.energy);
  const QSeries z1p = z1.derivative();
  const QSeries z1pp = z1p.derivative();

  // A fermionic zero level contributes a constant to Z(1, q^n); its power
  // sums oscillate instead of converging, so it is split off and resummed in
  // closed form: mean occupancy g0/2 and ln-partition share g0 ln 2.
  double const0 = 0.0;
  if (stats == Statistics::Fermi && s.min_energy() == 0)
    const0 = static_cast<double>(s.levels()[0].degeneracy);

  const bool fermi = stats == Statistics::Fermi;
  double N_sum = const0 / 2.0;
  double U_sum = 0.0;
  double Var_sum = 0.0;
  double lnZ = const0 * std::log(2.0);
  bool converged = false;
  for (int n = 1; n <= term_cap; ++n) {
    const double qn = std::pow(q0, n);
    const double sign = (fermi && n % 2 == 0) ? -1.0 : 1.0;
    const double z1v = z1.evaluate(qn) - const0;
    const double z1pv = z1p.evaluate(qn);
    const double z1ppv = z1pp.evaluate(qn);
    const double tN = sign * z1v;
    const double tU = sign * z1pv * qn;
    const double tVar = sign * n * qn * (qn * z1ppv + z1pv);
    const double tLnZ = sign * z1v / n;
    N_sum += tN;
    U_sum += tU;
    Var_sum += tVar;
    lnZ += tLnZ;
    const double scale = std::max(1.0, std::abs(U_sum));
    if (std::abs(tN) <= tolerance * std::max(1.0, std::abs(N_sum)) &&
        std::abs(tU) <= tolerance * scale &&
        std::abs(tVar) <= tolerance * std::max(1.0, std::abs(Var_sum))) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw SeriesCapExceeded("chargeless power sums missed tolerance " +
                            std::to_string(tolerance) + " within " +
                            std::to_string(term_cap) + " terms");

  ThermoReport r;
  r.integer_particles = false;
  r.q = q0;
  r.T = -1.0 / std::log(q0);
  double occ_N = 0.0, occ_U = 0.0;
  for (const auto& lv : s.levels()) {
    const double x = std::pow(q0, static_cast<double>(lv.energy));
    const double g = static_cast<double>(lv.degeneracy);
    const double n_eps = fermi ? g * x / (1.0 + x) : g * x / (1.0 - x);
    r.occupancy.push_back({lv.energy, n_eps});
    occ_N += n_eps;
    occ_U += static_cast<double>(lv.energy) * n_eps;
  }
  if (std::abs(occ_U - U_sum) > 1e-10 * std::max(1.0, std::abs(U_sum)))
    throw ConsistencyError(
        "chargeless energy sum rule violated: sum eps N_eps != U");
  if (std::abs(occ_N - N_sum) > 1e-10 * std::max(1.0, std::abs(N_sum)))
    throw ConsistencyError(
        "chargeless particle sum disagrees with its power-sum series");
  r.particles = N_sum;
  r.U = U_sum;
  r.VarU = Var_sum;
  r.heat_capacity = Var_sum / (r.T * r.T);
  r.entropy = lnZ + U_sum / r.T;
  r.Z_value = std::exp(lnZ);
  return r;
}

}  // namespace bfstat
