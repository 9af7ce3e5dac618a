#include "bfstat/grand_canonical.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bfstat/errors.hpp"

namespace bfstat {

namespace {

// Power sums over Z(1, q^n) z^n converge iff z q^{eps_min} < 1. Bosonic
// contexts guarantee that; fermionic ones may not, and then only the closed
// forms apply.
bool series_converges(const GrandContext& ctx) {
  return ctx.fugacity() *
             std::pow(ctx.q0(),
                      static_cast<double>(ctx.spectrum().min_energy())) <
         1.0 - 1e-12;
}

double z1_value(const Spectrum& s, double x) {
  double acc = 0.0;
  for (const auto& lv : s.levels())
    acc += static_cast<double>(lv.degeneracy) *
           std::pow(x, static_cast<double>(lv.energy));
  return acc;
}

// Z'(1, x) = sum eps g_eps x^{eps - 1}
double z1_prime_value(const Spectrum& s, double x) {
  double acc = 0.0;
  for (const auto& lv : s.levels()) {
    if (lv.energy == 0) continue;
    acc += static_cast<double>(lv.degeneracy * lv.energy) *
           std::pow(x, static_cast<double>(lv.energy - 1));
  }
  return acc;
}

template <typename Term>
double sum_power_series(const GrandContext& ctx, const char* what,
                        Term term_at) {
  double acc = 0.0;
  for (int n = 1; n <= ctx.series_cap(); ++n) {
    const double t = term_at(n);
    acc += t;
    if (std::abs(t) <= ctx.series_tolerance() * std::max(1.0, std::abs(acc)))
      return acc;
  }
  throw SeriesCapExceeded(std::string(what) + " power sum missed tolerance " +
                          std::to_string(ctx.series_tolerance()) +
                          " within " + std::to_string(ctx.series_cap()) +
                          " terms");
}

}  // namespace

GrandContext::GrandContext(Spectrum spectrum, Statistics stats,
                           double fugacity, double q0,
                           double series_tolerance, int series_cap)
    : spectrum_(std::move(spectrum)),
      stats_(stats),
      fugacity_(fugacity),
      q0_(q0),
      series_tolerance_(series_tolerance),
      series_cap_(series_cap) {
  if (!(fugacity_ > 0.0))
    throw std::invalid_argument("fugacity must be positive");
  if (!(q0_ > 0.0 && q0_ < 1.0))
    throw std::invalid_argument("q0 must lie in (0, 1)");
  if (series_cap_ < 1) throw std::invalid_argument("series cap must be >= 1");
  if (stats_ == Statistics::Bose) {
    const double top =
        fugacity_ *
        std::pow(q0_, static_cast<double>(spectrum_.min_energy()));
    if (!(top < 1.0))
      throw std::invalid_argument(
          "bosonic grand ensemble needs z q^eps < 1 at every level; got " +
          std::to_string(top) + " at the ground level");
  }
}

double GrandContext::temperature() const { return -1.0 / std::log(q0_); }

double GrandContext::chemical_potential() const {
  return temperature() * std::log(fugacity_);
}

double ln_grand_partition_series(const GrandContext& ctx) {
  // ln Xi = sum_n (+-1)^{n-1} Z(1, q^n) z^n / n
  const bool fermi = ctx.statistics() == Statistics::Fermi;
  return sum_power_series(ctx, "ln-partition", [&](int n) {
    const double sign = (fermi && n % 2 == 0) ? -1.0 : 1.0;
    return sign * z1_value(ctx.spectrum(), std::pow(ctx.q0(), n)) *
           std::pow(ctx.fugacity(), n) / n;
  });
}

double ln_grand_partition(const GrandContext& ctx) {
  double acc = 0.0;
  for (const auto& lv : ctx.spectrum().levels()) {
    const double x =
        ctx.fugacity() *
        std::pow(ctx.q0(), static_cast<double>(lv.energy));
    if (ctx.statistics() == Statistics::Bose) {
      // constructor guarantees x < 1
      acc -= static_cast<double>(lv.degeneracy) * std::log1p(-x);
    } else {
      acc += static_cast<double>(lv.degeneracy) * std::log1p(x);
    }
  }
  if (series_converges(ctx)) {
    const double srs = ln_grand_partition_series(ctx);
    if (std::abs(srs - acc) > 1e-10 * std::max(1.0, std::abs(acc)))
      throw ConsistencyError(
          "grand partition product and power sum disagree beyond 1e-10");
  }
  return acc;
}

double occupancy_grand(const GrandContext& ctx, std::int64_t energy) {
  const std::int64_t g = ctx.spectrum().degeneracy_at(energy);
  if (g == 0)
    throw std::invalid_argument("energy " + std::to_string(energy) +
                                " is not a level of the spectrum");
  const double x =
      ctx.fugacity() * std::pow(ctx.q0(), static_cast<double>(energy));
  if (ctx.statistics() == Statistics::Bose)
    return static_cast<double>(g) * x / (1.0 - x);
  return static_cast<double>(g) * x / (1.0 + x);
}

std::pair<double, double> mean_N_and_U(const GrandContext& ctx) {
  double direct_N = 0.0, direct_U = 0.0;
  for (const auto& lv : ctx.spectrum().levels()) {
    const double n_eps = occupancy_grand(ctx, lv.energy);
    direct_N += n_eps;
    direct_U += static_cast<double>(lv.energy) * n_eps;
  }
  if (!series_converges(ctx)) return {direct_N, direct_U};

  // N = sum_n (+-1)^{n-1} Z(1, q^n) z^n,
  // U = sum_n (+-1)^{n-1} Z'(1, q^n) (z q)^n
  const bool fermi = ctx.statistics() == Statistics::Fermi;
  const double series_N = sum_power_series(ctx, "mean-N", [&](int n) {
    const double sign = (fermi && n % 2 == 0) ? -1.0 : 1.0;
    return sign * z1_value(ctx.spectrum(), std::pow(ctx.q0(), n)) *
           std::pow(ctx.fugacity(), n);
  });
  const double series_U = sum_power_series(ctx, "mean-U", [&](int n) {
    const double sign = (fermi && n % 2 == 0) ? -1.0 : 1.0;
    return sign * z1_prime_value(ctx.spectrum(), std::pow(ctx.q0(), n)) *
           std::pow(ctx.fugacity() * ctx.q0(), n);
  });
  if (std::abs(series_N - direct_N) > 1e-10 * std::max(1.0, std::abs(direct_N)))
    throw ConsistencyError(
        "grand mean N: series and occupancy sum disagree beyond 1e-10");
  if (std::abs(series_U - direct_U) > 1e-10 * std::max(1.0, std::abs(direct_U)))
    throw ConsistencyError(
        "grand mean U: series and occupancy sum disagree beyond 1e-10");
  return {series_N, series_U};
}

double entropy_grand(const GrandContext& ctx) {
  const auto [N, U] = mean_N_and_U(ctx);
  // S = ln Xi + U/T - mu N / T, with mu/T = ln z
  return ln_grand_partition(ctx) + U / ctx.temperature() -
         N * std::log(ctx.fugacity());
}

ThermoReport grand_report(const GrandContext& ctx) {
  ThermoReport r;
  const auto [N, U] = mean_N_and_U(ctx);
  r.particles = N;
  r.integer_particles = false;
  r.q = ctx.q0();
  r.T = ctx.temperature();
  r.Z_value = std::exp(ln_grand_partition(ctx));
  r.U = U;
  // Energy fluctuation at fixed fugacity: q dU/dq = sum eps^2 g x/(1 -+ x)^2
  double var = 0.0;
  for (const auto& lv : ctx.spectrum().levels()) {
    const double x =
        ctx.fugacity() * std::pow(ctx.q0(), static_cast<double>(lv.energy));
    const double denom = ctx.statistics() == Statistics::Bose ? 1.0 - x
                                                              : 1.0 + x;
    var += static_cast<double>(lv.energy) * static_cast<double>(lv.energy) *
           static_cast<double>(lv.degeneracy) * x / (denom * denom);
  }
  r.VarU = var;
  r.heat_capacity = var / (r.T * r.T);
  r.entropy = entropy_grand(ctx);
  for (const auto& lv : ctx.spectrum().levels())
    r.occupancy.push_back({lv.energy, occupancy_grand(ctx, lv.energy)});
  r.fugacity = ctx.fugacity();
  r.chemical_potential = ctx.chemical_potential();
  return r;
}

}  // namespace bfstat
