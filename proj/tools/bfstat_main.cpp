// Command-line front end: spectrum files in, exact tables and thermodynamic
// reports out. Exact quantities print as integers or fractions, never floats.
// Temperatures are in grid-energy units with k_B = 1, so q = exp(-1/T).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfstat/bfstat.hpp"

namespace {

using nlohmann::json;
using namespace bfstat;

// usage errors exit 2, domain errors exit 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a computed check that came out false; distinct so it still exits 1 after
// the failing lines were printed
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string ratio_text(const ExactRatio& r) { return ratio_to_string(r); }

json series_json(const QSeries& s) {
  json arr = json::array();
  for (const auto& [e, c] : s.coefficients())
    arr.push_back(json::array({e, ratio_text(c)}));
  json j;
  j["series"] = std::move(arr);
  if (s.cutoff())
    j["cutoff"] = *s.cutoff();
  else
    j["cutoff"] = nullptr;
  return j;
}

json report_json(const ThermoReport& r) {
  return json::parse(thermo_report_to_json(r));
}

void emit_wrapped(const std::string& command, json inputs, json result) {
  json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(result);
  std::cout << j.dump(2) << "\n";
}

void print_report_text(const ThermoReport& r) {
  if (r.integer_particles)
    std::cout << "N: " << static_cast<std::int64_t>(std::llround(r.particles))
              << "\n";
  else
    std::cout << "N: " << fmt(r.particles) << "\n";
  std::cout << "T: " << fmt(r.T) << "\n";
  std::cout << "q: " << fmt(r.q) << "\n";
  std::cout << "Z: " << fmt(r.Z_value) << "\n";
  std::cout << "U: " << fmt(r.U) << "\n";
  std::cout << "VarU: " << fmt(r.VarU) << "\n";
  std::cout << "c: " << fmt(r.heat_capacity) << "\n";
  std::cout << "S: " << fmt(r.entropy) << "\n";
  if (r.fugacity) std::cout << "z: " << fmt(*r.fugacity) << "\n";
  if (r.chemical_potential)
    std::cout << "mu: " << fmt(*r.chemical_potential) << "\n";
  for (const auto& o : r.occupancy)
    std::cout << "occ[" << o.energy << "]: " << fmt(o.n) << "\n";
}

void print_reports_csv(const Spectrum& s,
                       const std::vector<ThermoReport>& rows) {
  std::cout << "T,q,U,VarU,c,S";
  for (const auto& lv : s.levels()) std::cout << ",occ_" << lv.energy;
  std::cout << "\n";
  for (const auto& r : rows) {
    std::cout << fmt(r.T) << ',' << fmt(r.q) << ',' << fmt(r.U) << ','
              << fmt(r.VarU) << ',' << fmt(r.heat_capacity) << ','
              << fmt(r.entropy);
    for (const auto& o : r.occupancy) std::cout << ',' << fmt(o.n);
    std::cout << "\n";
  }
}

void print_identities_text(const std::vector<IdentityReport>& rs) {
  for (const auto& r : rs) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.parameters.empty()) std::cout << " [" << r.parameters << "]";
    if (!r.pass) std::cout << ": " << r.left << " != " << r.right;
    std::cout << "\n";
  }
}

void require_all_pass(const std::vector<IdentityReport>& rs) {
  std::size_t failed = 0;
  for (const auto& r : rs)
    if (!r.pass) ++failed;
  if (failed > 0)
    throw CheckFailed(std::to_string(failed) + " of " +
                      std::to_string(rs.size()) + " identities failed");
}

double q_from_T(double T) {
  if (!(T > 0.0)) throw UsageError("temperature must be positive");
  return std::exp(-1.0 / T);
}

std::vector<double> temperature_grid(double from, double to, int steps) {
  if (!(from > 0.0)) throw UsageError("--T-from must be positive");
  if (steps < 1) throw UsageError("--T-steps must be >= 1");
  if (steps == 1) return {from};
  if (!(to > from)) throw UsageError("--T-to must exceed --T-from");
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    ts.push_back(from + (to - from) * i / (steps - 1));
  return ts;
}

// shared flag bundle for the verbs that take a spectrum + statistics
struct SpectrumArgs {
  std::string path;
  std::string stats = "bose";

  Spectrum load() const { return load_spectrum_file(path); }
  Statistics statistics() const { return statistics_from_string(stats); }
};

void add_spectrum_flags(CLI::App* sub, SpectrumArgs& a) {
  sub->add_option("--spectrum", a.path, "spectrum JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--stats", a.stats, "particle statistics")
      ->required()
      ->check(CLI::IsMember({"bose", "fermi"}));
}

void add_format_flag(CLI::App* sub, std::string& fmt_var,
                     std::vector<std::string> allowed) {
  sub->add_option("--format", fmt_var, "output format")
      ->check(CLI::IsMember(allowed));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact Bose/Fermi statistics over discrete spectra.\n"
      "Temperatures are in grid-energy units with k_B = 1: q = exp(-1/T)."};
  app.require_subcommand(1);

  // ---- weight ----
  struct {
    SpectrumArgs sp;
    std::int64_t N = 0, U = 0;
    std::uint64_t budget = kDefaultOracleBudget;
    bool energy_recursion = false, oracle = false;
    std::string format = "text";
  } wargs;
  auto* weight = app.add_subcommand(
      "weight", "microcanonical statistical weight W(N, U)");
  add_spectrum_flags(weight, wargs.sp);
  weight->add_option("-N,--particles", wargs.N, "particle count")->required();
  weight->add_option("-U,--energy", wargs.U, "total energy in grid units")
      ->required();
  weight->add_flag("--energy-recursion", wargs.energy_recursion,
                   "use the energy-removal recursion instead of the "
                   "particle-removal one");
  weight->add_flag("--oracle", wargs.oracle,
                   "cross-check against brute-force enumeration");
  weight->add_option("--budget", wargs.budget, "enumeration node budget");
  add_format_flag(weight, wargs.format, {"text", "json"});
  weight->callback([&] {
    const Spectrum s = wargs.sp.load();
    const Statistics st = wargs.sp.statistics();
    WeightTable table(s, st);
    const BigCount w = wargs.energy_recursion
                           ? table.weight_energy_recursion(wargs.N, wargs.U)
                           : table.weight(wargs.N, wargs.U);
    if (wargs.oracle) {
      const BigCount e = enumerate_weight(s, st, wargs.N, wargs.U,
                                          wargs.budget);
      if (e != w)
        throw ConsistencyError("enumeration disagrees: recursion " +
                               w.get_str() + ", enumeration " + e.get_str());
    }
    if (wargs.format == "text") {
      std::cout << w.get_str() << "\n";
    } else {
      emit_wrapped("weight",
                   {{"spectrum", wargs.sp.path},
                    {"stats", wargs.sp.stats},
                    {"N", wargs.N},
                    {"U", wargs.U}},
                   w.get_str());
    }
  });

  // ---- occupancy ----
  struct {
    SpectrumArgs sp;
    std::int64_t N = 0, U = 0, level = 0;
    std::uint64_t budget = kDefaultOracleBudget;
    bool step = false, oracle = false;
    std::string format = "text";
  } oargs;
  auto* occupancy = app.add_subcommand(
      "occupancy",
      "microcanonical occupancy of one level, as the exact unreduced "
      "fraction (microstate particle total) / W");
  add_spectrum_flags(occupancy, oargs.sp);
  occupancy->add_option("-N,--particles", oargs.N, "particle count")
      ->required();
  occupancy->add_option("-U,--energy", oargs.U, "total energy in grid units")
      ->required();
  occupancy->add_option("--level", oargs.level, "level energy in grid units")
      ->required();
  occupancy->add_flag("--step", oargs.step,
                      "also climb the one-particle-at-a-time route and "
                      "require agreement");
  occupancy->add_flag("--oracle", oargs.oracle,
                      "cross-check against brute-force enumeration");
  occupancy->add_option("--budget", oargs.budget, "enumeration node budget");
  add_format_flag(occupancy, oargs.format, {"text", "json"});
  occupancy->callback([&] {
    const Spectrum s = oargs.sp.load();
    const Statistics st = oargs.sp.statistics();
    WeightTable table(s, st);
    const BigCount m = table.occupancy_numerator(oargs.N, oargs.U,
                                                 oargs.level);
    const BigCount w = table.weight(oargs.N, oargs.U);
    if (oargs.step) {
      const ExactRatio direct = table.occupancy(oargs.N, oargs.U, oargs.level);
      const ExactRatio stepped =
          table.occupancy_step(oargs.N, oargs.U, oargs.level);
      if (direct != stepped)
        throw ConsistencyError("one-step route disagrees: " +
                               ratio_text(stepped) + " vs " +
                               ratio_text(direct));
    }
    if (oargs.oracle) {
      const OccupancySums sums =
          enumerate_occupancies(s, st, oargs.N, oargs.U, oargs.budget);
      std::size_t idx = s.levels().size();
      for (std::size_t i = 0; i < s.levels().size(); ++i)
        if (s.levels()[i].energy == oargs.level) idx = i;
      if (idx == s.levels().size())
        throw std::invalid_argument("level is not part of the spectrum");
      if (sums.weight != w || sums.numerators[idx] != m)
        throw ConsistencyError(
            "enumeration disagrees: recursion " + m.get_str() + "/" +
            w.get_str() + ", enumeration " + sums.numerators[idx].get_str() +
            "/" + sums.weight.get_str());
    }
    if (oargs.format == "text") {
      if (w == 0)
        std::cout << "0\n";
      else
        std::cout << m.get_str() << "/" << w.get_str() << "\n";
    } else {
      ExactRatio value(0);
      if (w != 0) {
        value = ExactRatio(m, w);
        value.canonicalize();
      }
      emit_wrapped("occupancy",
                   {{"spectrum", oargs.sp.path},
                    {"stats", oargs.sp.stats},
                    {"N", oargs.N},
                    {"U", oargs.U},
                    {"level", oargs.level}},
                   {{"numerator", m.get_str()},
                    {"denominator", w.get_str()},
                    {"value", value.get_d()}});
    }
  });

  // ---- canonical ----
  struct {
    SpectrumArgs sp;
    std::int64_t N = 0;
    double T = 0, T_from = 0, T_to = 0;
    int T_steps = 0;
    std::int64_t cutoff = 0;
    bool print_Z = false, print_Z_prime = false;
    std::string format = "text";
  } cargs;
  auto* canonical = app.add_subcommand(
      "canonical", "fixed-N canonical ensemble: Z(N, q) and thermodynamics");
  add_spectrum_flags(canonical, cargs.sp);
  canonical->add_option("-N,--particles", cargs.N, "particle count")
      ->required();
  auto* copt_T = canonical->add_option("--T", cargs.T, "temperature");
  auto* copt_from = canonical->add_option("--T-from", cargs.T_from,
                                          "sweep start temperature");
  canonical->add_option("--T-to", cargs.T_to, "sweep end temperature");
  auto* copt_steps =
      canonical->add_option("--T-steps", cargs.T_steps, "sweep row count");
  canonical->add_option("--cutoff", cargs.cutoff,
                        "truncate all series below this q power");
  auto* copt_Z = canonical->add_flag("--print-Z", cargs.print_Z,
                                     "print Z(N, q) exactly");
  auto* copt_Zp = canonical->add_flag("--print-Z-prime", cargs.print_Z_prime,
                                      "print dZ/dq exactly");
  add_format_flag(canonical, cargs.format, {"text", "json", "csv"});
  canonical->callback([&] {
    const Spectrum s = cargs.sp.load();
    const Statistics st = cargs.sp.statistics();
    std::optional<std::int64_t> cutoff;
    if (canonical->count("--cutoff") > 0) cutoff = cargs.cutoff;
    CanonicalContext ctx(s, st, cutoff);

    const bool has_T = copt_T->count() > 0;
    const bool has_sweep = copt_from->count() > 0 || copt_steps->count() > 0;
    const int actions = int(cargs.print_Z) + int(cargs.print_Z_prime) +
                        int(has_T) + int(has_sweep);
    if (actions != 1)
      throw UsageError(
          "pick exactly one of --print-Z, --print-Z-prime, --T, or the "
          "--T-from/--T-to/--T-steps sweep");

    if (cargs.print_Z || cargs.print_Z_prime) {
      const QSeries z = cargs.print_Z
                            ? ctx.partition_function(cargs.N)
                            : ctx.partition_function_derivative(cargs.N);
      if (cargs.format == "text")
        std::cout << z.to_text() << "\n";
      else
        emit_wrapped("canonical",
                     {{"spectrum", cargs.sp.path},
                      {"stats", cargs.sp.stats},
                      {"N", cargs.N},
                      {"quantity", cargs.print_Z ? "Z" : "Z-prime"}},
                     series_json(z));
      return;
    }

    std::vector<double> ts;
    if (has_T)
      ts.push_back(cargs.T);
    else
      ts = temperature_grid(cargs.T_from, cargs.T_to, cargs.T_steps);
    std::vector<ThermoReport> rows;
    rows.reserve(ts.size());
    for (double t : ts) rows.push_back(ctx.thermodynamics(cargs.N, q_from_T(t)));

    if (cargs.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(report_json(r));
      emit_wrapped("canonical",
                   {{"spectrum", cargs.sp.path},
                    {"stats", cargs.sp.stats},
                    {"N", cargs.N}},
                   has_T ? report_json(rows.front()) : std::move(arr));
    } else if (cargs.format == "csv" || !has_T) {
      print_reports_csv(s, rows);
    } else {
      print_report_text(rows.front());
    }
  });

  // ---- grand ----
  struct {
    SpectrumArgs sp;
    double z = 1.0;
    double T = 0, T_from = 0, T_to = 0;
    int T_steps = 0;
    double tolerance = 1e-12;
    int series_cap = 10000;
    std::string format = "text";
  } gargs;
  auto* grand = app.add_subcommand(
      "grand", "grand-canonical ensemble at fixed fugacity");
  add_spectrum_flags(grand, gargs.sp);
  grand->add_option("-z,--fugacity", gargs.z, "fugacity z = exp(mu/T)")
      ->required();
  auto* gopt_T = grand->add_option("--T", gargs.T, "temperature");
  auto* gopt_from =
      grand->add_option("--T-from", gargs.T_from, "sweep start temperature");
  grand->add_option("--T-to", gargs.T_to, "sweep end temperature");
  auto* gopt_steps =
      grand->add_option("--T-steps", gargs.T_steps, "sweep row count");
  grand->add_option("--tolerance", gargs.tolerance,
                    "relative tail tolerance for the power sums");
  grand->add_option("--series-cap", gargs.series_cap,
                    "maximum number of power-sum terms");
  add_format_flag(grand, gargs.format, {"text", "json", "csv"});
  grand->callback([&] {
    const Spectrum s = gargs.sp.load();
    const Statistics st = gargs.sp.statistics();
    const bool has_T = gopt_T->count() > 0;
    const bool has_sweep = gopt_from->count() > 0 || gopt_steps->count() > 0;
    if (int(has_T) + int(has_sweep) != 1)
      throw UsageError("pick --T or the --T-from/--T-to/--T-steps sweep");
    std::vector<double> ts;
    if (has_T)
      ts.push_back(gargs.T);
    else
      ts = temperature_grid(gargs.T_from, gargs.T_to, gargs.T_steps);
    std::vector<ThermoReport> rows;
    rows.reserve(ts.size());
    for (double t : ts) {
      GrandContext ctx(s, st, gargs.z, q_from_T(t), gargs.tolerance,
                       gargs.series_cap);
      rows.push_back(grand_report(ctx));
    }
    if (gargs.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(report_json(r));
      emit_wrapped("grand",
                   {{"spectrum", gargs.sp.path},
                    {"stats", gargs.sp.stats},
                    {"z", gargs.z}},
                   has_T ? report_json(rows.front()) : std::move(arr));
    } else if (gargs.format == "csv" || !has_T) {
      print_reports_csv(s, rows);
    } else {
      print_report_text(rows.front());
    }
  });

  // ---- chargeless ----
  struct {
    SpectrumArgs sp;
    std::int64_t U = 0, level = 0;
    std::uint64_t budget = kDefaultOracleBudget;
    double T = 0, T_from = 0, T_to = 0;
    int T_steps = 0;
    double tolerance = 1e-15;
    int term_cap = 10000;
    bool oracle = false;
    std::string format = "text";
  } phargs;
  auto* chargeless = app.add_subcommand(
      "chargeless",
      "photon/phonon statistics: no particle-number constraint");
  add_spectrum_flags(chargeless, phargs.sp);
  auto* popt_U = chargeless->add_option(
      "-U,--energy", phargs.U, "total energy: microcanonical W(U)");
  auto* popt_level = chargeless->add_option(
      "--level", phargs.level, "with -U: occupancy of this level");
  chargeless->add_flag("--oracle", phargs.oracle,
                       "cross-check W(U) against enumeration");
  chargeless->add_option("--budget", phargs.budget,
                         "enumeration node budget");
  auto* popt_T = chargeless->add_option("--T", phargs.T, "temperature");
  auto* popt_from = chargeless->add_option("--T-from", phargs.T_from,
                                           "sweep start temperature");
  chargeless->add_option("--T-to", phargs.T_to, "sweep end temperature");
  auto* popt_steps =
      chargeless->add_option("--T-steps", phargs.T_steps, "sweep row count");
  chargeless->add_option("--tolerance", phargs.tolerance,
                         "relative tail tolerance for the power sums");
  chargeless->add_option("--term-cap", phargs.term_cap,
                         "maximum number of power-sum terms");
  add_format_flag(chargeless, phargs.format, {"text", "json", "csv"});
  chargeless->callback([&] {
    const Spectrum s = phargs.sp.load();
    const Statistics st = phargs.sp.statistics();
    const bool has_U = popt_U->count() > 0;
    const bool has_T = popt_T->count() > 0;
    const bool has_sweep = popt_from->count() > 0 || popt_steps->count() > 0;
    if (int(has_U) + int(has_T) + int(has_sweep) != 1)
      throw UsageError(
          "pick exactly one of -U, --T, or the --T-from/--T-to/--T-steps "
          "sweep");

    if (has_U) {
      ChargelessWeightTable table(s, st);
      if (popt_level->count() > 0) {
        const ExactRatio occ = table.occupancy(phargs.U, phargs.level);
        if (phargs.format == "text")
          std::cout << ratio_text(occ) << "\n";
        else
          emit_wrapped("chargeless",
                       {{"spectrum", phargs.sp.path},
                        {"stats", phargs.sp.stats},
                        {"U", phargs.U},
                        {"level", phargs.level}},
                       {{"rational", ratio_text(occ)},
                        {"value", occ.get_d()}});
        return;
      }
      const BigCount w = table.weight(phargs.U);
      if (phargs.oracle) {
        const BigCount e =
            enumerate_chargeless_weight(s, st, phargs.U, phargs.budget);
        if (e != w)
          throw ConsistencyError("enumeration disagrees: recursion " +
                                 w.get_str() + ", enumeration " +
                                 e.get_str());
      }
      if (phargs.format == "text")
        std::cout << w.get_str() << "\n";
      else
        emit_wrapped("chargeless",
                     {{"spectrum", phargs.sp.path},
                      {"stats", phargs.sp.stats},
                      {"U", phargs.U}},
                     w.get_str());
      return;
    }

    std::vector<double> ts;
    if (has_T)
      ts.push_back(phargs.T);
    else
      ts = temperature_grid(phargs.T_from, phargs.T_to, phargs.T_steps);
    std::vector<ThermoReport> rows;
    rows.reserve(ts.size());
    for (double t : ts)
      rows.push_back(chargeless_thermo(s, st, q_from_T(t), phargs.tolerance,
                                       phargs.term_cap));
    if (phargs.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(report_json(r));
      emit_wrapped("chargeless",
                   {{"spectrum", phargs.sp.path},
                    {"stats", phargs.sp.stats}},
                   has_T ? report_json(rows.front()) : std::move(arr));
    } else if (phargs.format == "csv" || !has_T) {
      print_reports_csv(s, rows);
    } else {
      print_report_text(rows.front());
    }
  });

  // ---- even-spaced ----
  struct {
    std::int64_t B = 0, N = 0, U = 0, cutoff = 32;
    std::string stats = "bose";
    double T = 0;
    bool do_weight = false, do_partition = false, do_identities = false;
    bool do_ladder = false, do_ladder_formal = false, do_unbounded = false;
    std::string format = "text";
  } bargs;
  auto* band = app.add_subcommand(
      "even-spaced",
      "closed forms for the band {0, 1, ..., B}: restricted partitions, "
      "Gaussian polynomials, occupancy ladders");
  band->add_option("-B,--top", bargs.B, "top level of the band")->required();
  band->add_option("-N,--particles", bargs.N, "particle count");
  band->add_option("-U,--energy", bargs.U, "total energy in grid units");
  band->add_option("--stats", bargs.stats, "particle statistics")
      ->check(CLI::IsMember({"bose", "fermi"}));
  auto* bopt_T = band->add_option("--T", bargs.T, "temperature");
  band->add_option("--cutoff", bargs.cutoff,
                   "series cutoff for --unbounded");
  band->add_flag("--weight", bargs.do_weight,
                 "W(N, U) from the partition-count closed form");
  band->add_flag("--partition", bargs.do_partition,
                 "Z(N, q) as the exact Gaussian polynomial");
  band->add_flag("--identities", bargs.do_identities,
                 "check the band's exact weight/occupancy identities");
  band->add_flag("--ladder", bargs.do_ladder,
                 "numeric occupancy ladder at --T");
  band->add_flag("--ladder-formal", bargs.do_ladder_formal,
                 "occupancy ladder as exact rational functions");
  band->add_flag("--unbounded", bargs.do_unbounded,
                 "B -> infinity partition series to --cutoff");
  add_format_flag(band, bargs.format, {"text", "json"});
  band->callback([&] {
    const int actions = int(bargs.do_weight) + int(bargs.do_partition) +
                        int(bargs.do_identities) + int(bargs.do_ladder) +
                        int(bargs.do_ladder_formal) + int(bargs.do_unbounded);
    if (actions != 1)
      throw UsageError(
          "pick exactly one of --weight, --partition, --identities, "
          "--ladder, --ladder-formal, --unbounded");
    const Statistics st = statistics_from_string(bargs.stats);
    json inputs{{"B", bargs.B}, {"stats", bargs.stats}};

    if (bargs.do_weight) {
      if (band->count("-N") == 0 || band->count("-U") == 0)
        throw UsageError("--weight needs -N and -U");
      const BigCount w = st == Statistics::Bose
                             ? bose_band_weight(bargs.B, bargs.N, bargs.U)
                             : fermi_band_weight(bargs.B, bargs.N, bargs.U);
      if (bargs.format == "text") {
        std::cout << w.get_str() << "\n";
      } else {
        inputs["N"] = bargs.N;
        inputs["U"] = bargs.U;
        emit_wrapped("even-spaced", std::move(inputs), w.get_str());
      }
      return;
    }
    if (bargs.do_partition) {
      if (band->count("-N") == 0) throw UsageError("--partition needs -N");
      const QSeries z = gaussian_partition_function(bargs.B, bargs.N, st);
      if (bargs.format == "text") {
        std::cout << z.to_text() << "\n";
      } else {
        inputs["N"] = bargs.N;
        emit_wrapped("even-spaced", std::move(inputs), series_json(z));
      }
      return;
    }
    if (bargs.do_identities) {
      if (band->count("-N") == 0 || band->count("-U") == 0)
        throw UsageError("--identities needs -N and -U");
      const auto reports = micro_identity_suite(bargs.B, bargs.N, bargs.U);
      if (bargs.format == "text") {
        print_identities_text(reports);
      } else {
        inputs["N"] = bargs.N;
        inputs["U"] = bargs.U;
        emit_wrapped("even-spaced", std::move(inputs),
                     json::parse(identity_reports_to_json(reports)));
      }
      require_all_pass(reports);
      return;
    }
    if (bargs.do_ladder) {
      if (band->count("-N") == 0 || bopt_T->count() == 0)
        throw UsageError("--ladder needs -N and --T");
      const auto ns =
          occupancy_ladder(bargs.B, bargs.N, st, q_from_T(bargs.T));
      if (bargs.format == "text") {
        for (std::size_t k = 0; k < ns.size(); ++k)
          std::cout << "occ[" << k << "]: " << fmt(ns[k]) << "\n";
      } else {
        inputs["N"] = bargs.N;
        inputs["T"] = bargs.T;
        json arr = json::array();
        for (std::size_t k = 0; k < ns.size(); ++k)
          arr.push_back({{"energy", k}, {"n", ns[k]}});
        emit_wrapped("even-spaced", std::move(inputs), std::move(arr));
      }
      return;
    }
    if (bargs.do_ladder_formal) {
      if (band->count("-N") == 0)
        throw UsageError("--ladder-formal needs -N");
      const auto ratios = occupancy_ladder_formal(bargs.B, bargs.N, st);
      if (bargs.format == "text") {
        for (std::size_t k = 0; k < ratios.size(); ++k)
          std::cout << "occ[" << k << "]: (" << ratios[k].numerator.to_text()
                    << ") / (" << ratios[k].denominator.to_text() << ")\n";
      } else {
        inputs["N"] = bargs.N;
        json arr = json::array();
        for (std::size_t k = 0; k < ratios.size(); ++k)
          arr.push_back({{"energy", k},
                         {"numerator", series_json(ratios[k].numerator)},
                         {"denominator",
                          series_json(ratios[k].denominator)}});
        emit_wrapped("even-spaced", std::move(inputs), std::move(arr));
      }
      return;
    }
    // --unbounded
    if (band->count("-N") == 0) throw UsageError("--unbounded needs -N");
    const QSeries z = unbounded_partition_function(bargs.N, st, bargs.cutoff);
    if (bargs.format == "text") {
      std::cout << z.to_text() << "\n";
    } else {
      inputs["N"] = bargs.N;
      inputs["cutoff"] = bargs.cutoff;
      emit_wrapped("even-spaced", std::move(inputs), series_json(z));
    }
  });

  // ---- compound ----
  struct {
    std::string descriptor;
    std::int64_t N = 0, U = 0, level = 0;
    double z = 1.0, T = 0;
    bool do_partition = false, do_grand = false;
    std::string format = "text";
  } kargs;
  auto* compound = app.add_subcommand(
      "compound",
      "several distinguishable sub-systems under a chosen exchange regime");
  compound->add_option("--descriptor", kargs.descriptor,
                       "compound descriptor JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* kopt_N = compound->add_option("-N,--particles", kargs.N,
                                      "total particles (full exchange)");
  auto* kopt_U = compound->add_option("-U,--energy", kargs.U,
                                      "total energy in grid units");
  auto* kopt_level =
      compound->add_option("--level", kargs.level, "occupancy of this level");
  compound->add_flag("--partition", kargs.do_partition,
                     "print the compound Z(q) exactly");
  compound->add_flag("--grand", kargs.do_grand,
                     "ln of the grand partition function at -z and --T");
  auto* kopt_z = compound->add_option("-z,--fugacity", kargs.z, "fugacity");
  auto* kopt_T = compound->add_option("--T", kargs.T, "temperature");
  add_format_flag(compound, kargs.format, {"text", "json"});
  compound->callback([&] {
    const CompoundDescriptor d = load_compound_descriptor(kargs.descriptor);
    std::vector<CompoundSystem::SubSystem> subs;
    subs.reserve(d.systems.size());
    for (const auto& e : d.systems) subs.push_back({e.spectrum, e.stats});
    CompoundSystem sys(std::move(subs), d.mode);
    json inputs{{"descriptor", kargs.descriptor},
                {"mode", to_string(d.mode)}};

    const bool has_level = kopt_level->count() > 0;
    if (int(kargs.do_partition) + int(kargs.do_grand) + int(has_level) > 1)
      throw UsageError("--partition, --grand, and --level are exclusive");

    if (kargs.do_grand) {
      if (kopt_z->count() == 0 || kopt_T->count() == 0)
        throw UsageError("--grand needs -z and --T");
      const double v = sys.ln_grand_partition(kargs.z, q_from_T(kargs.T));
      if (kargs.format == "text") {
        std::cout << "lnXi: " << fmt(v) << "\n";
      } else {
        inputs["z"] = kargs.z;
        inputs["T"] = kargs.T;
        emit_wrapped("compound", std::move(inputs), {{"lnXi", v}});
      }
      return;
    }

    if (kargs.do_partition) {
      QSeries z;
      if (d.mode == ExchangeMode::Energy) {
        std::vector<std::int64_t> Ns;
        for (const auto& e : d.systems) Ns.push_back(*e.N);
        z = sys.partition_function_energy_exchange(Ns);
      } else if (d.mode == ExchangeMode::EnergyAndParticles) {
        if (kopt_N->count() == 0)
          throw UsageError("--partition with full exchange needs -N");
        z = sys.partition_function_full_exchange(kargs.N);
      } else {
        throw UsageError(
            "--partition needs an exchange mode that shares energy");
      }
      if (kargs.format == "text")
        std::cout << z.to_text() << "\n";
      else
        emit_wrapped("compound", std::move(inputs), series_json(z));
      return;
    }

    // weight or occupancy, per mode
    if (d.mode == ExchangeMode::None) {
      std::vector<std::pair<std::int64_t, std::int64_t>> alloc;
      for (const auto& e : d.systems) alloc.push_back({*e.N, *e.U});
      if (has_level) {
        const ExactRatio occ = sys.occupancy_fixed(alloc, kargs.level);
        if (kargs.format == "text")
          std::cout << ratio_text(occ) << "\n";
        else
          emit_wrapped("compound", std::move(inputs),
                       {{"rational", ratio_text(occ)},
                        {"value", occ.get_d()}});
      } else {
        const BigCount w = sys.weight_fixed(alloc);
        if (kargs.format == "text")
          std::cout << w.get_str() << "\n";
        else
          emit_wrapped("compound", std::move(inputs), w.get_str());
      }
      return;
    }
    if (d.mode == ExchangeMode::Energy) {
      if (kopt_U->count() == 0)
        throw UsageError("energy exchange needs the total -U");
      std::vector<std::int64_t> Ns;
      for (const auto& e : d.systems) Ns.push_back(*e.N);
      if (has_level) {
        const ExactRatio occ =
            sys.occupancy_energy_exchange(Ns, kargs.U, kargs.level);
        if (kargs.format == "text")
          std::cout << ratio_text(occ) << "\n";
        else
          emit_wrapped("compound", std::move(inputs),
                       {{"rational", ratio_text(occ)},
                        {"value", occ.get_d()}});
      } else {
        const BigCount w = sys.weight_energy_exchange(Ns, kargs.U);
        if (kargs.format == "text")
          std::cout << w.get_str() << "\n";
        else
          emit_wrapped("compound", std::move(inputs), w.get_str());
      }
      return;
    }
    // full exchange
    if (kopt_N->count() == 0 || kopt_U->count() == 0)
      throw UsageError("full exchange needs the totals -N and -U");
    if (has_level) {
      const ExactRatio occ =
          sys.occupancy_full_exchange(kargs.N, kargs.U, kargs.level);
      if (kargs.format == "text")
        std::cout << ratio_text(occ) << "\n";
      else
        emit_wrapped("compound", std::move(inputs),
                     {{"rational", ratio_text(occ)}, {"value", occ.get_d()}});
    } else {
      const BigCount w = sys.weight_full_exchange(kargs.N, kargs.U);
      if (kargs.format == "text")
        std::cout << w.get_str() << "\n";
      else
        emit_wrapped("compound", std::move(inputs), w.get_str());
    }
  });

  // ---- check-identities ----
  struct {
    std::string path;
    std::int64_t N_max = 4;
    std::int64_t N = 0, U = 0;
    double z = 0, T = 0, tolerance = 1e-10;
    std::string format = "text";
  } iargs;
  auto* identities = app.add_subcommand(
      "check-identities",
      "boson <-> fermion correspondence checks on one spectrum");
  identities->add_option("--spectrum", iargs.path, "spectrum JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  identities->add_option("--N-max", iargs.N_max,
                         "check the polynomial identities for N = 1..N-max");
  auto* iopt_N = identities->add_option(
      "-N,--particles", iargs.N, "also rebuild the fermionic W(N, U)");
  auto* iopt_U =
      identities->add_option("-U,--energy", iargs.U, "energy for -N");
  auto* iopt_z = identities->add_option("-z,--fugacity", iargs.z,
                                        "fugacity for the grand checks");
  auto* iopt_T =
      identities->add_option("--T", iargs.T, "temperature for the grand checks");
  identities->add_option("--tolerance", iargs.tolerance,
                         "numeric tolerance for the grand checks");
  add_format_flag(identities, iargs.format, {"text", "json"});
  identities->callback([&] {
    const Spectrum s = load_spectrum_file(iargs.path);
    std::vector<IdentityReport> reports =
        canonical_duality_suite(s, iargs.N_max);

    if (iopt_N->count() > 0 || iopt_U->count() > 0) {
      if (iopt_N->count() == 0 || iopt_U->count() == 0)
        throw UsageError("the microcanonical rebuild needs both -N and -U");
      WeightTable fermi(s, Statistics::Fermi);
      const BigCount truth = fermi.weight(iargs.N, iargs.U);
      DualWeightTable dual(s);
      const BigCount via_pairs = dual.fermi_weight_from_bose(iargs.N, iargs.U);
      const BigCount via_subsets =
          fermi_weight_subset_sum(dual.bose_table(), iargs.N, iargs.U);
      const std::string params =
          "N=" + std::to_string(iargs.N) + " U=" + std::to_string(iargs.U);
      reports.push_back({"micro-pair-subtraction", params,
                         via_pairs.get_str(), truth.get_str(),
                         via_pairs == truth});
      reports.push_back({"micro-subset-sum", params, via_subsets.get_str(),
                         truth.get_str(), via_subsets == truth});
    }

    if (iopt_z->count() > 0 || iopt_T->count() > 0) {
      if (iopt_z->count() == 0 || iopt_T->count() == 0)
        throw UsageError("the grand checks need both -z and --T");
      const auto grand_reports =
          grand_duality_check(s, iargs.z, q_from_T(iargs.T), iargs.tolerance);
      reports.insert(reports.end(), grand_reports.begin(),
                     grand_reports.end());
    }

    if (iargs.format == "text")
      print_identities_text(reports);
    else
      emit_wrapped("check-identities", {{"spectrum", iargs.path}},
                   json::parse(identity_reports_to_json(reports)));
    require_all_pass(reports);
  });

  // ---- oracle ----
  struct {
    SpectrumArgs sp;
    std::int64_t N = 0, U = 0, level = 0;
    std::uint64_t budget = kDefaultOracleBudget;
    bool chargeless = false;
    std::string format = "text";
  } rargs;
  auto* oracle = app.add_subcommand(
      "oracle", "brute-force microstate enumeration, no recursions involved");
  add_spectrum_flags(oracle, rargs.sp);
  auto* ropt_N =
      oracle->add_option("-N,--particles", rargs.N, "particle count");
  oracle->add_option("-U,--energy", rargs.U, "total energy in grid units")
      ->required();
  auto* ropt_level =
      oracle->add_option("--level", rargs.level, "occupancy of this level");
  oracle->add_flag("--chargeless", rargs.chargeless,
                   "sum W(n, U) over all particle counts n");
  oracle->add_option("--budget", rargs.budget, "enumeration node budget");
  add_format_flag(oracle, rargs.format, {"text", "json"});
  oracle->callback([&] {
    const Spectrum s = rargs.sp.load();
    const Statistics st = rargs.sp.statistics();
    json inputs{{"spectrum", rargs.sp.path},
                {"stats", rargs.sp.stats},
                {"U", rargs.U}};
    if (rargs.chargeless) {
      if (ropt_N->count() > 0 || ropt_level->count() > 0)
        throw UsageError("--chargeless takes only -U");
      const BigCount w =
          enumerate_chargeless_weight(s, st, rargs.U, rargs.budget);
      if (rargs.format == "text")
        std::cout << w.get_str() << "\n";
      else
        emit_wrapped("oracle", std::move(inputs), w.get_str());
      return;
    }
    if (ropt_N->count() == 0)
      throw UsageError("-N is required unless --chargeless is given");
    inputs["N"] = rargs.N;
    if (ropt_level->count() > 0) {
      const OccupancySums sums =
          enumerate_occupancies(s, st, rargs.N, rargs.U, rargs.budget);
      std::size_t idx = s.levels().size();
      for (std::size_t i = 0; i < s.levels().size(); ++i)
        if (s.levels()[i].energy == rargs.level) idx = i;
      if (idx == s.levels().size())
        throw std::invalid_argument("level is not part of the spectrum");
      inputs["level"] = rargs.level;
      if (rargs.format == "text") {
        if (sums.weight == 0)
          std::cout << "0\n";
        else
          std::cout << sums.numerators[idx].get_str() << "/"
                    << sums.weight.get_str() << "\n";
      } else {
        ExactRatio value(0);
        if (sums.weight != 0) {
          value = ExactRatio(sums.numerators[idx], sums.weight);
          value.canonicalize();
        }
        emit_wrapped("oracle", std::move(inputs),
                     {{"numerator", sums.numerators[idx].get_str()},
                      {"denominator", sums.weight.get_str()},
                      {"value", value.get_d()}});
      }
      return;
    }
    const BigCount w = enumerate_weight(s, st, rargs.N, rargs.U, rargs.budget);
    if (rargs.format == "text")
      std::cout << w.get_str() << "\n";
    else
      emit_wrapped("oracle", std::move(inputs), w.get_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
