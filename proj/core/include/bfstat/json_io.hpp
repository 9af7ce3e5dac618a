#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfstat/canonical.hpp"
#include "bfstat/compound.hpp"
#include "bfstat/identity_report.hpp"
#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"

namespace bfstat {

// Spectrum files: {"unit": "<rational>", "label": "<text>",
// "levels": [{"energy": <int>, "g": <int>}, ...]} with levels strictly
// ascending. Parsers reject unsorted or duplicated energies.
std::string spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);
Spectrum load_spectrum_file(const std::string& path);
void save_spectrum_file(const Spectrum& s, const std::string& path);

// {"N":..., "q":..., "T":..., "U":..., "VarU":..., "c":..., "S":...,
//  "occupancy": [{"energy":..., "n":...}, ...]} plus "z" and "mu" when the
// report came from the grand ensemble.
std::string thermo_report_to_json(const ThermoReport& r);

// Compound descriptor files: {"mode": "none" | "energy" |
// "energy-and-particles", "systems": [{"spectrum": "<path>",
// "stats": "bose" | "fermi", "N":..., "U":...}, ...]}. Per-system N is
// required unless particles are exchanged; per-system U only when nothing
// is. Spectrum paths resolve relative to the descriptor file.
struct CompoundDescriptor {
  ExchangeMode mode = ExchangeMode::None;
  struct Entry {
    Spectrum spectrum;
    Statistics stats = Statistics::Bose;
    std::optional<std::int64_t> N;
    std::optional<std::int64_t> U;
  };
  std::vector<Entry> systems;
};
CompoundDescriptor load_compound_descriptor(const std::string& path);

std::string identity_reports_to_json(const std::vector<IdentityReport>& rs);

// [[exponent, "<rational coefficient>"], ...] ascending in exponent.
std::string qseries_to_json(const QSeries& s);

}  // namespace bfstat
