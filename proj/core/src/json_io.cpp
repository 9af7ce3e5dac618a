#include "bfstat/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace bfstat {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json spectrum_json(const Spectrum& s) {
  json j;
  j["unit"] = ratio_to_string(s.unit());
  j["label"] = s.label();
  j["levels"] = json::array();
  for (const auto& lv : s.levels())
    j["levels"].push_back({{"energy", lv.energy}, {"g", lv.degeneracy}});
  return j;
}

Spectrum spectrum_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("spectrum must be an object");
  ExactRatio unit(1);
  if (j.contains("unit")) {
    if (j["unit"].is_string())
      unit = parse_ratio(j["unit"].get<std::string>());
    else if (j["unit"].is_number_integer())
      unit = ExactRatio(j["unit"].get<std::int64_t>());
    else
      throw std::invalid_argument("unit must be a rational string or integer");
  }
  std::string label = j.value("label", std::string());
  if (!j.contains("levels") || !j["levels"].is_array() || j["levels"].empty())
    throw std::invalid_argument("spectrum needs a non-empty levels array");
  std::vector<EnergyLevel> levels;
  for (const auto& e : j["levels"]) {
    if (!e.is_object() || !e.contains("energy") || !e.contains("g"))
      throw std::invalid_argument("each level needs energy and g");
    levels.push_back(
        {e["energy"].get<std::int64_t>(), e["g"].get<std::int64_t>()});
  }
  // from_grid_levels enforces ordering, positivity, no duplicates
  return Spectrum::from_grid_levels(std::move(levels), unit, std::move(label));
}

}  // namespace

std::string spectrum_to_json(const Spectrum& s) {
  return spectrum_json(s).dump(2) + "\n";
}

Spectrum spectrum_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad spectrum JSON: ") + e.what());
  }
  return spectrum_from(j);
}

Spectrum load_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spectrum file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return spectrum_from_json(buf.str());
}

void save_spectrum_file(const Spectrum& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write spectrum file " + path);
  out << spectrum_to_json(s);
}

std::string thermo_report_to_json(const ThermoReport& r) {
  json j;
  j["N"] = r.particles;
  j["q"] = r.q;
  j["T"] = r.T;
  j["U"] = r.U;
  j["VarU"] = r.VarU;
  j["c"] = r.heat_capacity;
  j["S"] = r.entropy;
  j["occupancy"] = json::array();
  for (const auto& o : r.occupancy)
    j["occupancy"].push_back({{"energy", o.energy}, {"n", o.n}});
  if (r.fugacity) j["z"] = *r.fugacity;
  if (r.chemical_potential) j["mu"] = *r.chemical_potential;
  return j.dump(2) + "\n";
}

CompoundDescriptor load_compound_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open descriptor file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad descriptor JSON: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("mode") || !j.contains("systems"))
    throw std::invalid_argument("descriptor needs mode and systems");

  CompoundDescriptor d;
  d.mode = exchange_mode_from_string(j["mode"].get<std::string>());
  if (!j["systems"].is_array() || j["systems"].size() < 2)
    throw std::invalid_argument("descriptor needs >= 2 systems");
  const fs::path base = fs::path(path).parent_path();
  for (const auto& e : j["systems"]) {
    if (!e.contains("spectrum") || !e.contains("stats"))
      throw std::invalid_argument("each system needs spectrum and stats");
    fs::path sp = e["spectrum"].get<std::string>();
    if (sp.is_relative()) sp = base / sp;
    CompoundDescriptor::Entry entry{
        load_spectrum_file(sp.string()),
        statistics_from_string(e["stats"].get<std::string>()),
        {},
        {}};
    if (e.contains("N")) entry.N = e["N"].get<std::int64_t>();
    if (e.contains("U")) entry.U = e["U"].get<std::int64_t>();
    if (d.mode != ExchangeMode::EnergyAndParticles && !entry.N)
      throw std::invalid_argument(
          "per-system N is required unless particles are exchanged");
    if (d.mode == ExchangeMode::None && !entry.U)
      throw std::invalid_argument(
          "per-system U is required when nothing is exchanged");
    d.systems.push_back(std::move(entry));
  }
  return d;
}

std::string identity_reports_to_json(const std::vector<IdentityReport>& rs) {
  json j = json::array();
  for (const auto& r : rs)
    j.push_back({{"name", r.name},
                 {"parameters", r.parameters},
                 {"left", r.left},
                 {"right", r.right},
                 {"pass", r.pass}});
  return j.dump(2) + "\n";
}

std::string qseries_to_json(const QSeries& s) {
  json j = json::array();
  for (const auto& [e, c] : s.coefficients())
    j.push_back(json::array({e, ratio_to_string(c)}));
  return j.dump() + "\n";
}

}  // namespace bfstat
