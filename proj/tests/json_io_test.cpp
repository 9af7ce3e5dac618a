#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bfstat/canonical.hpp"
#include "bfstat/json_io.hpp"
#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"

using namespace bfstat;
using nlohmann::json;

namespace {
struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/bfstat_test_XXXXXX";
    path = mkdtemp(tmpl);
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(file(name));
    out << text;
  }
};
}  // namespace

TEST_CASE("spectrum round trip is lossless, unit included") {
  Spectrum s = Spectrum::from_levels(
      {{ExactRatio(1, 2), 1}, {ExactRatio(3, 4), 2}}, "grid demo");
  std::string text = spectrum_to_json(s);
  Spectrum back = spectrum_from_json(text);
  CHECK(back == s);
  CHECK(back.label() == "grid demo");
  CHECK(spectrum_to_json(back) == text);
}

TEST_CASE("spectrum parser rejects defective input") {
  CHECK_THROWS_AS(spectrum_from_json("not json at all"),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_from_json(R"({"levels": []})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      spectrum_from_json(
          R"({"levels": [{"energy": 1, "g": 1}, {"energy": 1, "g": 2}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      spectrum_from_json(R"({"unit": true, "levels": [{"energy": 0, "g": 1}]})"),
      std::invalid_argument);
  // unit may be a rational string or an integer
  CHECK_NOTHROW(spectrum_from_json(
      R"({"unit": "2/3", "levels": [{"energy": 0, "g": 1}]})"));
  CHECK_NOTHROW(spectrum_from_json(
      R"({"unit": 2, "levels": [{"energy": 0, "g": 1}]})"));
}

TEST_CASE("spectrum file round trip") {
  TempDir dir;
  Spectrum s = Spectrum::magnetic_example(10);
  save_spectrum_file(s, dir.file("mag.json"));
  Spectrum back = load_spectrum_file(dir.file("mag.json"));
  CHECK(back == s);
  CHECK_THROWS(load_spectrum_file(dir.file("missing.json")));
}

TEST_CASE("thermo report serialization carries every field") {
  ThermoReport r;
  r.particles = 3;
  r.q = 0.5;
  r.T = 1.4426950408889634;
  r.U = 2.25;
  r.VarU = 0.75;
  r.heat_capacity = 0.36;
  r.entropy = 1.5;
  r.occupancy = {{0, 2.0}, {1, 1.0}};
  json j = json::parse(thermo_report_to_json(r));
  CHECK(j["N"] == 3.0);
  CHECK(j["q"] == 0.5);
  CHECK(j["U"] == 2.25);
  CHECK(j["occupancy"].size() == 2);
  CHECK(j["occupancy"][1]["energy"] == 1);
  CHECK(!j.contains("z"));
  r.fugacity = 0.7;
  r.chemical_potential = -0.51;
  json g = json::parse(thermo_report_to_json(r));
  CHECK(g["z"] == 0.7);
  CHECK(g["mu"] == -0.51);
}

TEST_CASE("compound descriptors resolve spectra next to the file") {
  TempDir dir;
  save_spectrum_file(Spectrum::from_grid_levels({{0, 1}, {1, 1}}),
                     dir.file("a.json"));
  save_spectrum_file(Spectrum::from_grid_levels({{1, 2}}),
                     dir.file("b.json"));
  dir.write("comp.json", R"({
    "mode": "energy",
    "systems": [
      {"spectrum": "a.json", "stats": "bose", "N": 2},
      {"spectrum": "b.json", "stats": "fermi", "N": 1}
    ]
  })");
  CompoundDescriptor d = load_compound_descriptor(dir.file("comp.json"));
  CHECK(d.mode == ExchangeMode::Energy);
  REQUIRE(d.systems.size() == 2);
  CHECK(d.systems[0].stats == Statistics::Bose);
  REQUIRE(d.systems[0].N.has_value());
  CHECK(*d.systems[0].N == 2);
  CHECK(!d.systems[0].U.has_value());
  CHECK(d.systems[1].spectrum.degeneracy_at(1) == 2);

  SUBCASE("per-system N is mandatory without particle exchange") {
    dir.write("bad.json", R"({
      "mode": "energy",
      "systems": [
        {"spectrum": "a.json", "stats": "bose"},
        {"spectrum": "b.json", "stats": "fermi", "N": 1}
      ]
    })");
    CHECK_THROWS_AS(load_compound_descriptor(dir.file("bad.json")),
                    std::invalid_argument);
  }
  SUBCASE("fixed mode also needs per-system U") {
    dir.write("bad2.json", R"({
      "mode": "none",
      "systems": [
        {"spectrum": "a.json", "stats": "bose", "N": 1},
        {"spectrum": "b.json", "stats": "fermi", "N": 1, "U": 2}
      ]
    })");
    CHECK_THROWS_AS(load_compound_descriptor(dir.file("bad2.json")),
                    std::invalid_argument);
  }
  SUBCASE("full exchange needs no per-system totals") {
    dir.write("full.json", R"({
      "mode": "energy-and-particles",
      "systems": [
        {"spectrum": "a.json", "stats": "bose"},
        {"spectrum": "a.json", "stats": "bose"}
      ]
    })");
    CHECK_NOTHROW(load_compound_descriptor(dir.file("full.json")));
  }
}

TEST_CASE("identity reports serialize as a plain array") {
  std::vector<IdentityReport> rs = {
      {"demo", "N=1", "2", "2", true},
      {"broken", "N=2", "3", "4", false},
  };
  json j = json::parse(identity_reports_to_json(rs));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["name"] == "demo");
  CHECK(j[0]["pass"] == true);
  CHECK(j[1]["left"] == "3");
  CHECK(j[1]["pass"] == false);
}

TEST_CASE("series export lists exact coefficients") {
  QSeries z = QSeries::one() +
              QSeries::monomial(ExactRatio(3, 2), 2) +
              QSeries::monomial(ExactRatio(-1), 5);
  json j = json::parse(qseries_to_json(z));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0][0] == 0);
  CHECK(j[0][1] == "1");
  CHECK(j[1][0] == 2);
  CHECK(j[1][1] == "3/2");
  CHECK(j[2][1] == "-1");
}
