#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "adr/errors.hpp"
#include "adr/io.hpp"
#include "adr/mission.hpp"
#include "adr/solvers.hpp"
#include "support.hpp"

using namespace adr;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "adr_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("instance documents") {
  const auto inst = test::benchmark(4);

  SUBCASE("real-only tables gain the dummy row and column") {
    CHECK(inst.nodes() == 5);
    CHECK(inst.T(0, 3) == 0.0);
    CHECK(inst.T(3, 0) == inst.t_max);
    CHECK(inst.C(0, 2) == 0.0);
    CHECK(inst.c[0] == 0.0);
  }
  SUBCASE("save and load round trip") {
    const auto path = scratch("nt04.json");
    const auto manifest = io::RunManifest::make("test", {"nt04"}, json::object());
    io::save_instance(path, inst, &manifest);
    const auto back = io::load_instance(path);
    CHECK(back == inst);
    const auto doc = json::parse(io::read_file(path));
    CHECK(doc.at("dummy_included").get<bool>());
    CHECK(doc.at("manifest").at("command") == "test");
  }
  SUBCASE("flat row-major tables") {
    json doc = io::to_json(inst);
    json flat = json::array();
    for (const auto& row : doc["T"])
      for (const auto& v : row) flat.push_back(v);
    doc["T"] = flat;
    CHECK(io::instance_from_json(doc) == inst);
  }
  SUBCASE("malformed documents") {
    json doc = io::to_json(inst);
    doc["c"].erase(0);
    CHECK_THROWS_WITH(io::instance_from_json(doc), doctest::Contains("'c' must have 5 entries"));
    json neg = io::to_json(inst);
    neg["T"][1][2] = -1.0;
    CHECK_THROWS(io::instance_from_json(neg));
    CHECK_THROWS_AS(io::load_instance(scratch("missing.json")), DataError);
    io::write_file(scratch("broken.json"), "{\"n_t\": ");
    CHECK_THROWS_AS(io::load_instance(scratch("broken.json")), ParseError);
  }
}

TEST_CASE("sample set round trip") {
  const auto model = qubo::build_qubo(test::benchmark(3));
  solvers::SolverConfig cfg;
  cfg.seed = 12;
  cfg.reads = 30;
  cfg.threads = 1;
  const auto set = solvers::tabu_search(model, cfg);
  const auto back = io::sample_set_from_json(io::to_json(set));
  CHECK(back.solver == set.solver);
  CHECK(back.config.seed == 12);
  REQUIRE(back.samples.size() == set.samples.size());
  for (std::size_t k = 0; k < set.samples.size(); ++k) {
    CHECK(back.samples[k].bits == set.samples[k].bits);
    CHECK(back.samples[k].energy == set.samples[k].energy);
    CHECK(back.samples[k].occurrences == set.samples[k].occurrences);
  }
}

TEST_CASE("manifest timestamp honours SOURCE_DATE_EPOCH") {
  ::setenv("SOURCE_DATE_EPOCH", "1696032000", 1);
  const auto m = io::RunManifest::make("ingest", {"a.tle"}, json{{"n_select", 5}});
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(m.timestamp == "2023-09-30T00:00:00Z");
  CHECK(m.tool_version == "0.1.0");
  CHECK(io::to_json(m).at("parameters").at("n_select") == 5);
}

TEST_CASE("TLE catalogs") {
  const auto text = io::read_file(test::kosmos_fixture());

  SUBCASE("bundled fixture") {
    std::istringstream in(text);
    const auto cat = io::read_tle_catalog(in, false);
    REQUIRE(cat.size() == 79);
    CHECK(cat[0].designator == "1982-092RP");
    std::set<std::string> designators;
    for (const auto& d : cat) designators.insert(d.designator);
    CHECK(designators.size() == 79);
    for (const char* piece : {"1982-092FT", "1982-092RG", "1982-092BYD", "1982-092JA"})
      CHECK(designators.count(piece) == 1);
  }
  SUBCASE("two-line records and comments") {
    std::istringstream full(text);
    std::string name, l1, l2;
    std::getline(full, name);
    std::getline(full, l1);
    std::getline(full, l2);
    std::istringstream in("# comment\n" + l1 + "\n" + l2 + "\n");
    const auto cat = io::read_tle_catalog(in, false);
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].name == "1982-092RP");
  }
  SUBCASE("a corrupted record fails with its line number or is skipped") {
    std::string bad = text;
    const auto pos = bad.find('\n', bad.find('\n', bad.find('\n') + 1) + 1);  // end of record 1
    const auto l1_start = bad.find('\n', pos + 1) + 1;                          // line 5
    bad[l1_start + 68] = bad[l1_start + 68] == '0' ? '1' : '0';
    std::istringstream strict(bad);
    try {
      io::read_tle_catalog(strict, false);
      FAIL("corrupted checksum accepted");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);  // record start
    }
    std::istringstream lenient(bad);
    std::vector<std::string> warnings;
    const auto cat = io::read_tle_catalog(lenient, true, &warnings);
    CHECK(cat.size() == 78);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("line 4") != std::string::npos);
  }
  SUBCASE("truncated record") {
    std::istringstream in(text.substr(0, text.find('\n') + 1));
    CHECK_THROWS_AS(io::read_tle_catalog(in, false), ParseError);
  }
}

TEST_CASE("plan documents") {
  const auto inst = test::benchmark(3);
  const auto plan = mission::decode(mission::encode(std::vector<int>{1, 2, 3}, inst), inst);
  const auto doc = io::to_json(plan);
  CHECK(doc.at("sequence") == json::array({1, 2, 3}));
  CHECK(doc.at("labels") == json::array({"D1", "D2", "D3"}));
  CHECK(doc.at("total").get<double>() == doctest::Approx(11.0));
  const auto report = io::to_json(mission::validate(BitVector(18, 0), inst));
  CHECK_FALSE(report.at("valid").get<bool>());
}
