#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adr/instance.hpp"
#include "adr/mission.hpp"
#include "adr/orbits.hpp"
#include "adr/qubo.hpp"
#include "adr/solvers.hpp"

namespace adr::io {

using nlohmann::json;

/// Provenance block embedded in every file the command-line tool writes.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  json parameters = json::object();
  std::string tool_version;
  std::string timestamp;  // UTC ISO-8601; honours SOURCE_DATE_EPOCH

  static RunManifest make(std::string command, std::vector<std::string> inputs, json parameters);
};

json to_json(const RunManifest& m);

// Instance documents. Tables may carry the dummy row/column
// ("dummy_included": true) or cover the real debris only.
json to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const json& doc);
ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const ProblemInstance& inst, const RunManifest* manifest = nullptr);

json to_json(const qubo::LagrangeWeights& w);
json to_json(const qubo::PenaltyBreakdown& p);
json to_json(const solvers::SolverConfig& c);
json to_json(const solvers::SampleSet& set);
solvers::SampleSet sample_set_from_json(const json& doc);

json to_json(const mission::ValidationReport& r);
json to_json(const mission::MissionPlan& plan);
/// Human-readable plan: targets, cost breakdown, transfer times, duration.
std::string plan_text(const mission::MissionPlan& plan);

/// Reads 2- or 3-line TLE records. With `skip_bad`, malformed records are
/// dropped and reported in `warnings`; otherwise the first one throws a
/// ParseError carrying its line number.
std::vector<orbits::DebrisObject> read_tle_catalog(std::istream& in, bool skip_bad,
                                                   std::vector<std::string>* warnings = nullptr,
                                                   const orbits::PhysicalConstants& k = orbits::kEarth);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace adr::io
