#include "adr/io.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "adr/errors.hpp"

#ifndef ADR_VERSION
#define ADR_VERSION "0.0.0"
#endif

namespace adr::io {

namespace {

std::string utc_timestamp() {
  std::time_t t = 0;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SquareMatrix read_matrix(const json& doc, const char* key, std::size_t n) {
  if (!doc.contains(key)) throw ParseError(fmt::format("instance document lacks '{}'", key));
  const json& m = doc.at(key);
  if (!m.is_array()) throw ParseError(fmt::format("'{}' must be an array", key));
  SquareMatrix out(n);
  if (m.size() == n * n && (n == 0 || !m.front().is_array())) {
    for (std::size_t k = 0; k < n * n; ++k) out(k / n, k % n) = m[k].get<double>();
    return out;
  }
  if (m.size() != n) throw ParseError(fmt::format("'{}' must have {} rows, got {}", key, n, m.size()));
  for (std::size_t r = 0; r < n; ++r) {
    if (!m[r].is_array() || m[r].size() != n)
      throw ParseError(fmt::format("row {} of '{}' must have {} entries", r, key, n));
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m[r][c].get<double>();
  }
  return out;
}

json matrix_json(const SquareMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RunManifest RunManifest::make(std::string command, std::vector<std::string> inputs, json parameters) {
  return {std::move(command), std::move(inputs), std::move(parameters), ADR_VERSION, utc_timestamp()};
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"inputs", m.inputs},
          {"parameters", m.parameters},
          {"tool_version", m.tool_version},
          {"timestamp", m.timestamp}};
}

json to_json(const ProblemInstance& inst) {
  return {{"format", "adr-instance"},
          {"version", 1},
          {"dummy_included", true},
          {"n_t", inst.n_t},
          {"n_s", inst.n_s},
          {"t_max", inst.t_max},
          {"t_s", inst.t_s},
          {"cost_unit", inst.cost_unit},
          {"labels", inst.labels},
          {"T", matrix_json(inst.T)},
          {"C", matrix_json(inst.C)},
          {"c", inst.c}};
}

ProblemInstance instance_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
    const int n_t = doc.at("n_t").get<int>();
    if (n_t < 1) throw ParseError("n_t must be at least 1");
    const auto n = static_cast<std::size_t>(n_t);
    const json& c = doc.at("c");
    bool dummy = c.size() == n + 1;
    if (doc.contains("dummy_included")) dummy = doc.at("dummy_included").get<bool>();
    const std::size_t dim = dummy ? n + 1 : n;

    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    else
      for (int i = 1; i <= n_t; ++i) labels.push_back(std::to_string(i));

    const SquareMatrix T = read_matrix(doc, "T", dim);
    const SquareMatrix C = read_matrix(doc, "C", dim);
    const auto cv = c.get<std::vector<double>>();
    if (cv.size() != dim) throw ParseError(fmt::format("'c' must have {} entries, got {}", dim, cv.size()));

    ProblemInstance inst;
    if (dummy) {
      inst.n_t = n_t;
      inst.n_s = doc.at("n_s").get<int>();
      inst.t_max = doc.at("t_max").get<double>();
      inst.t_s = doc.at("t_s").get<double>();
      inst.labels = std::move(labels);
      inst.T = T;
      inst.C = C;
      inst.c = cv;
      inst.check();
    } else {
      inst = instance_from_real_tables(doc.at("n_s").get<int>(), doc.at("t_max").get<double>(),
                                       doc.at("t_s").get<double>(), std::move(labels), T, C, cv);
    }
    inst.cost_unit = doc.value("cost_unit", std::string{});
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("malformed instance document: {}", e.what()));
  }
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return instance_from_json(doc);
}

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst, const RunManifest* manifest) {
  json doc = to_json(inst);
  if (manifest) doc["manifest"] = to_json(*manifest);
  write_file(path, doc.dump(2) + "\n");
}

json to_json(const qubo::LagrangeWeights& w) {
  return {{"l_h", w.l_h}, {"l1", w.l1}, {"l2", w.l2}, {"l3", w.l3}, {"l4", w.l4},
          {"l5", w.l5},   {"l6", w.l6}, {"l7", w.l7}, {"l8", w.l8}};
}

json to_json(const qubo::PenaltyBreakdown& p) {
  json j = {{"h", p.h}, {"weighted_total", p.weighted_total}};
  for (int k = 1; k <= 8; ++k) j[fmt::format("c{}", k)] = p.constraint(k);
  return j;
}

json to_json(const solvers::SolverConfig& c) {
  json j = {{"seed", c.seed}, {"reads", c.reads}, {"sweeps", c.sweeps}, {"tenure", c.tenure}, {"threads", c.threads}};
  j["beta_range"] = c.beta_range ? json::array({c.beta_range->first, c.beta_range->second}) : json(nullptr);
  j["stall_limit"] = c.stall_limit ? json(*c.stall_limit) : json(nullptr);
  j["max_iterations"] = c.max_iterations ? json(*c.max_iterations) : json(nullptr);
  return j;
}

json to_json(const solvers::SampleSet& set) {
  json samples = json::array();
  for (const auto& s : set.samples)
    samples.push_back({{"bits", to_bitstring(s.bits)}, {"energy", s.energy}, {"occurrences", s.occurrences}});
  return {{"format", "adr-samples"},
          {"solver", set.solver},
          {"wall_time", set.wall_time},
          {"config", to_json(set.config)},
          {"samples", std::move(samples)}};
}

solvers::SampleSet sample_set_from_json(const json& doc) {
  try {
    solvers::SampleSet set;
    set.solver = doc.at("solver").get<std::string>();
    set.wall_time = doc.value("wall_time", 0.0);
    if (doc.contains("config")) {
      const json& c = doc.at("config");
      set.config.seed = c.value("seed", std::uint64_t{0});
      set.config.reads = c.value("reads", std::size_t{1});
      set.config.sweeps = c.value("sweeps", std::size_t{1000});
      set.config.tenure = c.value("tenure", 20);
      set.config.threads = c.value("threads", 0U);
      if (c.contains("beta_range") && c["beta_range"].is_array())
        set.config.beta_range = std::pair{c["beta_range"][0].get<double>(), c["beta_range"][1].get<double>()};
      if (c.contains("stall_limit") && !c["stall_limit"].is_null())
        set.config.stall_limit = c["stall_limit"].get<std::size_t>();
      if (c.contains("max_iterations") && !c["max_iterations"].is_null())
        set.config.max_iterations = c["max_iterations"].get<std::size_t>();
    }
    for (const auto& s : doc.at("samples"))
      set.samples.push_back({from_bitstring(s.at("bits").get<std::string>()), s.at("energy").get<double>(),
                             s.value("occurrences", std::size_t{1})});
    return set;
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("malformed sample set: {}", e.what()));
  }
}

json to_json(const mission::ValidationReport& r) {
  json verdicts = json::object();
  for (int k = 1; k <= 8; ++k)
    verdicts[fmt::format("c{}", k)] = {{"pass", r.constraint(k).pass}, {"detail", r.constraint(k).detail}};
  return {{"valid", r.valid}, {"constraints", std::move(verdicts)}};
}

json to_json(const mission::MissionPlan& plan) {
  json legs = json::array();
  for (std::size_t q = 0; q + 1 < plan.sequence.size(); ++q)
    legs.push_back({{"from", plan.sequence[q]},
                    {"to", plan.sequence[q + 1]},
                    {"arrival_time", plan.arrival_times[q + 1]},
                    {"transfer_cost", plan.transfer_costs[q]}});
  return {{"format", "adr-plan"},
          {"sequence", plan.sequence},
          {"labels", plan.labels},
          {"arrival_times", plan.arrival_times},
          {"transfer_costs", plan.transfer_costs},
          {"disposal_costs", plan.disposal_costs},
          {"legs", std::move(legs)},
          {"total_transfer", plan.total_transfer},
          {"total_disposal", plan.total_disposal},
          {"total", plan.total},
          {"duration", plan.duration},
          {"t_max", plan.t_max},
          {"t_s", plan.t_s},
          {"margin", plan.margin()},
          {"cost_unit", plan.cost_unit}};
}

std::string plan_text(const mission::MissionPlan& plan) {
  const std::string unit = plan.cost_unit.empty() ? "" : " " + plan.cost_unit;
  std::string out = "Targets:\n";
  for (std::size_t q = 0; q < plan.sequence.size(); ++q)
    out += fmt::format("  {}. {} (debris {})\n", q + 1, plan.labels[q], plan.sequence[q]);
  out += "Cost breakdown:\n";
  out += fmt::format("  Transfer cost: {:g}{}\n", plan.total_transfer, unit);
  out += fmt::format("  Disposal cost: {:g}{}\n", plan.total_disposal, unit);
  out += fmt::format("  Total cost:    {:g}{}\n", plan.total, unit);
  if (plan.sequence.size() > 1) {
    out += "Transfer times (days from reference):\n";
    for (std::size_t q = 1; q < plan.sequence.size(); ++q)
      out += fmt::format("  {}-{}: {:g}\n", q, q + 1, plan.arrival_times[q]);
  }
  out += fmt::format("Duration: {:g} days (deadline {:g}, margin {:g})\n", plan.duration, plan.t_max, plan.margin());
  return out;
}

std::vector<orbits::DebrisObject> read_tle_catalog(std::istream& in, bool skip_bad, std::vector<std::string>* warnings,
                                                   const orbits::PhysicalConstants& k) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty() && line.front() != '#') lines.emplace_back(no, line);
  }
  auto is_data = [](const std::string& s, char c) { return s.size() >= 2 && s[0] == c && s[1] == ' '; };

  std::vector<orbits::DebrisObject> out;
  std::size_t q = 0;
  while (q < lines.size()) {
    const std::size_t start_line = lines[q].first;
    std::size_t consumed = 1;
    try {
      if (is_data(lines[q].second, '1')) {
        if (q + 1 >= lines.size()) throw ParseError("record is missing line 2", start_line);
        consumed = is_data(lines[q + 1].second, '2') ? 2 : 1;
        out.push_back(orbits::parse_tle(std::nullopt, lines[q].second, lines[q + 1].second, k));
      } else {
        if (q + 2 >= lines.size() || !is_data(lines[q + 1].second, '1'))
          throw ParseError(fmt::format("expected a TLE record, found '{}'", lines[q].second), start_line);
        consumed = is_data(lines[q + 2].second, '2') ? 3 : 2;
        out.push_back(orbits::parse_tle(lines[q].second, lines[q + 1].second, lines[q + 2].second, k));
      }
    } catch (const Error& e) {
      const auto* pe = dynamic_cast<const ParseError*>(&e);
      const ParseError located = pe && pe->line() ? *pe : ParseError(e.what(), start_line);
      if (!skip_bad) throw located;
      if (warnings) warnings->push_back(fmt::format("skipped record at {}", located.what()));
    }
    q += consumed;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << content;
  if (!out) throw DataError(fmt::format("write to {} failed", path.string()));
}

}  // namespace adr::io
