#include "adr/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "adr/errors.hpp"
#include "adr/io.hpp"
#include "adr/mission.hpp"
#include "adr/orbits.hpp"
#include "adr/qubo.hpp"
#include "adr/registry.hpp"
#include "adr/solvers.hpp"

#include <httplib.h>

namespace adr::cli {

namespace {

using io::json;

struct WeightFlags {
  qubo::LagrangeWeights w;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lh", w.l_h, "Objective multiplier")->check(CLI::NonNegativeNumber);
    double* fields[] = {&w.l1, &w.l2, &w.l3, &w.l4, &w.l5, &w.l6, &w.l7, &w.l8};
    for (int k = 1; k <= 8; ++k)
      cmd->add_option(fmt::format("--l{}", k), *fields[k - 1], fmt::format("Constraint {} multiplier", k))
          ->check(CLI::NonNegativeNumber);
  }
};

struct IngestArgs {
  std::string tle;
  std::string t0;
  int n_select = 0;
  double t_max = 0.0;
  double t_service = 0.0;
  std::string out;
  bool skip_bad = false;
};

struct SolveArgs {
  std::string instance;
  std::string solver = "sa";
  solvers::SolverConfig config;
  double beta_hot = 0.0;
  double beta_cold = 0.0;
  std::size_t stall_limit = 0;
  std::string initial;
  std::string samples_out;
  std::string plan_out;
  WeightFlags weights;
};

struct OracleArgs {
  std::string instance;
  std::string out;
  std::size_t guard = mission::kOracleGuard;
};

struct ValidateArgs {
  std::string instance;
  std::string bits;
  std::string sequence;
  std::string out;
  WeightFlags weights;
};

struct LandscapeArgs {
  std::string instance;
  std::uint64_t start = 0;
  std::uint64_t stop = 0;
  std::uint64_t stride = 1;
  std::string out;
  WeightFlags weights;
};

struct ExportArgs {
  std::string instance;
  std::string out;
  WeightFlags weights;
};

struct FetchArgs {
  std::string target;
  std::string out;
  bool offline = false;
  int timeout = 30;
};

std::vector<int> parse_sequence(const std::string& text) {
  std::vector<int> seq;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      seq.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("sequence entry '{}' is not an integer", tok));
    }
  }
  if (seq.empty()) throw ParseError("empty sequence");
  return seq;
}

std::string manifest_line(const io::RunManifest& m) { return "manifest " + io::to_json(m).dump(); }

double valid_fraction(const solvers::SampleSet& set, const ProblemInstance& inst) {
  std::size_t valid = 0;
  for (const auto& s : set.samples)
    if (mission::validate(s.bits, inst).valid) valid += s.occurrences;
  const std::size_t total = set.total_occurrences();
  return total ? static_cast<double>(valid) / static_cast<double>(total) : 0.0;
}

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  std::ifstream in(a.tle);
  if (!in) throw DataError(fmt::format("cannot open {}", a.tle));
  std::vector<std::string> warnings;
  const auto catalog = io::read_tle_catalog(in, a.skip_bad, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (catalog.empty()) throw DataError(fmt::format("{} contains no TLE records", a.tle));
  const double t0 = orbits::parse_date(a.t0);
  const auto inst = orbits::build_instance(catalog, t0, a.n_select, a.t_max, a.t_service);
  const auto manifest = io::RunManifest::make(
      "ingest", {a.tle},
      {{"t0", a.t0}, {"n_select", a.n_select}, {"t_max", a.t_max}, {"t_service", a.t_service}, {"skip_bad", a.skip_bad}});
  io::save_instance(a.out, inst, &manifest);
  out << fmt::format("debris: {}\nvariables: {}\nwrote {}\n", inst.n_t, variable_count(inst.n_t), a.out);
  return kOk;
}

int cmd_solve(SolveArgs a, std::ostream& out, std::ostream& err) {
  const auto inst = io::load_instance(a.instance);
  const auto model = qubo::build_qubo(inst, a.weights.w);
  if ((a.beta_hot > 0.0) != (a.beta_cold > 0.0)) throw InvalidArgument("--beta-hot and --beta-cold go together");
  if (a.beta_hot > 0.0) a.config.beta_range = std::pair{a.beta_hot, a.beta_cold};
  if (a.stall_limit > 0) a.config.stall_limit = a.stall_limit;

  solvers::SampleSet set;
  std::string note;
  if (a.solver == "sd") {
    if (!a.initial.empty()) {
      const auto start = from_bitstring(a.initial);
      auto s = solvers::steepest_descent(model, start);
      set.solver = "steepest_descent";
      set.config = a.config;
      set.config.reads = 1;
      set.samples.push_back(std::move(s));
    } else {
      set = solvers::steepest_descent_sampler(model, a.config);
    }
  } else if (a.solver == "tabu") {
    set = solvers::tabu_search(model, a.config);
  } else if (a.solver == "sa") {
    set = solvers::simulated_annealing(model, a.config);
  } else {
    set = solvers::exhaustive_minimum(model);
    note = fmt::format("exhaustive enumeration of 2^{} states: global minimum proven\n", model.n_vars());
  }

  const double accuracy = valid_fraction(set, inst);
  const auto manifest = io::RunManifest::make(
      "solve", {a.instance},
      {{"solver", a.solver}, {"config", io::to_json(a.config)}, {"weights", io::to_json(a.weights.w)}});
  if (!a.samples_out.empty()) {
    json doc = io::to_json(set);
    doc["valid_fraction"] = accuracy;
    doc["manifest"] = io::to_json(manifest);
    io::write_file(a.samples_out, doc.dump(1) + "\n");
  }

  const auto& best = set.best();
  out << fmt::format("solver: {}\nsamples: {} ({} distinct)\nbest energy: {:g}\nvalid fraction: {:.4f}\n", set.solver,
                     set.total_occurrences(), set.samples.size(), best.energy, accuracy);
  out << note;
  const auto report = mission::validate(best.bits, inst);
  if (!report.valid) {
    err << "best sample is not a valid mission:\n" << report.describe();
    if (!a.plan_out.empty()) {
      json doc = {{"valid", false}, {"validation", io::to_json(report)}, {"manifest", io::to_json(manifest)}};
      io::write_file(a.plan_out, doc.dump(2) + "\n");
    }
    return kNoValidSolution;
  }
  try {
    const auto plan = mission::decode(best.bits, inst);
    out << io::plan_text(plan);
    if (!a.plan_out.empty()) {
      json doc = io::to_json(plan);
      doc["energy"] = best.energy;
      doc["manifest"] = io::to_json(manifest);
      io::write_file(a.plan_out, doc.dump(2) + "\n");
    }
  } catch (const mission::InvalidSolution& e) {
    err << e.what() << '\n';
    return kNoValidSolution;
  }
  return kOk;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const auto inst = io::load_instance(a.instance);
  const auto rows = mission::oracle_enumerate(inst, a.guard);
  json listing = json::array();
  for (const auto& r : rows) {
    std::string seq;
    for (std::size_t q = 0; q < r.sequence.size(); ++q) seq += (q ? "," : "") + std::to_string(r.sequence[q]);
    out << fmt::format("{}\t{:g}\n", seq, r.cost);
    listing.push_back({{"sequence", r.sequence}, {"cost", r.cost}, {"arrival_times", r.arrival_times}});
  }
  out << fmt::format("{} feasible sequences\n", rows.size());
  if (!a.out.empty()) {
    const auto manifest = io::RunManifest::make("oracle", {a.instance}, {{"guard", a.guard}});
    json doc = {{"format", "adr-oracle"}, {"rows", std::move(listing)}, {"manifest", io::to_json(manifest)}};
    io::write_file(a.out, doc.dump(2) + "\n");
  }
  return kOk;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.bits.empty() == a.sequence.empty()) {
    err << "usage error: give exactly one of --bits or --sequence\n";
    return kUsage;
  }
  const auto inst = io::load_instance(a.instance);
  BitVector bits;
  if (!a.bits.empty()) {
    bits = from_bitstring(a.bits);
    if (bits.size() != variable_count(inst.n_t))
      throw ParseError(fmt::format("bitstring has {} bits, instance needs {}", bits.size(), variable_count(inst.n_t)));
  } else {
    bits = mission::encode(parse_sequence(a.sequence), inst);
  }
  const auto report = mission::validate(bits, inst);
  const auto breakdown = qubo::penalty_breakdown(inst, a.weights.w, bits);
  out << report.describe();
  out << fmt::format("energy: {:g} (objective {:g}, penalty {:g})\n", breakdown.weighted_total, breakdown.h,
                     breakdown.penalty());
  if (!a.out.empty()) {
    const auto manifest = io::RunManifest::make("validate", {a.instance}, {{"bits", to_bitstring(bits)}});
    json doc = io::to_json(report);
    doc["breakdown"] = io::to_json(breakdown);
    doc["manifest"] = io::to_json(manifest);
    io::write_file(a.out, doc.dump(2) + "\n");
  }
  return report.valid ? kOk : kNoValidSolution;
}

int cmd_landscape(const LandscapeArgs& a, std::ostream& out) {
  const auto inst = io::load_instance(a.instance);
  const auto model = qubo::build_qubo(inst, a.weights.w);
  const std::uint64_t stop = a.stop ? a.stop : (model.n_vars() < 64 ? std::uint64_t{1} << model.n_vars() : 0);
  const auto points = solvers::landscape_scan(model, a.start, stop, a.stride);
  const auto manifest = io::RunManifest::make(
      "landscape", {a.instance},
      {{"start", a.start}, {"stop", stop}, {"stride", a.stride}, {"weights", io::to_json(a.weights.w)}});
  std::ostringstream table;
  table << "# " << manifest_line(manifest) << '\n' << "# state energy\n";
  for (const auto& p : points) table << p.state << ' ' << fmt::format("{}", p.energy) << '\n';
  io::write_file(a.out, table.str());
  out << fmt::format("wrote {} points to {}\n", points.size(), a.out);
  return kOk;
}

int cmd_export(const ExportArgs& a, std::ostream& out) {
  const auto inst = io::load_instance(a.instance);
  const auto model = qubo::build_qubo(inst, a.weights.w);
  const auto manifest = io::RunManifest::make("export", {a.instance}, {{"weights", io::to_json(a.weights.w)}});
  const std::vector<std::string> comments{manifest_line(manifest)};
  {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw DataError(fmt::format("cannot write {}", a.out));
    qubo::write_qubo(f, model, comments);
    if (!f) throw DataError(fmt::format("write to {} failed", a.out));
  }
  const std::string names = a.out + ".names";
  {
    std::ofstream f(names, std::ios::binary);
    if (!f) throw DataError(fmt::format("cannot write {}", names));
    f << "# " << manifest_line(manifest) << '\n';
    qubo::write_name_map(f, model);
  }
  out << fmt::format("variables: {}\nterms: {}\noffset: {}\nwrote {} and {}\n", model.n_vars(), model.terms().size(),
                     model.offset(), a.out, names);
  return kOk;
}

int cmd_fetch(const FetchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.offline) {
    err << "network access disabled by --offline; download the TLE file separately and pass it to `adr ingest`\n";
    return kUsage;
  }
  std::string url = a.target;
  if (!url.starts_with("http://") && !url.starts_with("https://"))
    url = "https://celestrak.org/NORAD/elements/gp.php?INTDES=" + a.target + "&FORMAT=tle";
  const auto scheme_end = url.find("://") + 3;
  const auto path_start = url.find('/', scheme_end);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  std::string out_path = a.out;
  if (out_path.empty()) {
    const char* cache = std::getenv("ADR_TLE_CACHE");
    std::string stem = a.target;
    for (char& ch : stem)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-') ch = '_';
    out_path = (cache && *cache ? std::string(cache) + "/" : std::string()) + stem + ".tle";
  }

  httplib::Client client(origin);
  client.set_connection_timeout(a.timeout);
  client.set_read_timeout(a.timeout);
  client.set_follow_location(true);
  const auto res = client.Get(path);
  if (!res) throw DataError(fmt::format("request to {} failed: {}", url, httplib::to_string(res.error())));
  if (res->status != 200) throw DataError(fmt::format("request to {} returned HTTP status {}", url, res->status));

  std::istringstream body(res->body);
  const auto catalog = io::read_tle_catalog(body, false);
  if (catalog.empty()) throw DataError(fmt::format("response from {} holds no TLE records", url));
  const auto manifest = io::RunManifest::make("fetch", {url}, json::object());
  io::write_file(out_path, "# " + manifest_line(manifest) + "\n" + res->body);
  out << fmt::format("fetched {} records into {}\n", catalog.size(), out_path);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active debris removal mission planner"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Build an instance file from a TLE catalog");
  c_ingest->add_option("tle", ingest.tle, "TLE file")->required();
  c_ingest->add_option("--t0", ingest.t0, "Reference date YYYY-MM-DD (UTC)")->required();
  c_ingest->add_option("--n-select", ingest.n_select, "Debris to select")->required()->check(CLI::PositiveNumber);
  c_ingest->add_option("--t-max", ingest.t_max, "Mission deadline, days")->required()->check(CLI::PositiveNumber);
  c_ingest->add_option("--t-service", ingest.t_service, "Servicing time per debris, days")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_ingest->add_option("-o,--out", ingest.out, "Instance file to write")->required();
  c_ingest->add_flag("--skip-bad", ingest.skip_bad, "Drop malformed records with a warning");

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Build the QUBO, sample it and report the best plan");
  c_solve->add_option("instance", solve.instance, "Instance file")->required();
  c_solve->add_option("--solver", solve.solver, "sd | tabu | sa | exact")
      ->check(CLI::IsMember({"sd", "tabu", "sa", "exact"}));
  c_solve->add_option("--seed", solve.config.seed, "Master random seed");
  c_solve->add_option("--reads", solve.config.reads, "Number of reads")->check(CLI::PositiveNumber);
  c_solve->add_option("--sweeps", solve.config.sweeps, "Annealing sweeps per read")->check(CLI::PositiveNumber);
  c_solve->add_option("--tenure", solve.config.tenure, "Tabu tenure")->check(CLI::Range(1, 20));
  c_solve->add_option("--beta-hot", solve.beta_hot, "Initial inverse temperature")->check(CLI::PositiveNumber);
  c_solve->add_option("--beta-cold", solve.beta_cold, "Final inverse temperature")->check(CLI::PositiveNumber);
  c_solve->add_option("--stall-limit", solve.stall_limit, "Tabu non-improving iterations per read");
  c_solve->add_option("--threads", solve.config.threads, "Worker threads (0 = all cores)");
  c_solve->add_option("--initial", solve.initial, "Starting bitstring for --solver sd");
  c_solve->add_option("--samples-out", solve.samples_out, "Sample set JSON to write");
  c_solve->add_option("--plan-out", solve.plan_out, "Plan report JSON to write");
  solve.weights.attach(c_solve);

  OracleArgs oracle;
  auto* c_oracle = app.add_subcommand("oracle", "Enumerate every schedulable selection by brute force");
  c_oracle->add_option("instance", oracle.instance, "Instance file")->required();
  c_oracle->add_option("-o,--out", oracle.out, "Listing JSON to write");
  c_oracle->add_option("--guard", oracle.guard, "Maximum candidate count");

  ValidateArgs validate;
  auto* c_validate = app.add_subcommand("validate", "Check a bitstring or visiting order against the constraints");
  c_validate->add_option("instance", validate.instance, "Instance file")->required();
  c_validate->add_option("--bits", validate.bits, "Bitstring in canonical variable order");
  c_validate->add_option("--sequence", validate.sequence, "Comma-separated debris indices, e.g. 1,3,4");
  c_validate->add_option("-o,--out", validate.out, "Report JSON to write");
  validate.weights.attach(c_validate);

  LandscapeArgs landscape;
  auto* c_land = app.add_subcommand("landscape", "Tabulate energies over integer-encoded states");
  c_land->add_option("instance", landscape.instance, "Instance file")->required();
  c_land->add_option("--start", landscape.start, "First state");
  c_land->add_option("--stop", landscape.stop, "One past the last state (default 2^n)");
  c_land->add_option("--stride", landscape.stride, "Step between states")->check(CLI::PositiveNumber);
  c_land->add_option("-o,--out", landscape.out, "Table to write")->required();
  landscape.weights.attach(c_land);

  ExportArgs exp;
  auto* c_export = app.add_subcommand("export", "Write the QUBO and its variable name map");
  c_export->add_option("instance", exp.instance, "Instance file")->required();
  c_export->add_option("-o,--out", exp.out, "QUBO file to write (names go to <out>.names)")->required();
  exp.weights.attach(c_export);

  FetchArgs fetch;
  auto* c_fetch = app.add_subcommand("fetch", "Download TLE records by URL or international designator");
  c_fetch->add_option("target", fetch.target, "URL or designator such as 1982-092")->required();
  c_fetch->add_option("-o,--out", fetch.out, "TLE file to write (default $ADR_TLE_CACHE/<target>.tle)");
  c_fetch->add_flag("--offline", fetch.offline, "Refuse network access");
  c_fetch->add_option("--timeout", fetch.timeout, "Seconds")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*c_ingest) return cmd_ingest(ingest, out, err);
    if (*c_solve) return cmd_solve(solve, out, err);
    if (*c_oracle) return cmd_oracle(oracle, out);
    if (*c_validate) return cmd_validate(validate, out, err);
    if (*c_land) return cmd_landscape(landscape, out);
    if (*c_export) return cmd_export(exp, out);
    if (*c_fetch) return cmd_fetch(fetch, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace adr::cli
