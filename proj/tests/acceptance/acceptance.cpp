// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Environment:
//   ADR_KOSMOS_TLE   79-object Kosmos-1408 snapshot to use instead of the bundled synthetic one.
//                    When it holds the five published pieces, their plan is compared with the published figures.
//   ADR_ACCEPT_ONLY  comma-separated criterion numbers to run (default: all).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "adr/cli.hpp"
#include "adr/io.hpp"
#include "adr/mission.hpp"
#include "adr/orbits.hpp"
#include "adr/qubo.hpp"
#include "adr/registry.hpp"
#include "adr/solvers.hpp"
#include "support.hpp"

using namespace adr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok   " : "FAIL ") + std::move(what));
  }
  void note(std::string what) { notes.push_back("     " + std::move(what)); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

solvers::SolverConfig config(std::uint64_t seed, std::size_t reads, std::size_t sweeps = 1000) {
  solvers::SolverConfig c;
  c.seed = seed;
  c.reads = reads;
  c.sweeps = sweeps;
  c.threads = 0;
  return c;
}

double valid_fraction(const solvers::SampleSet& set, const ProblemInstance& inst) {
  std::size_t valid = 0;
  for (const auto& s : set.samples)
    if (mission::validate(s.bits, inst).valid) valid += s.occurrences;
  return static_cast<double>(valid) / static_cast<double>(set.total_occurrences());
}

double oracle_optimum(const ProblemInstance& inst) { return mission::oracle_enumerate(inst).front().cost; }

bool plan_invariants(const mission::MissionPlan& plan, const ProblemInstance& inst, std::string& why) {
  for (std::size_t q = 1; q < plan.sequence.size(); ++q) {
    if (plan.arrival_times[q] - plan.arrival_times[q - 1] < inst.t_s - 1e-9 * std::max(1.0, inst.t_s)) {
      why = fmt::format("gap {} -> {} shorter than servicing time", q, q + 1);
      return false;
    }
  }
  if (plan.duration > inst.t_max * (1.0 + 1e-12)) {
    why = fmt::format("duration {} exceeds deadline {}", plan.duration, inst.t_max);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome variable_counts() {
  Outcome o;
  const auto t0 = Clock::now();
  o.require(VariableRegistry(2).size() == 10, "N_t = 2 -> 10 variables");
  o.require(VariableRegistry(11).size() == 154, "N_t = 11 -> 154 variables");
  o.require(VariableRegistry(79).size() == 6478, "N_t = 79 -> 6478 variables");
  o.require(qubo::build_qubo(test::benchmark(2)).n_vars() == 10, "built N_t = 2 model has 10 variables");
  o.require(qubo::build_qubo(test::benchmark(11)).n_vars() == 154, "built N_t = 11 model has 154 variables");
  const double s = seconds_since(t0);
  o.require(s < 1.0, fmt::format("runtime {:.3f} s < 1 s", s));
  return o;
}

Outcome golden_table() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::vector<int>, double>> expect{
      {{1, 3, 4}, 10.0}, {{1, 2, 3}, 11.0}, {{2, 1, 3}, 12.0}, {{1, 3, 2}, 13.0}};
  for (int n : {4, 6}) {
    std::vector<std::pair<std::vector<int>, double>> got;
    for (const auto& p : mission::oracle_enumerate(test::benchmark(n))) got.emplace_back(p.sequence, p.cost);
    std::string listing;
    for (const auto& [seq, cost] : got) listing += fmt::format(" ({})={}", fmt::join(seq, ","), cost);
    o.require(got == expect, fmt::format("N_t = {}:{}", n, listing));
  }
  const double s = seconds_since(t0);
  o.require(s < 1.0, fmt::format("runtime {:.3f} s < 1 s", s));
  return o;
}

Outcome qubo_oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int n : {2, 3}) {
    const auto inst = test::benchmark(n);
    const auto oracle = mission::oracle_enumerate(inst);
    const auto set = solvers::exhaustive_minimum(qubo::build_qubo(inst));
    const auto& best = set.best();
    const auto pb = qubo::penalty_breakdown(inst, {}, best.bits);
    o.require(best.energy == oracle.front().cost,
              fmt::format("N_t = {}: minimum energy {} = oracle {}", n, best.energy, oracle.front().cost));
    o.require(pb.penalty() == 0.0, fmt::format("N_t = {}: zero constraint penalty", n));
    std::set<std::vector<int>> argmin;
    for (const auto& p : oracle)
      if (p.cost == oracle.front().cost) argmin.insert(p.sequence);
    bool all_match = true;
    std::string decoded;
    for (const auto& smp : set.samples) {
      const auto seq = mission::decode(smp.bits, inst).sequence;
      decoded += fmt::format(" ({})", fmt::join(seq, ","));
      all_match = all_match && argmin.count(seq) == 1;
    }
    o.require(all_match && set.samples.size() == argmin.size(),
              fmt::format("N_t = {}: minimizers decode to the oracle argmin:{}", n, decoded));
  }
  const double s = seconds_since(t0);
  o.require(s < 60.0, fmt::format("runtime {:.2f} s < 60 s", s));
  return o;
}

Outcome energy_forms() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 11; ++n) {
    const auto inst = test::benchmark(n);
    const auto model = qubo::build_qubo(inst);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto bits = test::random_bits(model.n_vars(), rng);
      const double a = qubo::energy(model, bits);
      const double b = qubo::penalty_breakdown(inst, {}, bits).weighted_total;
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    o.require(worst <= 1e-9, fmt::format("N_t = {}: worst relative gap {:.2e}", n, worst));
  }
  const double s = seconds_since(t0);
  o.require(s < 10.0, fmt::format("runtime {:.2f} s < 10 s", s));
  return o;
}

Outcome annealing() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int n = 2; n <= 6; ++n) {
    const auto inst = test::benchmark(n);
    const auto set = solvers::simulated_annealing(qubo::build_qubo(inst), config(2023, 1000, 50000));
    const double opt = oracle_optimum(inst);
    o.require(set.best().energy == opt,
              fmt::format("N_t = {}: 1000 x 50000 best energy {} = oracle {} (valid {:.1f}%)", n, set.best().energy,
                          opt, 100.0 * valid_fraction(set, inst)));
  }
  std::vector<double> xs, ys;
  for (int n = 4; n <= 11; ++n) {
    const auto inst = test::benchmark(n);
    const auto model = qubo::build_qubo(inst);
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      sum += valid_fraction(solvers::simulated_annealing(model, config(seed, 200, 5000)), inst);
    xs.push_back(n);
    ys.push_back(sum / 5.0);
    o.note(fmt::format("N_t = {:2}: mean valid fraction {:.3f} (200 x 5000, 5 seeds)", n, ys.back()));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  const double slope = sxy / sxx;
  o.require(slope <= 0.0, fmt::format("least-squares trend over N_t = 4..11 is non-increasing (slope {:.4f})", slope));
  o.require(ys.back() <= ys.front(), fmt::format("N_t = 11 fraction {:.3f} <= N_t = 4 fraction {:.3f}", ys.back(),
                                                 ys.front()));
  o.note(fmt::format("runtime {:.1f} s", seconds_since(t0)));
  return o;
}

Outcome tabu() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int n = 2; n <= 11; ++n) {
    const auto inst = test::benchmark(n);
    auto cfg = config(2023, 1000);
    cfg.tenure = 20;
    const auto set = solvers::tabu_search(qubo::build_qubo(inst), cfg);
    const double opt = oracle_optimum(inst);
    const auto line = fmt::format("N_t = {:2}: best energy {} vs oracle {} (valid {:.1f}%)", n, set.best().energy, opt,
                                  100.0 * valid_fraction(set, inst));
    if (n <= 9)
      o.require(set.best().energy == opt, line);
    else
      o.note(line + " [reported only]");
  }
  o.note(fmt::format("runtime {:.1f} s", seconds_since(t0)));
  return o;
}

Outcome descent() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto inst = test::benchmark(3);
  const auto model = qubo::build_qubo(inst);
  const double opt = oracle_optimum(inst);
  const auto from_zero = solvers::steepest_descent(model, BitVector(model.n_vars(), 0));
  o.require(!solvers::improving_flip(model, from_zero.bits).has_value(), "all-zeros descent ends in a local minimum");
  o.require(from_zero.energy > opt, fmt::format("its energy {} is above the optimum {}", from_zero.energy, opt));

  // Search for a three-flip neighbour of the optimum whose descent returns to it.
  const auto optimum_bits = mission::encode(mission::oracle_enumerate(inst).front().sequence, inst);
  const std::size_t n = model.n_vars();
  std::optional<std::array<std::size_t, 3>> found;
  for (std::size_t a = 0; a < n && !found; ++a)
    for (std::size_t b = a + 1; b < n && !found; ++b)
      for (std::size_t c = b + 1; c < n && !found; ++c) {
        auto start = optimum_bits;
        start[a] ^= 1;
        start[b] ^= 1;
        start[c] ^= 1;
        if (solvers::steepest_descent(model, start).bits == optimum_bits) found = std::array{a, b, c};
      }
  o.require(found.has_value(), found ? fmt::format("flipping variables {},{},{} descends back to energy {}",
                                                   (*found)[0], (*found)[1], (*found)[2], opt)
                                     : std::string("no descending three-flip neighbour found"));
  const double s = seconds_since(t0);
  o.require(s < 1.0, fmt::format("runtime {:.3f} s < 1 s", s));
  return o;
}

Outcome path_count() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto v = mission::count_paths(11, 10);
  o.require(v == 39916800, "count_paths(11, 10) = " + v.str());
  o.note("count_paths(79, 5) = " + mission::count_paths(79, 5).str());
  const double s = seconds_since(t0);
  o.require(s < 1.0, fmt::format("runtime {:.4f} s < 1 s", s));
  return o;
}

// Published Kosmos plan, used only when the matching snapshot is supplied.
const std::vector<std::string> kPublishedPieces{"1982-092RP", "1982-092FT", "1982-092RG", "1982-092BYD", "1982-092JA"};

// Simulated annealing budget for the catalog-scale model. The objective is
// scaled to 10 m/s units so the penalties dominate as they do on the
// artificial instances; beta spans a 5000-unit uphill step accepted with
// probability e^-0.5 down to a 0.1-unit step at e^-2.
constexpr double kKosmosObjectiveWeight = 0.1;
constexpr std::size_t kKosmosReads = 200;
constexpr std::size_t kKosmosSweeps = 5000;
constexpr std::pair<double, double> kKosmosBeta{1e-4, 20.0};

Outcome kosmos() {
  Outcome o;
  const char* env = std::getenv("ADR_KOSMOS_TLE");
  const fs::path tle = env && *env ? fs::path(env) : test::kosmos_fixture();
  o.note("catalog: " + tle.string() + (env && *env ? "" : " (synthetic stand-in)"));
  const auto dir = fs::temp_directory_path() / "adr_acceptance";
  fs::create_directories(dir);
  const auto inst_path = dir / "kosmos.json";
  const auto qubo_path = dir / "kosmos.qubo";

  std::ostringstream out, err;
  const auto t0 = Clock::now();
  int code = cli::run({"adr", "ingest", tle.string(), "--t0", "2023-09-30", "--n-select", "5", "--t-max", "365",
                       "--t-service", "20", "-o", inst_path.string()},
                      out, err);
  o.require(code == 0, fmt::format("ingest exit code {} {}", code, err.str()));
  if (code != 0) return o;
  code = cli::run({"adr", "export", inst_path.string(), "-o", qubo_path.string()}, out, err);
  const double pipeline = seconds_since(t0);
  o.require(code == 0, fmt::format("export exit code {} {}", code, err.str()));
  o.require(pipeline < 120.0, fmt::format("ingest + export {:.1f} s < 120 s", pipeline));
  std::ifstream qf(qubo_path);
  std::string header;
  while (std::getline(qf, header) && !header.starts_with("p ")) {
  }
  o.require(header.starts_with("p qubo 6478 "), "exported header: " + header);
  o.note(fmt::format("export size {:.0f} MB", fs::file_size(qubo_path) / 1e6));

  const auto inst = io::load_instance(inst_path);
  qubo::LagrangeWeights w;
  w.l_h = kKosmosObjectiveWeight;
  const auto model = qubo::build_qubo(inst, w);
  o.require(model.n_vars() == 6478, fmt::format("model has {} variables", model.n_vars()));

  const auto ts = Clock::now();
  auto cfg = config(1408, kKosmosReads, kKosmosSweeps);
  cfg.beta_range = kKosmosBeta;
  const auto set = solvers::simulated_annealing(model, cfg);
  std::optional<mission::MissionPlan> plan;
  std::size_t valid = 0;
  for (const auto& smp : set.samples) {
    if (!mission::validate(smp.bits, inst).valid) continue;
    valid += smp.occurrences;
    if (!plan) plan = mission::decode(smp.bits, inst);
  }
  o.note(fmt::format("annealing {} reads x {} sweeps, L_H = {}: {:.0f} s, {} valid, best energy {}", kKosmosReads,
                     kKosmosSweeps, kKosmosObjectiveWeight, seconds_since(ts), valid, set.best().energy));
  if (!plan) {
    const auto report = mission::validate(set.best().bits, inst);
    for (int k = 1; k <= 8; ++k)
      if (!report.constraint(k).pass) o.note(fmt::format("best sample breaks C{}: {}", k, report.constraint(k).detail));
  }
  o.require(plan.has_value(), "at least one valid 5-target plan");
  if (plan) {
    std::string why;
    o.require(plan->sequence.size() == 5, fmt::format("plan visits {} targets", plan->sequence.size()));
    o.require(plan_invariants(*plan, inst, why), why.empty() ? "servicing gaps and deadline hold" : why);
    o.note(fmt::format("plan {} total {:.1f} m/s (transfer {:.1f}, disposal {:.1f}), duration {:.1f} d",
                       fmt::join(plan->labels, " "), plan->total, plan->total_transfer, plan->total_disposal,
                       plan->duration));
  }

  o.note("reference (published snapshot): total 870 m/s = 200 transfer + 670 disposal; arrivals 92/126/198/241 d");
  std::vector<int> published_seq;
  for (const auto& piece : kPublishedPieces) {
    const auto it = std::find(inst.labels.begin(), inst.labels.end(), piece);
    if (it != inst.labels.end()) published_seq.push_back(static_cast<int>(it - inst.labels.begin()) + 1);
  }
  if (env && *env && published_seq.size() == kPublishedPieces.size()) {
    const auto ref = mission::plan_for_sequence(published_seq, inst);
    auto within = [](double got, double want) { return std::abs(got - want) <= 0.05 * want; };
    o.require(within(ref.total, 870.0), fmt::format("published plan total {:.1f} m/s within 5% of 870", ref.total));
    o.require(within(ref.total_transfer, 200.0),
              fmt::format("published plan transfer {:.1f} m/s within 5% of 200", ref.total_transfer));
    o.require(within(ref.total_disposal, 670.0),
              fmt::format("published plan disposal {:.1f} m/s within 5% of 670", ref.total_disposal));
    o.note(fmt::format("published plan arrivals {:.0f} d", fmt::join(ref.arrival_times, "/")));
  } else {
    o.note("published snapshot not supplied; reference figures not compared");
  }
  return o;
}

Outcome properties() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(10);

  bool round_trip = true;
  for (int n = 2; n <= 11; ++n) {
    const auto inst = test::benchmark(n);
    for (const auto& p : mission::oracle_enumerate(inst))
      round_trip = round_trip && mission::decode(mission::encode(p.sequence, inst), inst).sequence == p.sequence;
  }
  o.require(round_trip, "encode/decode round trip on every oracle-feasible sequence of N_t = 2..11");

  bool agree = true;
  for (int n = 2; n <= 6; ++n) {
    const auto inst = test::benchmark(n);
    const auto feasible = mission::oracle_enumerate(inst);
    const auto nv = variable_count(n);
    for (int k = 0; k < 10000; ++k) {
      auto bits = k % 2 ? test::random_bits(nv, rng)
                        : mission::encode(feasible[rng() % feasible.size()].sequence, inst);
      if (k % 2 == 0)
        for (int f = static_cast<int>(rng() % 3); f > 0; --f) bits[rng() % nv] ^= 1;
      const auto report = mission::validate(bits, inst);
      const auto pb = qubo::penalty_breakdown(inst, {}, bits);
      for (int c = 1; c <= 8; ++c) agree = agree && report.constraint(c).pass == (pb.constraint(c) == 0.0);
    }
  }
  o.require(agree, "validate agrees with zero penalty on 10,000 vectors per instance N_t = 2..6");

  std::ifstream in(test::kosmos_fixture());
  const auto catalog = io::read_tle_catalog(in, false);
  const auto inst = orbits::build_instance(catalog, orbits::parse_date("2023-09-30"), 5, 365.0, 20.0);
  bool symmetric = true;
  for (std::size_t j = 0; j < inst.nodes(); ++j)
    for (std::size_t k = 1; k < inst.nodes(); ++k)
      symmetric = symmetric && (j == 0 || (inst.T(j, k) == inst.T(k, j) && inst.C(j, k) == inst.C(k, j)));
  o.require(symmetric, "alignment times and transfer costs symmetric on the catalog instance");

  const auto model = qubo::build_qubo(test::benchmark(7));
  auto c1 = config(77, 64, 500);
  auto c2 = c1;
  c1.threads = 1;
  c2.threads = 4;
  auto same = [](const solvers::SampleSet& a, const solvers::SampleSet& b) {
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t k = 0; k < a.samples.size(); ++k)
      if (a.samples[k].bits != b.samples[k].bits || a.samples[k].occurrences != b.samples[k].occurrences) return false;
    return true;
  };
  o.require(same(solvers::simulated_annealing(model, c1), solvers::simulated_annealing(model, c2)) &&
                same(solvers::tabu_search(model, c1), solvers::tabu_search(model, c2)) &&
                same(solvers::steepest_descent_sampler(model, c1), solvers::steepest_descent_sampler(model, c2)),
            "seeded solvers are deterministic across thread counts");
  const double s = seconds_since(t0);
  o.require(s < 60.0, fmt::format("runtime {:.1f} s < 60 s", s));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"variable counts", variable_counts},
      {"golden table", golden_table},
      {"QUBO-oracle equivalence", qubo_oracle_equivalence},
      {"energy-form equivalence", energy_forms},
      {"simulated annealing", annealing},
      {"tabu search", tabu},
      {"steepest descent", descent},
      {"path count", path_count},
      {"Kosmos-1408 pipeline", kosmos},
      {"property suites", properties},
  };
  std::set<int> only;
  if (const char* sel = std::getenv("ADR_ACCEPT_ONLY")) {
    std::stringstream ss(sel);
    for (std::string tok; std::getline(ss, tok, ',');) only.insert(std::stoi(tok));
  }

  std::vector<std::string> summary;
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("[{}] {}\n", id, criteria[k].first);
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    summary.push_back(fmt::format("criterion {:2} {:<26} {}", id, criteria[k].first, o.pass ? "PASS" : "FAIL"));
    all = all && o.pass;
    std::cout.flush();
  }
  std::cout << '\n';
  for (const auto& line : summary) std::cout << line << '\n';
  return all ? 0 : 1;
}
