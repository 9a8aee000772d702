// gather: command-line front end for the gathering simulator.
//
//   gather simulate --input square.json --adversary sync --delta 2 --seed 7
//   gather classify asym4.json
//   gather sweep grid.json --out runs.csv

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>
#include <json.hpp>

#include "gather/errors.hpp"
#include "gather/io.hpp"
#include "gather/simulator.hpp"
#include "gather/sweep.hpp"
#include "gather/symmetry.hpp"

using namespace gather;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kError = 1, kMaxRounds = 2, kBivalent = 3, kViolation = 4 };

int log_level() {
  const char* v = std::getenv("GATHER_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

int exit_for(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Gathered: return kOk;
    case OutcomeKind::MaxRoundsExceeded: return kMaxRounds;
    case OutcomeKind::InvariantViolation: return kViolation;
  }
  return kError;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

struct SimulateArgs {
  std::string input;
  std::size_t n = 0;
  bool random = false;
  std::uint64_t seed = 0;
  std::optional<double> delta;
  double eps = 1e-9;
  std::uint64_t max_rounds = 100000;
  int fairness_bound = 8;
  std::string adversary = "sync";
  double p = 0.5;
  std::string stop = "full";
  std::size_t crashes = 0;
  std::string crash_schedule;
  std::string out;
  std::string summary;
};

int cmd_simulate(const SimulateArgs& a) {
  const int verbose = log_level();
  SimParams params;
  params.tol = {a.eps, a.eps};
  params.seed = a.seed;
  params.max_rounds = a.max_rounds;
  params.fairness_bound = a.fairness_bound;

  Rng gen(a.seed);
  std::vector<Point> pts;
  if (!a.input.empty()) {
    pts = read_points(a.input);
  } else if (a.random && a.n > 0) {
    pts = random_points(a.n, gen, params.tol);
  } else {
    throw InvalidInput("give --input or --random with --n");
  }
  const Configuration initial(pts, params.tol);
  params.delta = a.delta.value_or(0.01 * initial.diameter());

  AdversarySpec adv;
  const auto act = parse_activation(a.adversary);
  const auto stop = parse_stop(a.stop);
  if (!act) throw InvalidInput("unknown adversary " + a.adversary);
  if (!stop) throw InvalidInput("unknown stop policy " + a.stop);
  adv.activation = *act;
  adv.stop = *stop;
  adv.activation_prob = a.p;
  if (!a.crash_schedule.empty()) read_crash_schedule(a.crash_schedule, adv);
  if (a.crashes > 0) {
    std::vector<std::size_t> robots(pts.size());
    std::iota(robots.begin(), robots.end(), 0);
    std::shuffle(robots.begin(), robots.end(), gen);
    std::uniform_int_distribution<std::uint64_t> when(0, 19);
    for (std::size_t k = 0; k < a.crashes && k < robots.size(); ++k) {
      adv.crash_schedule.push_back({when(gen), robots[k]});
    }
  }

  RunResult result;
  try {
    result = run(initial, adv, params);
  } catch (const BivalentInitial& e) {
    std::cerr << e.what() << '\n';
    return kBivalent;
  }
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw InvalidInput("cannot write " + a.out);
    write_trace(out, result.trace);
  }
  const json summary = summary_json(result, a.seed);
  if (!a.summary.empty()) {
    std::ofstream out(a.summary);
    if (!out) throw InvalidInput("cannot write " + a.summary);
    out << summary.dump() << '\n';
  } else {
    std::cout << summary.dump() << '\n';
  }
  if (verbose > 0 && !result.outcome.detail.empty()) std::cerr << result.outcome.detail << '\n';
  return exit_for(result.outcome.kind);
}

int cmd_classify(const std::string& input, double eps, bool decide) {
  const Configuration c(read_points(input), {eps, eps});
  const ConfigClass cls = classify(c);
  json j;
  j["class"] = std::string(to_string(cls.tag));
  j["sym"] = symmetricity(c).sym;
  j["qreg"] = cls.qreg ? json(*cls.qreg) : json(nullptr);
  if (cls.weber) j["weber"] = point_json(*cls.weber);
  j["safe_points"] = json::array();
  for (const Point& p : safe_points(c)) j["safe_points"].push_back(point_json(p));
  if (cls.elected) j["elected"] = point_json(*cls.elected);
  if (cls.endpoints) {
    j["endpoints"] = json::array({point_json((*cls.endpoints)[0]), point_json((*cls.endpoints)[1])});
  }
  if (decide && cls.tag != ClassTag::Bivalent) {
    j["decisions"] = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const ComputeDecision d = compute(c, i, cls);
      j["decisions"].push_back({{"robot", i}, {"rule", std::string(to_string(d.rule))}, {"dest", point_json(d.destination)}});
    }
  }
  std::cout << j.dump() << '\n';
  return kOk;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_path) {
  const int verbose = log_level();
  std::ifstream in(spec_path);
  if (!in) throw InvalidInput("cannot open " + spec_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed sweep spec: ") + e.what());
  }
  const SweepSpec spec = SweepSpec::from_json(j);
  std::vector<SweepRow> rows;
  bool violated = false;
  for (const SweepJob& job : spec.jobs()) {
    const JobSetup setup = make_job(job, spec);
    RunResult r = run(Configuration(setup.initial, setup.params.tol), setup.adv, setup.params);
    if (r.outcome.kind == OutcomeKind::InvariantViolation) {
      violated = true;
      std::cerr << "run " << job.run_id << ": " << r.outcome.detail << '\n';
    }
    if (verbose > 0) {
      std::cerr << "run " << job.run_id << " " << to_string(r.outcome.kind) << " after "
                << r.outcome.rounds << " rounds\n";
    }
    r.trace.clear();
    rows.push_back({job, std::move(r)});
  }
  const std::string csv = sweep_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot write " + out_path);
    out << csv;
  }
  return violated ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wait-free gathering simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write its trace");
  simulate->add_option("--input", sim.input, "Configuration file (JSON or CSV)");
  simulate->add_option("--n", sim.n, "Number of robots for --random");
  simulate->add_flag("--random", sim.random, "Generate a random configuration");
  simulate->add_option("--seed", sim.seed, "Seed for generation and the adversary");
  simulate->add_option("--delta", sim.delta, "Movement floor (default 0.01 x diameter)");
  simulate->add_option("--eps", sim.eps, "Length and angle tolerance")->check(CLI::NonNegativeNumber);
  simulate->add_option("--max-rounds", sim.max_rounds, "Round budget");
  simulate->add_option("--fairness-bound", sim.fairness_bound, "Max rounds a live robot may idle")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--adversary", sim.adversary, "sync | random | rr | greedy");
  simulate->add_option("--p", sim.p, "Activation probability for --adversary random");
  simulate->add_option("--stop", sim.stop, "full | min | rand");
  simulate->add_option("--crashes", sim.crashes, "Crash K random robots at random early rounds");
  simulate->add_option("--crash-schedule", sim.crash_schedule, "Crash schedule JSON file");
  simulate->add_option("--out", sim.out, "Trace JSONL path");
  simulate->add_option("--summary", sim.summary, "Summary JSON path (default stdout)");

  std::string classify_input;
  double classify_eps = 1e-9;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a configuration");
  classify_cmd->add_option("input", classify_input, "Configuration file")->required();
  classify_cmd->add_option("--eps", classify_eps, "Length and angle tolerance");
  bool classify_decide = false;
  classify_cmd->add_flag("--decide", classify_decide, "Also print every robot's decision");

  std::string sweep_spec;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of simulations");
  sweep->add_option("spec", sweep_spec, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (classify_cmd->parsed()) return cmd_classify(classify_input, classify_eps, classify_decide);
    if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kError;
  }
  return kError;
}
