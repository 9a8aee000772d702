#include "gather/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gather/errors.hpp"
#include "gather/io.hpp"

namespace gather {

using nlohmann::json;

std::optional<Activation> parse_activation(std::string_view s) {
  if (s == "sync" || s == "synchronous") return Activation::Synchronous;
  if (s == "random") return Activation::Random;
  if (s == "rr" || s == "round_robin") return Activation::RoundRobin;
  if (s == "greedy" || s == "adversarial_greedy") return Activation::Greedy;
  return std::nullopt;
}

std::optional<StopPolicy> parse_stop(std::string_view s) {
  if (s == "full" || s == "full_move") return StopPolicy::FullMove;
  if (s == "min" || s == "minimal") return StopPolicy::Minimal;
  if (s == "rand" || s == "random_fraction") return StopPolicy::RandomFraction;
  return std::nullopt;
}

namespace {

long parse_crash_entry(const json& e) {
  if (e.is_number_unsigned()) return static_cast<long>(e.get<std::uint64_t>());
  if (e.is_string()) {
    const std::string s = e.get<std::string>();
    if (s == "n") return 0;
    if (s.size() > 2 && s.rfind("n-", 0) == 0) {
      const long k = std::stol(s.substr(2));
      if (k > 0) return -k;
    }
  }
  throw InvalidInput("crash entry must be a count or \"n-k\": " + e.dump());
}

}  // namespace

SweepSpec SweepSpec::from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("sweep spec must be a JSON object");
  SweepSpec s;
  try {
    s.n = j.value("n", std::vector<std::size_t>{});
    for (const auto& a : j.value("adversaries", std::vector<std::string>{"sync"})) {
      const auto act = parse_activation(a);
      if (!act) throw InvalidInput("unknown adversary " + a);
      s.adversaries.push_back(*act);
    }
    for (const auto& a : j.value("stops", std::vector<std::string>{"full"})) {
      const auto st = parse_stop(a);
      if (!st) throw InvalidInput("unknown stop policy " + a);
      s.stops.push_back(*st);
    }
    if (j.contains("crashes")) {
      for (const auto& e : j["crashes"]) s.crashes.push_back(parse_crash_entry(e));
    } else {
      s.crashes = {0};
    }
    if (j.contains("seeds")) {
      const auto& sd = j["seeds"];
      if (sd.is_object()) {
        const auto start = sd.value("start", std::uint64_t{0});
        const auto count = sd.at("count").get<std::uint64_t>();
        for (std::uint64_t k = 0; k < count; ++k) s.seeds.push_back(start + k);
      } else {
        s.seeds = sd.get<std::vector<std::uint64_t>>();
      }
    }
    s.max_rounds = j.value("max_rounds", s.max_rounds);
    s.delta_fraction = j.value("delta", s.delta_fraction);
    s.activation_prob = j.value("p", s.activation_prob);
    s.crash_window = j.value("crash_window", s.crash_window);
    s.fairness_bound = j.value("fairness_bound", s.fairness_bound);
    s.eps = j.value("eps", s.eps);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad sweep spec: ") + e.what());
  }
  if (s.jobs().empty()) throw InvalidInput("sweep spec describes no runs");
  return s;
}

std::vector<SweepJob> SweepSpec::jobs() const {
  std::vector<SweepJob> out;
  for (std::size_t nn : n) {
    for (Activation a : adversaries) {
      for (StopPolicy st : stops) {
        for (long c : crashes) {
          const long k = c < 0 ? static_cast<long>(nn) + c : c;
          if (k < 0 || k >= static_cast<long>(nn)) continue;
          for (std::uint64_t seed : seeds) {
            out.push_back({out.size(), nn, a, st, static_cast<std::size_t>(k), seed});
          }
        }
      }
    }
  }
  return out;
}

JobSetup make_job(const SweepJob& job, const SweepSpec& spec) {
  // Seeding mixes every grid coordinate so no two cells share a stream.
  std::seed_seq seq{job.seed, static_cast<std::uint64_t>(job.n),
                    static_cast<std::uint64_t>(job.activation), static_cast<std::uint64_t>(job.stop),
                    static_cast<std::uint64_t>(job.crashes)};
  Rng rng(seq);
  JobSetup out;
  out.params.tol = {spec.eps, spec.eps};
  out.initial = random_points(job.n, rng, out.params.tol);
  const Configuration c(out.initial, out.params.tol);
  out.params.delta = spec.delta_fraction * c.diameter();
  out.params.max_rounds = spec.max_rounds;
  out.params.fairness_bound = spec.fairness_bound;
  out.params.seed = rng();

  out.adv.activation = job.activation;
  out.adv.activation_prob = spec.activation_prob;
  out.adv.stop = job.stop;
  std::vector<std::size_t> robots(job.n);
  std::iota(robots.begin(), robots.end(), 0);
  std::shuffle(robots.begin(), robots.end(), rng);
  std::uniform_int_distribution<std::uint64_t> when(0, std::max<std::uint64_t>(spec.crash_window, 1) - 1);
  for (std::size_t k = 0; k < job.crashes; ++k) out.adv.crash_schedule.push_back({when(rng), robots[k]});
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::vector<const SweepRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const SweepRow* a, const SweepRow* b) { return a->job.run_id < b->job.run_id; });
  std::ostringstream out;
  out << "run_id,n,adversary,stop,crashes,seed,outcome,rounds\n";
  for (const SweepRow* r : sorted) {
    out << r->job.run_id << ',' << r->job.n << ',' << to_string(r->job.activation) << ','
        << to_string(r->job.stop) << ',' << r->job.crashes << ',' << r->job.seed << ','
        << to_string(r->result.outcome.kind) << ',' << r->result.outcome.rounds << '\n';
  }
  return out.str();
}

}  // namespace gather
