#pragma once

// Batch runs: a cartesian grid of robot counts, adversaries, stop policies,
// crash counts and seeds. Every job is fully determined by its fields, so a
// row of the output can be replayed on its own.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gather/simulator.hpp"

namespace gather {

std::optional<Activation> parse_activation(std::string_view s);
std::optional<StopPolicy> parse_stop(std::string_view s);

struct SweepJob {
  std::size_t run_id = 0;
  std::size_t n = 3;
  Activation activation = Activation::Synchronous;
  StopPolicy stop = StopPolicy::FullMove;
  std::size_t crashes = 0;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  std::vector<std::size_t> n;
  std::vector<Activation> adversaries;
  std::vector<StopPolicy> stops;
  // Each entry is a count or an offset from n ("n-2" is stored as -2).
  std::vector<long> crashes;
  std::vector<std::uint64_t> seeds;
  std::uint64_t max_rounds = 10000;
  double delta_fraction = 0.01;  // of the initial diameter
  double activation_prob = 0.5;
  std::uint64_t crash_window = 20;  // crash rounds drawn from [0, crash_window)
  int fairness_bound = 8;
  double eps = 1e-9;

  // Throws InvalidInput on unknown names or an empty grid.
  static SweepSpec from_json(const nlohmann::json& j);
  std::vector<SweepJob> jobs() const;
};

struct JobSetup {
  std::vector<Point> initial;
  AdversarySpec adv;
  SimParams params;
};

JobSetup make_job(const SweepJob& job, const SweepSpec& spec);

struct SweepRow {
  SweepJob job;
  RunResult result;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace gather
