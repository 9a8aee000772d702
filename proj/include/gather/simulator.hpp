#pragma once

// Semi-synchronous (ATOM) execution engine. Each round the adversary picks
// which live robots act; every active robot looks at a snapshot expressed in
// its own random frame, computes, and moves straight toward its destination
// until the adversary stops it (never before it has covered `delta`).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gather/configuration.hpp"
#include "gather/gathering.hpp"

namespace gather {

using Rng = std::mt19937_64;

enum class Activation { Synchronous, Random, RoundRobin, Greedy };
enum class StopPolicy { FullMove, Minimal, RandomFraction };

std::string_view to_string(Activation a);
std::string_view to_string(StopPolicy s);

struct CrashEvent {
  std::uint64_t round = 0;
  std::size_t robot = 0;
};

struct AdversarySpec {
  Activation activation = Activation::Synchronous;
  double activation_prob = 0.5;  // Random only
  StopPolicy stop = StopPolicy::FullMove;
  std::vector<CrashEvent> crash_schedule;
  // When nonempty, the robots crashed over a run must fit inside one of
  // these sets.
  std::vector<std::vector<std::size_t>> faulty_sets;
};

struct SimParams {
  double delta = 0.01;
  std::uint64_t max_rounds = 100000;
  Tolerance tol;
  int fairness_bound = 8;
  std::uint64_t seed = 0;
};

struct SimState {
  std::uint64_t round = 0;
  std::vector<Point> positions;
  std::vector<bool> crashed;
  std::vector<int> rounds_since_activation;
};

struct DecisionRecord {
  std::size_t robot = 0;
  Rule rule = Rule::Stay;
  Point dest;
};

struct TraceRecord {
  std::uint64_t round = 0;
  ClassTag cls = ClassTag::Multiple;
  std::vector<Point> positions;
  std::vector<bool> crashed;
  std::vector<std::size_t> activated;
  std::vector<DecisionRecord> decisions;
  std::vector<Point> stops;  // where each activated robot ended the round
  bool gathered = false;
};

// Orientation-preserving similarity between the global frame and a robot's
// private one.
struct LocalFrame {
  double rotation = 0.0;
  double scale = 1.0;
  Point translation;

  Point to_local(Point p) const;
  Point to_global(Point p) const;
  static LocalFrame random(Rng& rng, double extent);
};

enum class OutcomeKind { Gathered, MaxRoundsExceeded, InvariantViolation };
std::string_view to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::MaxRoundsExceeded;
  std::uint64_t rounds = 0;
  std::string detail;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  Outcome outcome;
  std::size_t crashes = 0;
};

struct StepResult {
  SimState next;
  TraceRecord record;
};

SimState initial_state(const Configuration& initial);

// One round. Throws InvariantViolation when the current configuration breaks
// a protocol guarantee (bivalent, more than one stationary location, a
// local-frame decision that disagrees with the global one).
StepResult step(const SimState& state, const AdversarySpec& adv, const SimParams& params, Rng& rng);

// Runs until the live robots are gathered or max_rounds elapse. Throws
// TooFewRobots, BivalentInitial, or InvalidInput for a bad crash schedule.
RunResult run(const Configuration& initial, const AdversarySpec& adv, const SimParams& params);

struct TransitionContext {
  std::vector<std::size_t> activated;
  std::vector<bool> crashed;  // after the round's crashes
  double delta = 0.0;
};

// Class-transition guarantees between consecutive rounds. Returns a
// description of the first violated guarantee, or nullopt.
std::optional<std::string> check_transition(const Configuration& prev, const ConfigClass& prev_cls,
                                            const Configuration& next, const ConfigClass& next_cls,
                                            const TransitionContext& ctx);

// Wait-free condition: at most one occupied location is told to stay.
std::optional<std::string> check_wait_free(const Configuration& c, const ConfigClass& cls);

}  // namespace gather
