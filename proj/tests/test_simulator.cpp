#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gather/errors.hpp"
#include "gather/simulator.hpp"
#include "gather/symmetry.hpp"
#include "support.hpp"

using namespace gather;
using namespace gather::testing;

namespace {

const std::vector<Point> kSquare{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

Configuration make(std::vector<Point> p) { return Configuration(std::move(p)); }

SimParams params_with(double delta, std::uint64_t seed = 1, std::uint64_t max_rounds = 10000) {
  SimParams p;
  p.delta = delta;
  p.seed = seed;
  p.max_rounds = max_rounds;
  return p;
}

AdversarySpec adversary(Activation a, StopPolicy s) {
  AdversarySpec adv;
  adv.activation = a;
  adv.stop = s;
  return adv;
}

struct RandomRun {
  Configuration initial;
  AdversarySpec adv;
  SimParams params;
};

// Non-bivalent start with a random adversary and crash schedule.
RandomRun random_run(Rng& rng) {
  std::vector<Point> pts;
  do {
    pts = mixed(rng, 9);
  } while (pts.size() < 3 || classify(Configuration(pts)).tag == ClassTag::Bivalent);
  const Configuration c(pts);
  AdversarySpec adv = adversary(static_cast<Activation>(pick(rng, 0, 3)), static_cast<StopPolicy>(pick(rng, 0, 2)));
  const std::size_t crashes = pick(rng, 0, pts.size() - 1);
  std::vector<std::size_t> robots(pts.size());
  for (std::size_t i = 0; i < robots.size(); ++i) robots[i] = i;
  std::shuffle(robots.begin(), robots.end(), rng);
  for (std::size_t k = 0; k < crashes; ++k) adv.crash_schedule.push_back({pick(rng, 0, 15), robots[k]});
  return {c, adv, params_with(0.02 * std::max(c.diameter(), 1e-3), rng(), 3000)};
}

}  // namespace

TEST(Step, SquareFullMoveGathersInOneRound) {
  const Configuration c = make(kSquare);
  Rng rng(1);
  const auto r = step(initial_state(c), adversary(Activation::Synchronous, StopPolicy::FullMove), params_with(1.5), rng);
  for (const Point& p : r.next.positions) EXPECT_EQ(p, (Point{0, 0}));
  EXPECT_EQ(r.record.cls, ClassTag::QRegular);
  EXPECT_EQ(r.record.activated.size(), 4u);
  const Configuration next(r.next.positions);
  EXPECT_TRUE(is_gathered(next, {true, true, true, true}, std::vector<Point>{}));
}

TEST(Step, SquareMinimalMoveStaysQuasiRegular) {
  const Configuration c = make(kSquare);
  Rng rng(2);
  const auto r = step(initial_state(c), adversary(Activation::Synchronous, StopPolicy::Minimal), params_with(0.1), rng);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(dist(r.next.positions[i], kSquare[i]), 0.1, 1e-12);
    EXPECT_NEAR(dist(r.next.positions[i], {0, 0}), std::sqrt(2.0) - 0.1, 1e-12);
  }
  const Configuration next(r.next.positions);
  const auto cls = classify(next);
  EXPECT_EQ(cls.tag, ClassTag::QRegular);
  EXPECT_LE(dist(*cls.weber, {0, 0}), 1e-12);
  EXPECT_LE(dist(weber_numeric(next), {0, 0}), 1e-12);
}

TEST(Step, EndpointActivationLeavesTwoWeberLine) {
  const Configuration c = make({{0, 0}, {1, 0}, {3, 0}, {4, 0}});
  Rng rng(3);
  // Round robin at round 0 activates robot 0 only, which is an endpoint.
  const auto r = step(initial_state(c), adversary(Activation::RoundRobin, StopPolicy::FullMove), params_with(0.5), rng);
  ASSERT_EQ(r.record.activated, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.record.decisions[0].rule, Rule::L2WRotate);
  const Configuration next(r.next.positions);
  EXPECT_FALSE(next.is_linear());
  const auto tag = classify(next).tag;
  EXPECT_NE(tag, ClassTag::Bivalent);
  EXPECT_NE(tag, ClassTag::L2W);
}

TEST(Step, InteriorActivationKeepsTheEndpoints) {
  const Configuration c = make({{0, 0}, {1, 0}, {3, 0}, {4, 0}});
  Rng rng(4);
  SimState s = initial_state(c);
  s.round = 1;  // round robin picks robot 1
  const auto r = step(s, adversary(Activation::RoundRobin, StopPolicy::Minimal), params_with(0.25), rng);
  ASSERT_EQ(r.record.activated, (std::vector<std::size_t>{1}));
  const Configuration next(r.next.positions);
  const auto prev_cls = classify(c), next_cls = classify(next);
  ASSERT_EQ(next_cls.tag, ClassTag::L2W);
  EXPECT_EQ(*next_cls.endpoints, *prev_cls.endpoints);
  EXPECT_FALSE(check_transition(c, prev_cls, next, next_cls, {r.record.activated, r.next.crashed, 0.25}));
}

TEST(Run, FiveRobotsGather) {
  Rng rng(5);
  std::vector<Point> pts;
  do {
    pts = generic(rng, 5);
  } while (Configuration(pts).is_linear());
  const auto res = run(Configuration(pts), adversary(Activation::Synchronous, StopPolicy::FullMove),
                       params_with(0.01));
  EXPECT_EQ(res.outcome.kind, OutcomeKind::Gathered) << res.outcome.detail;
  ASSERT_FALSE(res.trace.empty());
  EXPECT_TRUE(res.trace.back().gathered);
  EXPECT_EQ(res.trace.back().round, res.outcome.rounds);
}

TEST(Run, SquareTraceHasTwoRecords) {
  const auto res = run(make(kSquare), adversary(Activation::Synchronous, StopPolicy::FullMove), params_with(2.0));
  EXPECT_EQ(res.outcome.kind, OutcomeKind::Gathered);
  EXPECT_EQ(res.outcome.rounds, 1u);
  ASSERT_EQ(res.trace.size(), 2u);
  EXPECT_FALSE(res.trace[0].gathered);
  EXPECT_TRUE(res.trace[1].gathered);
}

TEST(Run, OneLiveRobotSuffices) {
  AdversarySpec adv = adversary(Activation::Random, StopPolicy::Minimal);
  adv.crash_schedule = {{0, 1}, {0, 2}, {0, 3}};
  const auto res = run(make({{0, 0}, {3, 0}, {0, 4}, {1, 1}}), adv, params_with(0.1));
  EXPECT_EQ(res.outcome.kind, OutcomeKind::Gathered) << res.outcome.detail;
  EXPECT_EQ(res.crashes, 3u);
  EXPECT_EQ(res.trace.back().positions[0], (Point{1, 1}));
}

TEST(Run, RejectsBadInput) {
  const AdversarySpec sync = adversary(Activation::Synchronous, StopPolicy::FullMove);
  EXPECT_THROW(run(make({{0, 0}, {0, 0}, {1, 0}, {1, 0}}), sync, params_with(0.1)), BivalentInitial);
  EXPECT_THROW(run(make({{0, 0}, {1, 0}}), sync, params_with(0.1)), TooFewRobots);
  EXPECT_THROW(run(make(kSquare), sync, params_with(0.0)), InvalidInput);
  SimParams unfair = params_with(0.1);
  unfair.fairness_bound = 0;
  EXPECT_THROW(run(make(kSquare), sync, unfair), InvalidInput);

  AdversarySpec all = sync;
  all.crash_schedule = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(run(make(kSquare), all, params_with(0.1)), InvalidInput);
  AdversarySpec missing = sync;
  missing.crash_schedule = {{0, 7}};
  EXPECT_THROW(run(make(kSquare), missing, params_with(0.1)), InvalidInput);
  AdversarySpec outside = sync;
  outside.crash_schedule = {{0, 0}, {0, 2}};
  outside.faulty_sets = {{0, 1}, {2, 3}};
  EXPECT_THROW(run(make(kSquare), outside, params_with(0.1)), InvalidInput);
  outside.faulty_sets.push_back({0, 2});
  EXPECT_NO_THROW(run(make(kSquare), outside, params_with(0.1)));
  AdversarySpec prob = adversary(Activation::Random, StopPolicy::FullMove);
  prob.activation_prob = 0.0;
  EXPECT_THROW(run(make(kSquare), prob, params_with(0.1)), InvalidInput);
}

TEST(Run, StopsAtMaxRounds) {
  const auto res = run(make({{0, 0}, {10, 0}, {0, 7}, {1, 1}}), adversary(Activation::Synchronous, StopPolicy::Minimal),
                       params_with(0.01, 1, 5));
  EXPECT_EQ(res.outcome.kind, OutcomeKind::MaxRoundsExceeded);
  EXPECT_EQ(res.trace.size(), 5u);
}

TEST(Run, RandomRunsKeepTheModelGuarantees) {
  Rng rng(6);
  for (int k = 0; k < 400; ++k) {
    const RandomRun rr = random_run(rng);
    const auto res = run(rr.initial, rr.adv, rr.params);
    ASSERT_EQ(res.outcome.kind, OutcomeKind::Gathered) << "run " << k << ": " << res.outcome.detail;
    const std::size_t n = rr.initial.size();
    const double slack = 1e-9 * std::max(rr.initial.diameter(), 1.0);
    std::vector<int> idle(n, 0);
    for (std::size_t t = 0; t < res.trace.size(); ++t) {
      const auto& rec = res.trace[t];
      EXPECT_NE(rec.cls, ClassTag::Bivalent);
      if (t + 1 == res.trace.size()) break;
      const auto& after = res.trace[t + 1];
      for (std::size_t i = 0; i < n; ++i) {
        // Crash freeze and visibility.
        if (rec.crashed[i]) {
          EXPECT_EQ(after.positions[i], rec.positions[i]);
          EXPECT_TRUE(after.crashed[i]);
        }
        ASSERT_EQ(after.positions.size(), n);
      }
      std::vector<bool> active(n, false);
      for (std::size_t a = 0; a < rec.activated.size(); ++a) {
        const std::size_t i = rec.activated[a];
        active[i] = true;
        EXPECT_FALSE(rec.crashed[i]);
        const Point from = rec.positions[i];
        const auto& d = rec.decisions[a];
        EXPECT_EQ(d.robot, i);
        EXPECT_EQ(rec.stops[a], after.positions[i]);
        if (d.rule == Rule::Stay) {
          EXPECT_EQ(rec.stops[a], from);
          continue;
        }
        // Movement floor, and the stop lies on the way to the destination.
        const double full = dist(from, d.dest);
        EXPECT_GE(dist(from, rec.stops[a]) + slack, std::min(rr.params.delta, full));
        EXPECT_LE(dist(from, rec.stops[a]) + dist(rec.stops[a], d.dest), full + slack);
      }
      // Fairness: no live robot waits fairness_bound rounds in a row.
      for (std::size_t i = 0; i < n; ++i) {
        if (rec.crashed[i]) continue;
        idle[i] = active[i] ? 0 : idle[i] + 1;
        EXPECT_LT(idle[i], rr.params.fairness_bound);
      }
      // Robots that did not act do not move.
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i] && !rec.crashed[i]) EXPECT_LE(dist(after.positions[i], rec.positions[i]), slack);
      }
    }
  }
}

TEST(Run, Deterministic) {
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const RandomRun rr = random_run(rng);
    const auto a = run(rr.initial, rr.adv, rr.params);
    const auto b = run(rr.initial, rr.adv, rr.params);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    EXPECT_EQ(a.outcome.rounds, b.outcome.rounds);
    for (std::size_t t = 0; t < a.trace.size(); ++t) {
      EXPECT_EQ(a.trace[t].positions, b.trace[t].positions);
      EXPECT_EQ(a.trace[t].activated, b.trace[t].activated);
      EXPECT_EQ(a.trace[t].stops, b.trace[t].stops);
    }
  }
}

TEST(LocalFrame, RoundTrip) {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const LocalFrame f = LocalFrame::random(rng, 5.0);
    EXPECT_GT(f.scale, 0);
    const Point p{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    EXPECT_LE(dist(f.to_global(f.to_local(p)), p), 1e-12);
  }
}

TEST(CheckTransition, MultipleKeepsItsElectedPoint) {
  const Configuration prev = make({{0, 0}, {0, 0}, {4, 0}, {1, 5}});
  const Configuration same = make({{0, 0}, {0, 0}, {3, 0}, {1, 5}});
  const Configuration moved = make({{0, 0}, {1, 5}, {1, 5}, {1, 5}});
  const TransitionContext ctx{{2}, {false, false, false, false}, 0.5};
  EXPECT_FALSE(check_transition(prev, classify(prev), same, classify(same), ctx));
  EXPECT_TRUE(check_transition(prev, classify(prev), moved, classify(moved), ctx));
}

TEST(CheckTransition, AsymmetricPotentialMustImprove) {
  const Configuration prev = make({{0, 0}, {3, 0}, {0, 4}, {1, 1}});
  const Configuration closer = make({{0.5, 0.5}, {3, 0}, {0, 4}, {1, 1}});
  const Configuration farther = make({{-0.5, -0.5}, {3, 0}, {0, 4}, {1, 1}});
  ASSERT_EQ(classify(closer).tag, ClassTag::Asymmetric);
  ASSERT_EQ(classify(farther).tag, ClassTag::Asymmetric);
  const TransitionContext ctx{{0}, {false, false, false, false}, 0.5};
  EXPECT_FALSE(check_transition(prev, classify(prev), closer, classify(closer), ctx));
  EXPECT_TRUE(check_transition(prev, classify(prev), farther, classify(farther), ctx));
}

TEST(CheckTransition, ForbiddenClassChanges) {
  const Configuration line = make({{0, 0}, {1, 0}, {3, 0}, {4, 0}});
  const Configuration biv = make({{0, 0}, {0, 0}, {4, 0}, {4, 0}});
  const Configuration square = make(kSquare);
  const Configuration asym = make({{0, 0}, {3, 0}, {0, 4}, {1, 1}});
  const TransitionContext endpoint{{0}, {false, false, false, false}, 0.1};
  EXPECT_TRUE(check_transition(line, classify(line), biv, classify(biv), endpoint));
  EXPECT_TRUE(check_transition(line, classify(line), line, classify(line), endpoint));
  EXPECT_TRUE(check_transition(square, classify(square), asym, classify(asym), endpoint));
  EXPECT_TRUE(check_transition(asym, classify(asym), line, classify(line), endpoint));
}

TEST(CheckWaitFree, HoldsOnClassifiableConfigurations) {
  Rng rng(9);
  for (int k = 0; k < 500; ++k) {
    const Configuration c(mixed(rng));
    const auto cls = classify(c);
    if (cls.tag == ClassTag::Bivalent) {
      EXPECT_TRUE(check_wait_free(c, cls).has_value());
    } else {
      EXPECT_FALSE(check_wait_free(c, cls).has_value());
    }
  }
}
