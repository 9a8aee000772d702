#include "gather/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gather/errors.hpp"
#include "gather/symmetry.hpp"

namespace gather {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Synchronous: return "sync";
    case Activation::Random: return "random";
    case Activation::RoundRobin: return "rr";
    case Activation::Greedy: return "greedy";
  }
  return "?";
}

std::string_view to_string(StopPolicy s) {
  switch (s) {
    case StopPolicy::FullMove: return "full";
    case StopPolicy::Minimal: return "min";
    case StopPolicy::RandomFraction: return "rand";
  }
  return "?";
}

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Gathered: return "Gathered";
    case OutcomeKind::MaxRoundsExceeded: return "MaxRoundsExceeded";
    case OutcomeKind::InvariantViolation: return "InvariantViolation";
  }
  return "?";
}

Point LocalFrame::to_local(Point p) const {
  const double cs = std::cos(rotation);
  const double sn = std::sin(rotation);
  return {scale * (cs * p.x - sn * p.y) + translation.x,
          scale * (sn * p.x + cs * p.y) + translation.y};
}

Point LocalFrame::to_global(Point q) const {
  const double cs = std::cos(rotation);
  const double sn = std::sin(rotation);
  const Point d = (1.0 / scale) * (q - translation);
  return {cs * d.x + sn * d.y, -sn * d.x + cs * d.y};
}

LocalFrame LocalFrame::random(Rng& rng, double extent) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> log_scale(std::log(0.25), std::log(4.0));
  std::uniform_real_distribution<double> shift(-extent, extent);
  LocalFrame f;
  f.rotation = angle(rng);
  f.scale = std::exp(log_scale(rng));
  f.translation.x = shift(rng);
  f.translation.y = shift(rng);
  return f;
}

namespace {

// Robots closer than the coincidence slack are put on exactly one point,
// preferring a crashed robot's position, then one that did not move.
void canonicalize(std::vector<Point>& positions, const std::vector<bool>& crashed,
                  const std::vector<bool>& moved, const Tolerance& tol) {
  const Configuration c(positions, tol);
  for (const auto& loc : c.locations()) {
    if (loc.indices.size() < 2) continue;
    std::size_t rep = loc.indices.front();
    int best = 3;
    for (std::size_t i : loc.indices) {
      const int rank = crashed[i] ? 0 : (!moved[i] ? 1 : 2);
      if (rank < best) {
        best = rank;
        rep = i;
      }
    }
    const Point p = positions[rep];
    for (std::size_t i : loc.indices) positions[i] = p;
  }
}

std::vector<bool> live_mask(const std::vector<bool>& crashed) {
  std::vector<bool> live(crashed.size());
  for (std::size_t i = 0; i < crashed.size(); ++i) live[i] = !crashed[i];
  return live;
}

double magnitude(const Configuration& c) {
  double m = c.diameter();
  for (const Point& p : c.points()) m = std::max({m, std::fabs(p.x), std::fabs(p.y)});
  return m;
}

Point stop_point(Point pos, Point dest, double delta, StopPolicy policy, Rng& rng, bool& reached) {
  const double len = dist(pos, dest);
  reached = true;
  if (len <= delta || policy == StopPolicy::FullMove) return dest;
  double t = 1.0;
  if (policy == StopPolicy::Minimal) {
    t = delta / len;
  } else {
    std::uniform_real_distribution<double> frac(delta / len, 1.0);
    t = frac(rng);
  }
  if (t >= 1.0) return dest;
  reached = false;
  return pos + t * (dest - pos);
}

// Adversarial proxy for "least progress": most live locations, then the
// widest spread of live robots around their centroid.
std::pair<std::size_t, double> spread(const std::vector<Point>& pos, const std::vector<bool>& crashed,
                                      const Tolerance& tol) {
  std::vector<Point> live;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (!crashed[i]) live.push_back(pos[i]);
  }
  const Configuration c(live, tol);
  Point g{0.0, 0.0};
  for (const Point& p : live) g = g + (1.0 / live.size()) * p;
  double s = 0.0;
  for (const Point& p : live) s += dist(p, g);
  return {c.locations().size(), s};
}

struct Planned {
  std::vector<Point> positions;
  std::vector<bool> moved;
};

Planned apply_moves(const SimState& state, const std::vector<bool>& crashed,
                    const std::vector<std::size_t>& active, const std::vector<Point>& dests,
                    const std::vector<bool>& stays, const Configuration& current,
                    const std::vector<ComputeDecision>& decisions, double delta, StopPolicy policy,
                    const Tolerance& tol, Rng& rng) {
  Planned out{state.positions, std::vector<bool>(state.positions.size(), false)};
  std::vector<Point> targets;
  for (const auto& d : decisions) {
    if (d.rule != Rule::Stay) targets.push_back(d.destination);
  }
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (stays[k]) continue;
    const std::size_t i = active[k];
    bool reached = false;
    Point p = stop_point(state.positions[i], dests[k], delta, policy, rng, reached);
    if (reached) {
      // Robots bound for one point land on exactly that point.
      if (const auto loc = current.find_location(p)) {
        p = current.locations()[*loc].location;
      } else {
        const auto hit = std::find_if(targets.begin(), targets.end(),
                                      [&](Point t) { return current.coincident(t, p); });
        if (hit != targets.end()) {
          p = *hit;
        } else {
          targets.push_back(p);
        }
      }
    }
    out.positions[i] = p;
    out.moved[i] = !(p == state.positions[i]);
  }
  canonicalize(out.positions, crashed, out.moved, tol);
  return out;
}

struct Evaluated {
  Configuration config;
  ConfigClass cls;
};

StepResult step_impl(const SimState& state, const Configuration& c, const ConfigClass& cls,
                     const AdversarySpec& adv, const SimParams& params, Rng& rng) {
  if (cls.tag == ClassTag::Bivalent) {
    throw InvariantViolation("bivalent configuration reached at round " +
                             std::to_string(state.round));
  }
  if (auto bad = check_wait_free(c, cls)) throw InvariantViolation(*bad);

  const std::size_t n = state.positions.size();
  const auto decisions = decide_locations(c, cls);

  TraceRecord rec;
  rec.round = state.round;
  rec.cls = cls.tag;
  rec.positions = state.positions;
  {
    std::vector<Point> moving;
    for (std::size_t l = 0; l < decisions.size(); ++l) {
      if (decisions[l].rule != Rule::Stay) moving.push_back(c.locations()[l].location);
    }
    rec.gathered = is_gathered(c, live_mask(state.crashed), moving);
  }

  SimState next = state;
  ++next.round;
  for (const CrashEvent& ev : adv.crash_schedule) {
    if (ev.round == state.round && ev.robot < n) next.crashed[ev.robot] = true;
  }
  rec.crashed = next.crashed;

  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i) {
    if (!next.crashed[i]) live.push_back(i);
  }
  std::set<std::size_t> chosen;
  for (std::size_t i : live) {
    if (state.rounds_since_activation[i] >= params.fairness_bound - 1) chosen.insert(i);
  }
  const std::set<std::size_t> forced = chosen;

  switch (adv.activation) {
    case Activation::Synchronous:
      chosen.insert(live.begin(), live.end());
      break;
    case Activation::Random: {
      std::bernoulli_distribution pick(adv.activation_prob);
      for (std::size_t i : live) {
        if (pick(rng)) chosen.insert(i);
      }
      break;
    }
    case Activation::RoundRobin: {
      if (!live.empty()) {
        const std::size_t start = state.round % n;
        const auto it = std::lower_bound(live.begin(), live.end(), start);
        chosen.insert(it == live.end() ? live.front() : *it);
      }
      break;
    }
    case Activation::Greedy: {
      std::vector<std::set<std::size_t>> cands;
      for (std::size_t i : live) cands.push_back({i});
      cands.emplace_back(live.begin(), live.end());
      std::bernoulli_distribution coin(0.5);
      for (int k = 0; k < 4; ++k) {
        std::set<std::size_t> s;
        for (std::size_t i : live) {
          if (coin(rng)) s.insert(i);
        }
        if (!s.empty()) cands.push_back(std::move(s));
      }
      std::pair<std::size_t, double> worst{0, -1.0};
      std::set<std::size_t> pick;
      for (auto& cand : cands) {
        cand.insert(forced.begin(), forced.end());
        std::vector<std::size_t> active(cand.begin(), cand.end());
        std::vector<Point> dests;
        std::vector<bool> stays;
        for (std::size_t i : active) {
          const auto& d = decisions[c.location_of(i)];
          dests.push_back(d.destination);
          stays.push_back(d.rule == Rule::Stay);
        }
        Rng scratch(0);
        const Planned p = apply_moves(state, next.crashed, active, dests, stays, c, decisions, params.delta,
                                      StopPolicy::Minimal, params.tol, scratch);
        const auto score = spread(p.positions, next.crashed, params.tol);
        if (score > worst) {
          worst = score;
          pick = cand;
        }
      }
      chosen = std::move(pick);
      break;
    }
  }

  rec.activated.assign(chosen.begin(), chosen.end());
  const double extent = std::max(c.diameter(), 1.0);
  const double frame_slack = 1e-9 * std::max(magnitude(c), 1e-300);
  std::vector<Point> dests;
  std::vector<bool> stays;
  for (std::size_t i : rec.activated) {
    const LocalFrame frame = LocalFrame::random(rng, extent);
    std::vector<Point> local;
    local.reserve(n);
    for (const Point& p : state.positions) local.push_back(frame.to_local(p));
    const Configuration lc(std::move(local), params.tol);
    const ComputeDecision d = compute(lc, i);
    const Point dest = d.rule == Rule::Stay ? state.positions[i] : frame.to_global(d.destination);
    const ComputeDecision& global = decisions[c.location_of(i)];
    if (d.rule != global.rule || dist(dest, global.destination) > frame_slack) {
      throw InvariantViolation("robot " + std::to_string(i) + " decided " +
                               std::string(to_string(d.rule)) + " in its own frame but " +
                               std::string(to_string(global.rule)) + " globally");
    }
    dests.push_back(dest);
    stays.push_back(d.rule == Rule::Stay);
    rec.decisions.push_back({i, d.rule, dest});
  }

  const Planned moved = apply_moves(state, next.crashed, rec.activated, dests, stays, c,
                                    decisions, params.delta, adv.stop, params.tol, rng);
  next.positions = moved.positions;
  for (std::size_t i : rec.activated) rec.stops.push_back(next.positions[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (next.crashed[i]) continue;
    next.rounds_since_activation[i] = chosen.contains(i) ? 0 : state.rounds_since_activation[i] + 1;
  }
  return {std::move(next), std::move(rec)};
}

void validate_schedule(const AdversarySpec& adv, std::size_t n) {
  std::set<std::size_t> victims;
  for (const CrashEvent& ev : adv.crash_schedule) {
    if (ev.robot >= n) throw InvalidInput("crash schedule names robot " + std::to_string(ev.robot));
    victims.insert(ev.robot);
  }
  if (victims.size() >= n) throw InvalidInput("at least one robot must never crash");
  if (!adv.faulty_sets.empty() && !victims.empty()) {
    const bool fits = std::any_of(adv.faulty_sets.begin(), adv.faulty_sets.end(), [&](const auto& s) {
      return std::all_of(victims.begin(), victims.end(), [&](std::size_t v) {
        return std::find(s.begin(), s.end(), v) != s.end();
      });
    });
    if (!fits) throw InvalidInput("crash schedule is not contained in any faulty set");
  }
  if (!(adv.activation_prob > 0.0 && adv.activation_prob <= 1.0)) {
    throw InvalidInput("activation probability must lie in (0, 1]");
  }
}

}  // namespace

SimState initial_state(const Configuration& initial) {
  SimState s;
  s.positions.assign(initial.points().begin(), initial.points().end());
  s.crashed.assign(s.positions.size(), false);
  s.rounds_since_activation.assign(s.positions.size(), 0);
  canonicalize(s.positions, s.crashed, std::vector<bool>(s.positions.size(), false),
               initial.tolerance());
  return s;
}

StepResult step(const SimState& state, const AdversarySpec& adv, const SimParams& params, Rng& rng) {
  const Configuration c(state.positions, params.tol);
  return step_impl(state, c, classify(c), adv, params, rng);
}

std::optional<std::string> check_wait_free(const Configuration& c, const ConfigClass& cls) {
  if (cls.tag == ClassTag::Bivalent) return "bivalent configuration has no defined moves";
  const auto decisions = decide_locations(c, cls);
  const auto stationary = std::count_if(decisions.begin(), decisions.end(),
                                        [](const ComputeDecision& d) { return d.rule == Rule::Stay; });
  if (stationary > 1) {
    return "wait-free condition broken: " + std::to_string(stationary) +
           " stationary locations in class " + std::string(to_string(cls.tag));
  }
  return std::nullopt;
}

namespace {

// Weber point of a configuration known to have a unique one, or nullopt.
std::optional<Point> unique_weber(const Configuration& c, const ConfigClass& cls) {
  if (cls.weber) return cls.weber;
  if (c.is_linear()) {
    const auto [lo, hi] = median_interval(c);
    if (!c.coincident(lo, hi)) return std::nullopt;
    return lo;
  }
  return weber_numeric(c);
}

}  // namespace

std::optional<std::string> check_transition(const Configuration& prev, const ConfigClass& prev_cls,
                                            const Configuration& next, const ConfigClass& next_cls,
                                            const TransitionContext& ctx) {
  const auto tag = [](const ConfigClass& k) { return std::string(to_string(k.tag)); };
  const std::string arrow = tag(prev_cls) + "->" + tag(next_cls);
  if (next_cls.tag == ClassTag::Bivalent) return "bivalent configuration reached (" + arrow + ")";

  switch (prev_cls.tag) {
    case ClassTag::Bivalent:
      return "transition out of a bivalent configuration";
    case ClassTag::Multiple:
      if (next_cls.tag != ClassTag::Multiple) return "M left its class (" + arrow + ")";
      if (!prev.coincident(*prev_cls.elected, *next_cls.elected)) return "M changed its elected point";
      return std::nullopt;
    case ClassTag::L1W: {
      if (next_cls.tag != ClassTag::Multiple && next_cls.tag != ClassTag::L1W) {
        return "L1W reached a forbidden class (" + arrow + ")";
      }
      if (!next.is_linear()) return "L1W became non-linear";
      const auto w = unique_weber(next, next_cls);
      if (!w || !prev.coincident(*w, *prev_cls.weber)) return "L1W moved its Weber point";
      return std::nullopt;
    }
    case ClassTag::QRegular: {
      if (next_cls.tag != ClassTag::Multiple && next_cls.tag != ClassTag::L1W &&
          next_cls.tag != ClassTag::QRegular) {
        return "QR reached a forbidden class (" + arrow + ")";
      }
      const auto w = unique_weber(next, next_cls);
      if (!w || dist(*w, *prev_cls.weber) > 1e-6 * prev.diameter()) return "QR moved its Weber point";
      return std::nullopt;
    }
    case ClassTag::Asymmetric: {
      if (next_cls.tag == ClassTag::L2W) return "A reached L2W";
      if (next_cls.tag != ClassTag::Asymmetric) return std::nullopt;
      if (std::equal(prev.points().begin(), prev.points().end(), next.points().begin())) {
        return std::nullopt;
      }
      const PotentialValue before = potential(prev, prev_cls);
      const PotentialValue after = potential(next, next_cls);
      if (after.mult > before.mult) return std::nullopt;
      if (after.mult < before.mult) return "A potential multiplicity dropped";
      const double slack = 1e-9 * prev.diameter() * static_cast<double>(prev.size());
      if (after.sum() <= before.sum() - ctx.delta + slack) return std::nullopt;
      // A mover that reached the elected point raises the multiplicity; any
      // other mover covers at least delta, unless its whole trip was shorter.
      return "A potential did not progress (sum " + std::to_string(before.sum()) + " -> " +
             std::to_string(after.sum()) + ")";
    }
    case ClassTag::L2W: {
      const auto& ends = *prev_cls.endpoints;
      const bool endpoint_moved = std::any_of(ctx.activated.begin(), ctx.activated.end(), [&](std::size_t i) {
        return prev.coincident(prev[i], ends[0]) || prev.coincident(prev[i], ends[1]);
      });
      if (endpoint_moved && next_cls.tag == ClassTag::L2W) {
        return "L2W stayed L2W although an endpoint robot moved";
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

RunResult run(const Configuration& initial, const AdversarySpec& adv, const SimParams& params) {
  const std::size_t n = initial.size();
  if (n < 3) throw TooFewRobots("gathering needs at least three robots");
  if (!(params.delta > 0.0)) throw InvalidInput("delta must be positive");
  if (params.fairness_bound < 1) throw InvalidInput("fairness bound must be at least 1");
  validate_schedule(adv, n);
  const Configuration start(std::vector<Point>(initial.points().begin(), initial.points().end()),
                            params.tol);
  if (classify(start).tag == ClassTag::Bivalent) {
    throw BivalentInitial("no deterministic algorithm gathers from a bivalent configuration");
  }

  RunResult result;
  {
    std::set<std::size_t> victims;
    for (const auto& ev : adv.crash_schedule) victims.insert(ev.robot);
    result.crashes = victims.size();
  }
  Rng rng(params.seed);
  SimState state = initial_state(start);
  Configuration current(state.positions, params.tol);
  ConfigClass cls = classify(current);

  while (true) {
    if (cls.tag != ClassTag::Bivalent) {
      const auto moving = moving_set(current, cls);
      if (is_gathered(current, live_mask(state.crashed), moving)) {
        TraceRecord rec;
        rec.round = state.round;
        rec.cls = cls.tag;
        rec.positions = state.positions;
        rec.crashed = state.crashed;
        rec.gathered = true;
        result.trace.push_back(std::move(rec));
        result.outcome = {OutcomeKind::Gathered, state.round, {}};
        return result;
      }
    }
    if (state.round >= params.max_rounds) {
      result.outcome = {OutcomeKind::MaxRoundsExceeded, state.round, {}};
      return result;
    }
    StepResult sr;
    try {
      sr = step_impl(state, current, cls, adv, params, rng);
    } catch (const InvariantViolation& e) {
      result.outcome = {OutcomeKind::InvariantViolation, state.round, e.what()};
      return result;
    }
    Configuration next(sr.next.positions, params.tol);
    ConfigClass next_cls;
    try {
      next_cls = classify(next);
    } catch (const ClassificationError& e) {
      result.trace.push_back(std::move(sr.record));
      result.outcome = {OutcomeKind::InvariantViolation, sr.next.round, e.what()};
      return result;
    }
    const TransitionContext ctx{sr.record.activated, sr.next.crashed, params.delta};
    const auto bad = check_transition(current, cls, next, next_cls, ctx);
    result.trace.push_back(std::move(sr.record));
    if (bad) {
      result.outcome = {OutcomeKind::InvariantViolation, sr.next.round, *bad};
      return result;
    }
    state = std::move(sr.next);
    current = std::move(next);
    cls = next_cls;
  }
}

}  // namespace gather
