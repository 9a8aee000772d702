#include "gather/gathering.hpp"

#include <numbers>

#include "gather/errors.hpp"
#include "gather/symmetry.hpp"

namespace gather {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::MDirect: return "M_direct";
    case Rule::MSidestep: return "M_sidestep";
    case Rule::WeberMove: return "WeberMove";
    case Rule::AElect: return "A_elect";
    case Rule::L2WCenter: return "L2W_center";
    case Rule::L2WRotate: return "L2W_rotate";
    case Rule::Stay: return "Stay";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view s) {
  for (Rule r : {Rule::MDirect, Rule::MSidestep, Rule::WeberMove, Rule::AElect, Rule::L2WCenter,
                 Rule::L2WRotate, Rule::Stay}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

namespace {

ComputeDecision toward(const Configuration& c, Point self, Point dest, Rule rule,
                       std::optional<Point> elected = std::nullopt) {
  if (c.coincident(self, dest)) return {self, Rule::Stay, elected};
  return {dest, rule, elected};
}

ComputeDecision multiple_move(const Configuration& c, std::size_t self, Point elected) {
  const auto locs = c.locations();
  const Point r = locs[c.location_of(self)].location;
  if (c.coincident(r, elected)) return {r, Rule::Stay, elected};

  const double aeps = c.tolerance().eps_angle;
  const double reach = dist(elected, r);
  const double heading = polar_angle(elected, r);
  const auto on_ray = [&](Point q) {
    return dist(q, elected) > c.length_eps() &&
           angle_gap(polar_angle(elected, q), heading) <= aeps;
  };
  bool blocked = false;
  for (const auto& l : locs) {
    if (c.coincident(l.location, r)) continue;
    if (on_ray(l.location) && dist(elected, l.location) < reach) {
      blocked = true;
      break;
    }
  }
  if (!blocked) return {elected, Rule::MDirect, elected};

  // Side-step: turn by a third of the clockwise gap to the first robot met
  // off this ray, staying on the circle around the elected point.
  double turn = kTwoPi;
  std::size_t cur = self;
  for (std::size_t k = 0; k < c.size(); ++k) {
    cur = successor(c, cur, elected);
    const Point v = locs[c.location_of(cur)].location;
    if (!on_ray(v)) {
      turn = angle_cw(r, elected, v);
      break;
    }
  }
  return {rotate_cw(r, elected, turn / 3.0), Rule::MSidestep, elected};
}

}  // namespace

ComputeDecision compute(const Configuration& c, std::size_t self) {
  return compute(c, self, classify(c));
}

ComputeDecision compute(const Configuration& c, std::size_t self, const ConfigClass& cls) {
  if (self >= c.size()) throw InvalidInput("robot index out of range");
  const Point r = c.locations()[c.location_of(self)].location;
  switch (cls.tag) {
    case ClassTag::Bivalent:
      throw BivalentInput("no move is defined for a bivalent configuration");
    case ClassTag::Multiple:
      return multiple_move(c, self, *cls.elected);
    case ClassTag::L1W:
    case ClassTag::QRegular:
      return toward(c, r, *cls.weber, Rule::WeberMove);
    case ClassTag::Asymmetric:
      return toward(c, r, *cls.elected, Rule::AElect, cls.elected);
    case ClassTag::L2W: {
      const auto& ends = *cls.endpoints;
      const Point mid = *cls.midpoint;
      if (!c.coincident(r, ends[0]) && !c.coincident(r, ends[1])) {
        return toward(c, r, mid, Rule::L2WCenter);
      }
      return {rotate_cw(r, mid, std::numbers::pi / 4.0), Rule::L2WRotate, std::nullopt};
    }
  }
  throw InvalidInput("unknown class tag");
}

std::vector<ComputeDecision> decide_locations(const Configuration& c, const ConfigClass& cls) {
  std::vector<ComputeDecision> out;
  out.reserve(c.locations().size());
  for (const auto& l : c.locations()) out.push_back(compute(c, l.indices.front(), cls));
  return out;
}

std::vector<Point> moving_set(const Configuration& c) { return moving_set(c, classify(c)); }

std::vector<Point> moving_set(const Configuration& c, const ConfigClass& cls) {
  if (cls.tag == ClassTag::Bivalent) throw BivalentInput("moving set of a bivalent configuration");
  std::vector<Point> out;
  const auto decisions = decide_locations(c, cls);
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i].rule != Rule::Stay) out.push_back(c.locations()[i].location);
  }
  return out;
}

PotentialValue potential(const Configuration& c) { return potential(c, classify(c)); }

PotentialValue potential(const Configuration& c, const ConfigClass& cls) {
  if (cls.tag != ClassTag::Asymmetric) {
    throw WrongClass("potential is defined for asymmetric configurations only");
  }
  const Point e = *cls.elected;
  double s = 0.0;
  for (const Point& q : c.points()) s += dist(e, q);
  return {c.multiplicity_at(e), 1.0 / s};
}

}  // namespace gather
