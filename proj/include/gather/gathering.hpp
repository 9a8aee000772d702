#pragma once

// The COMPUTE phase of the gathering protocol: snapshot plus own index in,
// destination out. Robots are oblivious, so nothing here keeps state.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gather/configuration.hpp"

namespace gather {

enum class Rule { MDirect, MSidestep, WeberMove, AElect, L2WCenter, L2WRotate, Stay };

std::string_view to_string(Rule r);
std::optional<Rule> parse_rule(std::string_view s);

struct ComputeDecision {
  Point destination;
  Rule rule = Rule::Stay;
  std::optional<Point> elected;
};

// Throws BivalentInput: the protocol defines no move there.
ComputeDecision compute(const Configuration& c, std::size_t self);
ComputeDecision compute(const Configuration& c, std::size_t self, const ConfigClass& cls);

// Decision of the robots at each location, in location order. Co-located
// robots always decide alike.
std::vector<ComputeDecision> decide_locations(const Configuration& c, const ConfigClass& cls);

// Occupied locations the protocol tells to move.
std::vector<Point> moving_set(const Configuration& c);
std::vector<Point> moving_set(const Configuration& c, const ConfigClass& cls);

// Progress measure of asymmetric configurations, compared lexicographically.
struct PotentialValue {
  int mult = 0;
  double inv_sum = 0.0;  // 1 / sum of distances from the elected point

  double sum() const { return 1.0 / inv_sum; }
};

// Throws WrongClass unless c is Asymmetric.
PotentialValue potential(const Configuration& c);
PotentialValue potential(const Configuration& c, const ConfigClass& cls);

}  // namespace gather
