#include "gather/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gather/errors.hpp"

namespace gather {

Configuration::Configuration(std::vector<Point> points, Tolerance tol)
    : points_(std::move(points)), tol_(tol) {
  if (points_.empty()) throw EmptyInput("configuration needs at least one robot");
  if (!(tol_.eps_len >= 0.0) || !(tol_.eps_angle >= 0.0)) {
    throw InvalidInput("tolerances must be nonnegative");
  }
  for (const Point& p : points_) {
    if (!is_finite(p)) throw InvalidInput("non-finite coordinate");
  }
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter_ = std::max(diameter_, dist(points_[i], points_[j]));
    }
  }

  double magnitude = 0.0;
  for (const Point& p : points_) magnitude = std::max({magnitude, std::fabs(p.x), std::fabs(p.y)});
  length_eps_ = tol_.eps_len * diameter_;
  if (tol_.eps_len > 0.0) {
    length_eps_ = std::max(length_eps_, 64.0 * std::numeric_limits<double>::epsilon() * magnitude);
  }

  // Single-link merge of robots closer than the coincidence slack.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const double eps = length_eps();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(points_[i], points_[j]) <= eps) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  location_of_.assign(n, 0);
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = locations_.size();
      locations_.push_back({points_[i], 0, {}});
    }
    LocationSummary& loc = locations_[slot[root]];
    ++loc.multiplicity;
    loc.indices.push_back(i);
    location_of_[i] = slot[root];
  }

  const std::vector<Point> distinct = location_points();
  linear_ = collinear(distinct, tol_);
}

std::vector<Point> Configuration::location_points() const {
  std::vector<Point> out;
  out.reserve(locations_.size());
  for (const auto& l : locations_) out.push_back(l.location);
  return out;
}

std::optional<std::size_t> Configuration::find_location(Point p) const {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (coincident(p, locations_[i].location)) return i;
  }
  return std::nullopt;
}

int Configuration::multiplicity_at(Point p) const {
  const auto i = find_location(p);
  return i ? locations_[*i].multiplicity : 0;
}

std::vector<LocationSummary> distinct_locations(const Configuration& c) {
  return {c.locations().begin(), c.locations().end()};
}

std::vector<Ray> rays_around(const Configuration& c, Point origin) {
  struct Item {
    double angle;
    double range;
    std::size_t loc;
  };
  std::vector<Item> items;
  const auto locs = c.locations();
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const double r = dist(origin, locs[i].location);
    if (r <= c.length_eps()) continue;
    items.push_back({polar_angle(origin, locs[i].location), r, i});
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.loc < b.loc);
  });
  const double eps = c.tolerance().eps_angle;
  std::vector<std::vector<Item>> groups;
  for (const Item& it : items) {
    if (groups.empty() || it.angle - groups.back().back().angle > eps) groups.emplace_back();
    groups.back().push_back(it);
  }
  if (groups.size() > 1 &&
      groups.front().front().angle + kTwoPi - groups.back().back().angle <= eps) {
    groups.front().insert(groups.front().end(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }
  std::vector<Ray> rays;
  rays.reserve(groups.size());
  for (auto& g : groups) {
    Ray ray;
    ray.angle = g.front().angle;
    std::sort(g.begin(), g.end(), [](const Item& a, const Item& b) { return a.range < b.range; });
    for (const Item& it : g) {
      ray.count += locs[it.loc].multiplicity;
      ray.locations.push_back(it.loc);
    }
    rays.push_back(std::move(ray));
  }
  return rays;
}

namespace {

// Farthest pair of locations, lowest indices first; spans the line of a
// linear configuration.
std::pair<Point, Point> spanning_pair(const Configuration& c) {
  const auto locs = c.locations();
  Point a = locs[0].location;
  Point b = locs[0].location;
  double best = -1.0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    for (std::size_t j = i + 1; j < locs.size(); ++j) {
      const double d = dist(locs[i].location, locs[j].location);
      if (d > best) {
        best = d;
        a = locs[i].location;
        b = locs[j].location;
      }
    }
  }
  return {a, b};
}

}  // namespace

std::pair<Point, Point> median_interval(const Configuration& c) {
  if (!c.is_linear()) throw NotLinear("median interval of a non-linear configuration");
  const auto [a, b] = spanning_pair(c);
  const Point dir = b - a;
  const std::size_t n = c.size();
  std::vector<std::pair<double, std::size_t>> proj;
  proj.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point loc = c.locations()[c.location_of(i)].location;
    proj.emplace_back(dot(loc - a, dir), i);
  }
  std::sort(proj.begin(), proj.end());
  // 1-based ranks ceil(n/2) and floor(n/2)+1.
  const std::size_t lo = (n + 1) / 2 - 1;
  const std::size_t hi = n / 2;
  const auto at = [&](std::size_t k) {
    return c.locations()[c.location_of(proj[k].second)].location;
  };
  return {at(lo), at(hi)};
}

std::pair<Point, Point> linear_extremes(const Configuration& c) {
  if (!c.is_linear()) throw NotLinear("extremes of a non-linear configuration");
  const auto [a, b] = spanning_pair(c);
  return {a, b};
}

std::vector<Point> safe_points(const Configuration& c) {
  const int n = static_cast<int>(c.size());
  const int cap = (n + 1) / 2 - 1;
  std::vector<Point> out;
  for (const auto& loc : c.locations()) {
    const auto rays = rays_around(c, loc.location);
    const bool safe = std::all_of(rays.begin(), rays.end(),
                                  [&](const Ray& r) { return r.count <= cap; });
    if (safe) out.push_back(loc.location);
  }
  return out;
}

bool is_gathered(const Configuration& c, const std::vector<bool>& live,
                 std::span<const Point> moving) {
  if (live.size() != c.size()) throw InvalidInput("live mask length differs from robot count");
  std::optional<std::size_t> where;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!live[i]) continue;
    const std::size_t loc = c.location_of(i);
    if (where && *where != loc) return false;
    where = loc;
  }
  if (!where) return false;
  const Point p = c.locations()[*where].location;
  return std::none_of(moving.begin(), moving.end(),
                      [&](Point m) { return c.coincident(m, p); });
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::Bivalent: return "B";
    case ClassTag::Multiple: return "M";
    case ClassTag::L1W: return "L1W";
    case ClassTag::L2W: return "L2W";
    case ClassTag::QRegular: return "QR";
    case ClassTag::Asymmetric: return "A";
  }
  return "?";
}

std::optional<ClassTag> parse_class_tag(std::string_view s) {
  for (ClassTag t : {ClassTag::Bivalent, ClassTag::Multiple, ClassTag::L1W, ClassTag::L2W,
                     ClassTag::QRegular, ClassTag::Asymmetric}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

}  // namespace gather
