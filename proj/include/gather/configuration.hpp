#pragma once

// Robot configurations: an indexed multiset of planar positions, the
// tolerance-merged set of occupied locations, and the six-way class
// partition the protocol dispatches on.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gather/geometry.hpp"

namespace gather {

struct LocationSummary {
  Point location;                    // position of the lowest-index robot there
  int multiplicity = 0;
  std::vector<std::size_t> indices;  // ascending
};

class Configuration {
 public:
  explicit Configuration(std::vector<Point> points, Tolerance tol = {});

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }
  const Tolerance& tolerance() const { return tol_; }

  // Largest pairwise distance between robots.
  double diameter() const { return diameter_; }
  // Absolute coincidence slack: eps_len * diameter, but never below the
  // rounding noise of the coordinates themselves.
  double length_eps() const { return length_eps_; }

  std::span<const LocationSummary> locations() const { return locations_; }
  std::vector<Point> location_points() const;
  std::size_t location_of(std::size_t robot) const { return location_of_[robot]; }

  std::optional<std::size_t> find_location(Point p) const;
  int multiplicity_at(Point p) const;
  bool coincident(Point a, Point b) const { return dist(a, b) <= length_eps(); }
  bool is_linear() const { return linear_; }

 private:
  std::vector<Point> points_;
  Tolerance tol_;
  double diameter_ = 0.0;
  double length_eps_ = 0.0;
  std::vector<LocationSummary> locations_;
  std::vector<std::size_t> location_of_;
  bool linear_ = true;
};

// Robots grouped by direction as seen from an origin. Angles are
// counter-clockwise polar angles in [0, 2pi); robots at the origin are
// excluded.
struct Ray {
  double angle = 0.0;
  int count = 0;
  std::vector<std::size_t> locations;  // sorted by distance from the origin
};
std::vector<Ray> rays_around(const Configuration& c, Point origin);

enum class ClassTag { Bivalent, Multiple, L1W, L2W, QRegular, Asymmetric };

std::string_view to_string(ClassTag tag);
std::optional<ClassTag> parse_class_tag(std::string_view s);

struct ConfigClass {
  ClassTag tag = ClassTag::Multiple;
  std::optional<Point> elected;                 // Multiple, Asymmetric
  std::optional<Point> weber;                   // L1W, QRegular
  std::optional<int> qreg;                      // QRegular
  std::optional<std::array<Point, 2>> endpoints;  // L2W
  std::optional<Point> midpoint;                // L2W
};

// Total: every configuration receives exactly one tag. Throws
// ClassificationError only if the tolerance model produces an internally
// inconsistent verdict (an "asymmetric" configuration with sym > 1).
ConfigClass classify(const Configuration& c);

std::vector<LocationSummary> distinct_locations(const Configuration& c);

// Extreme median positions of a linear configuration, ordered along the
// line. Throws NotLinear.
std::pair<Point, Point> median_interval(const Configuration& c);

// The two extreme occupied locations of a linear configuration.
std::pair<Point, Point> linear_extremes(const Configuration& c);

std::vector<Point> safe_points(const Configuration& c);

// Live robots occupy one location and the protocol does not move it.
bool is_gathered(const Configuration& c, const std::vector<bool>& live,
                 std::span<const Point> moving);

}  // namespace gather
