#pragma once

// Rotational structure of a configuration: views and symmetricity, the
// clockwise successor order and its string of angles, regularity and
// quasi-regularity, and Weber points.

#include <cstddef>
#include <optional>
#include <vector>

#include "gather/configuration.hpp"

namespace gather {

struct ViewEntry {
  double angle = 0.0;   // clockwise from the reference direction, [0, 2pi)
  double radius = 0.0;  // divided by the radius of the smallest enclosing circle
  int multiplicity = 0;
};

// Polar encoding of the configuration as seen from one occupied location.
// Entries are sorted by (angle, radius); the observer itself comes first.
struct View {
  std::vector<ViewEntry> entries;
};

// Tolerant lexicographic comparison: -1, 0 or +1.
int compare_views(const View& a, const View& b, const Tolerance& tol);

// Throws NotOccupied if p is not an occupied location.
View view(const Configuration& c, Point p);

// One view per location, in location order.
std::vector<View> all_views(const Configuration& c);

struct SymmetryReport {
  int sym = 1;
  std::vector<std::vector<std::size_t>> classes;  // location indices
};

SymmetryReport symmetricity(const Configuration& c);
SymmetryReport symmetricity(const Configuration& c, const std::vector<View>& views);

// Clockwise successor of robot i around center. Throws DegenerateCenter if
// robot i sits at the center.
std::size_t successor(const Configuration& c, std::size_t i, Point center);

struct StringOfAngles {
  std::vector<double> angles;
  Point start;
  Point center;
};

StringOfAngles string_of_angles(const Configuration& c, std::size_t i, Point center);

// Greatest k such that the string is k copies of one block.
int periodicity(const StringOfAngles& sa, double eps_angle = Tolerance{}.eps_angle);

// Periodicity of the string of angles around center. Throws AllAtCenter.
int regularity_at(const Configuration& c, Point center);

// Same quantity from ray counts: the greatest m such that rotating the rays
// by 2pi/m maps each ray onto one carrying as many robots.
int regularity_by_rays(const Configuration& c, Point center);

struct Deficit {
  Point target;  // on the ray, at the distance of the farthest robot
  double angle;  // counter-clockwise polar angle of the ray
  int count;
};

struct QRegularityResult {
  Point center;
  int m = 2;
  std::vector<Deficit> deficits;  // rays that lack robots; zero entries omitted

  int total_deficit() const;
};

// Whether robots parked at p can fill every orbit of rays under rotation by
// 2pi/m. Returns nullopt on failure.
std::optional<QRegularityResult> qregular_test(const Configuration& c, Point p, int m);

// Center of quasi-regularity of a non-linear configuration, if any. Throws
// LinearInput.
std::optional<QRegularityResult> detect_quasi_regular(const Configuration& c);

// Geometric median of a non-linear configuration. Throws LinearInput.
Point weber_numeric(const Configuration& c);

// Weber point of an L1W or QRegular configuration. Throws
// ClassWithoutUniqueWeber for the other classes.
Point weber_point(const Configuration& c, const ConfigClass& cls);

}  // namespace gather
