#pragma once

// Planar primitives used by the classifier and the protocol.
//
// Angles follow one fixed convention: the plane is drawn with y pointing up
// and angle_cw() measures the clockwise turn from one ray to another.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace gather {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point center;
  double radius = 0.0;
};

// Slack used by every coincidence, collinearity and angle-equality test.
// eps_len is relative: callers multiply it by a reference length (usually the
// configuration diameter). eps_angle is in radians.
struct Tolerance {
  double eps_len = 1e-9;
  double eps_angle = 1e-9;
};

double dist(Point u, Point v);

// Clockwise angle in [0, 2pi) from ray c->u to ray c->v.
// Throws DegenerateAngle when u or v coincides with c.
double angle_cw(Point u, Point c, Point v);

// Counter-clockwise polar angle of v - c in [0, 2pi), measured from +x.
double polar_angle(Point c, Point v);

// Folds an angle into [0, 2pi); values within eps of 2pi become 0.
double normalize_angle(double a, double eps = 0.0);

// Absolute difference of two angles on the circle, in [0, pi].
double angle_gap(double a, double b);

bool on_open_segment(Point p, Point u, Point v, const Tolerance& tol = {});

// Half-line starting at origin (origin excluded) through `through`.
bool on_half_line(Point p, Point origin, Point through, const Tolerance& tol = {});

Circle smallest_enclosing_circle(std::span<const Point> points);

// Corners of the convex hull in counter-clockwise order, starting from the
// lowest-leftmost point. Collinear inputs yield their two endpoints.
std::vector<Point> hull_vertices(std::span<const Point> points, const Tolerance& tol = {});

Point rotate_cw(Point p, Point c, double theta);

bool collinear(std::span<const Point> points, const Tolerance& tol = {});

}  // namespace gather
