#include "gather/geometry.hpp"

#include <algorithm>
#include <random>

#include "gather/errors.hpp"

namespace gather {

double dist(Point u, Point v) { return norm(u - v); }

double normalize_angle(double a, double eps) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi - eps) a = 0.0;
  return a;
}

double angle_gap(double a, double b) {
  double d = std::fabs(normalize_angle(a) - normalize_angle(b));
  return std::min(d, kTwoPi - d);
}

double polar_angle(Point c, Point v) {
  return normalize_angle(std::atan2(v.y - c.y, v.x - c.x));
}

double angle_cw(Point u, Point c, Point v) {
  if (u == c || v == c) throw DegenerateAngle("ray endpoint coincides with the apex");
  if (u == v) return 0.0;
  // Counter-clockwise polar angles; a clockwise turn from u to v is their
  // difference taken the other way round.
  const double au = std::atan2(u.y - c.y, u.x - c.x);
  const double av = std::atan2(v.y - c.y, v.x - c.x);
  double d = au - av;
  if (d < 0.0) d += kTwoPi;
  if (d >= kTwoPi) d -= kTwoPi;
  return d;
}

bool on_open_segment(Point p, Point u, Point v, const Tolerance& tol) {
  const Point d = v - u;
  const double len = norm(d);
  if (len == 0.0) return false;
  const Point w = p - u;
  const double t = dot(w, d) / (len * len);
  const double off = std::fabs(cross(d, w)) / len;
  return off <= tol.eps_len * len && t > tol.eps_len && t < 1.0 - tol.eps_len;
}

bool on_half_line(Point p, Point origin, Point through, const Tolerance& tol) {
  const Point d = through - origin;
  const double len = norm(d);
  if (len == 0.0) return false;
  const Point w = p - origin;
  const double reach = std::max(len, norm(w));
  const double along = dot(w, d) / len;
  const double off = std::fabs(cross(d, w)) / len;
  return along > tol.eps_len * reach && off <= tol.eps_len * reach;
}

namespace {

Circle circle_from(Point a, Point b) {
  const Point c = 0.5 * (a + b);
  return {c, dist(a, c)};
}

Circle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max({norm(ab), norm(ac), norm(c - b)});
  if (std::fabs(d) <= 1e-14 * scale * scale) {
    // Degenerate triple: the circle on the farthest pair covers the third.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  const Point center = a + off;
  return {center, std::max({dist(center, a), dist(center, b), dist(center, c)})};
}

bool covers(const Circle& c, Point p) {
  return dist(c.center, p) <= c.radius * (1.0 + 1e-12) + 1e-300;
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Point> input) {
  if (input.empty()) throw EmptyInput("smallest enclosing circle of no points");
  std::vector<Point> pts(input.begin(), input.end());
  // Fixed seed: the result must not depend on the call.
  std::mt19937 rng(0x5ECu);
  std::shuffle(pts.begin(), pts.end(), rng);

  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (covers(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (covers(c, pts[k])) continue;
        c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

std::vector<Point> hull_vertices(std::span<const Point> input, const Tolerance& tol) {
  if (input.empty()) throw EmptyInput("hull of no points");
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  double scale = 0.0;
  for (const Point& p : pts) scale = std::max(scale, dist(p, pts.front()));
  const double merge = tol.eps_len * scale;
  std::vector<Point> uniq;
  for (const Point& p : pts) {
    const bool dup = std::any_of(uniq.begin(), uniq.end(),
                                 [&](Point q) { return dist(p, q) <= merge; });
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() <= 2) return uniq;

  // Andrew's monotone chain; near-straight turns are dropped so only corners
  // survive.
  const auto turns_left = [&](Point o, Point a, Point b) {
    const double len = std::max(dist(o, b), 1e-300);
    return cross(a - o, b - o) / len > tol.eps_len * scale;
  };
  std::vector<Point> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const Point& p : uniq) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], uniq[i])) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return hull;
}

Point rotate_cw(Point p, Point c, double theta) {
  const Point d = p - c;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {c.x + d.x * cs + d.y * sn, c.y - d.x * sn + d.y * cs};
}

bool collinear(std::span<const Point> points, const Tolerance& tol) {
  if (points.size() <= 2) return true;
  Point a = points[0];
  Point b = points[0];
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = dist(points[i], points[j]);
      if (d > best) {
        best = d;
        a = points[i];
        b = points[j];
      }
    }
  }
  if (best == 0.0) return true;
  const Point dir = b - a;
  return std::all_of(points.begin(), points.end(), [&](Point p) {
    return std::fabs(cross(dir, p - a)) / best <= tol.eps_len * best;
  });
}

}  // namespace gather
