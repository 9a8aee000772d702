#pragma once

// Configuration generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gather/configuration.hpp"
#include "gather/simulator.hpp"

namespace gather::testing {

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Point polar(Point c, double r, double ccw) {
  return {c.x + r * std::cos(ccw), c.y + r * std::sin(ccw)};
}

inline std::vector<Point> generic(Rng& rng, std::size_t n) {
  std::vector<Point> p(n);
  for (auto& q : p) q = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  return p;
}

// Points on a random line, some of them stacked.
inline std::vector<Point> collinear_points(Rng& rng, std::size_t n) {
  const Point o{uniform(rng, -1, 1), uniform(rng, -1, 1)};
  const double a = uniform(rng, 0, std::numbers::pi);
  const Point d{std::cos(a), std::sin(a)};
  const std::size_t slots = pick(rng, 2, n);
  std::vector<double> ts(slots);
  for (auto& t : ts) t = uniform(rng, -2.0, 2.0);
  std::vector<Point> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i < slots ? ts[i] : ts[pick(rng, 0, slots - 1)];
    p.push_back(o + t * d);
  }
  return p;
}

// Few locations carrying many robots.
inline std::vector<Point> stacked(Rng& rng, std::size_t n) {
  const std::size_t k = pick(rng, 2, std::max<std::size_t>(2, n / 2));
  const auto base = generic(rng, k);
  std::vector<Point> p(base);
  while (p.size() < n) p.push_back(base[pick(rng, 0, k - 1)]);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Concentric regular polygons, optionally with robots at the center.
inline std::vector<Point> rings(Rng& rng, std::size_t n) {
  const std::size_t m = pick(rng, 2, std::max<std::size_t>(2, std::min<std::size_t>(6, n)));
  const Point c{uniform(rng, -1, 1), uniform(rng, -1, 1)};
  std::vector<Point> p;
  while (p.size() + m <= n) {
    const double r = uniform(rng, 0.2, 2.0);
    const double phase = uniform(rng, 0, 2 * std::numbers::pi);
    for (std::size_t k = 0; k < m; ++k) p.push_back(polar(c, r, phase + 2 * std::numbers::pi * k / m));
  }
  while (p.size() < n) p.push_back(c);
  return p;
}

// A q-regular configuration as built for the oracle: m rotated copies of a
// fundamental set of rays around `center`, then `deficits` robots taken off
// their rays and parked at the center.
struct QRegularInstance {
  std::vector<Point> points;
  Point center;
  int m = 2;
  std::size_t at_center = 0;
  std::vector<std::size_t> ray_robots;  // indices of robots off the center
};

inline QRegularInstance quasi_regular(Rng& rng, int m, std::size_t orbits, std::size_t max_per_ray,
                                      std::size_t extra_center, std::size_t deficits) {
  QRegularInstance q;
  q.m = m;
  q.center = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  const double sector = 2 * std::numbers::pi / m;
  std::vector<Point> ray_points;
  for (std::size_t j = 0; j < orbits; ++j) {
    const double theta = uniform(rng, 0, sector) + 0.0;
    const std::size_t per_ray = pick(rng, 1, max_per_ray);
    for (int k = 0; k < m; ++k) {
      for (std::size_t s = 0; s < per_ray; ++s) {
        const double r = 0.3 + 0.4 * static_cast<double>(s) + uniform(rng, 0.0, 0.3);
        ray_points.push_back(polar(q.center, r, theta + sector * k));
      }
    }
  }
  std::shuffle(ray_points.begin(), ray_points.end(), rng);
  deficits = std::min(deficits, ray_points.size() - 1);
  ray_points.resize(ray_points.size() - deficits);
  q.at_center = extra_center + deficits;
  q.points = ray_points;
  for (std::size_t k = 0; k < q.at_center; ++k) q.points.push_back(q.center);
  std::shuffle(q.points.begin(), q.points.end(), rng);
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    if (!(q.points[i] == q.center)) q.ray_robots.push_back(i);
  }
  return q;
}

// Mixture used by the partition and frame checks.
inline std::vector<Point> mixed(Rng& rng, std::size_t max_n = 12) {
  const std::size_t n = pick(rng, 1, max_n);
  switch (pick(rng, 0, 5)) {
    case 0: return generic(rng, n);
    case 1: return collinear_points(rng, std::max<std::size_t>(n, 2));
    case 2: return stacked(rng, std::max<std::size_t>(n, 2));
    case 3: return rings(rng, std::max<std::size_t>(n, 2));
    case 4: {
      const int m = static_cast<int>(pick(rng, 2, 4));
      auto q = quasi_regular(rng, m, pick(rng, 1, 2), 2, pick(rng, 0, 1), pick(rng, 0, 2));
      if (q.points.size() > max_n) q.points.resize(max_n);
      return q.points;
    }
    default: {
      // Bivalent or near-bivalent splits.
      const auto ends = generic(rng, 2);
      const std::size_t half = pick(rng, 1, 6);
      std::vector<Point> p(half, ends[0]);
      p.insert(p.end(), half, ends[1]);
      if (pick(rng, 0, 1) == 1) p.push_back(generic(rng, 1)[0]);
      return p;
    }
  }
}

}  // namespace gather::testing
