#include "gather/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gather/errors.hpp"

namespace gather {

namespace {

// Slack for radii once they are normalized by the enclosing radius (the
// diameter is at most twice that radius).
double radius_eps(const Tolerance& tol) { return 4.0 * tol.eps_len; }

View encode(const Configuration& c, std::size_t self, Point reference, double radius) {
  const auto locs = c.locations();
  const Point p = locs[self].location;
  const double eps = c.tolerance().eps_angle;
  std::vector<ViewEntry> items;
  items.reserve(locs.size());
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (i == self) continue;
    const Point q = locs[i].location;
    items.push_back({normalize_angle(angle_cw(reference, p, q), eps), dist(p, q) / radius,
                     locs[i].multiplicity});
  }
  std::sort(items.begin(), items.end(),
            [](const ViewEntry& a, const ViewEntry& b) { return a.angle < b.angle; });
  // Entries on one ray share the angle of the ray's first entry so the final
  // ordering inside a ray depends on radius only.
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i].angle - items[i - 1].angle <= eps) items[i].angle = items[i - 1].angle;
  }
  std::sort(items.begin(), items.end(), [](const ViewEntry& a, const ViewEntry& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    if (a.radius != b.radius) return a.radius < b.radius;
    return a.multiplicity < b.multiplicity;
  });
  View v;
  v.entries.reserve(items.size() + 1);
  v.entries.push_back({0.0, 0.0, locs[self].multiplicity});
  v.entries.insert(v.entries.end(), items.begin(), items.end());
  return v;
}

View view_of_location(const Configuration& c, std::size_t self, const Circle& sec) {
  const auto locs = c.locations();
  if (locs.size() == 1 || sec.radius == 0.0) {
    return View{{{0.0, 0.0, locs[self].multiplicity}}};
  }
  const Point p = locs[self].location;
  if (!c.coincident(p, sec.center)) return encode(c, self, sec.center, sec.radius);
  // Observer at the center: the reference is whichever other location gives
  // the greatest encoding.
  std::optional<View> best;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (i == self) continue;
    View v = encode(c, self, locs[i].location, sec.radius);
    if (!best || compare_views(v, *best, c.tolerance()) > 0) best = std::move(v);
  }
  return *best;
}

Circle location_sec(const Configuration& c) {
  const std::vector<Point> pts = c.location_points();
  return smallest_enclosing_circle(pts);
}

struct Hop {
  std::size_t next;
  double angle;
};

Hop successor_hop(const Configuration& c, std::size_t i, Point center) {
  const double leps = c.length_eps();
  const double aeps = c.tolerance().eps_angle;
  const auto locs = c.locations();
  const std::size_t li = c.location_of(i);
  const Point pi = locs[li].location;
  if (dist(pi, center) <= leps) throw DegenerateCenter("robot sits at the center");

  // Co-located robots with a smaller index, highest first.
  for (std::size_t k = i; k-- > 0;) {
    if (c.location_of(k) == li) return {k, 0.0};
  }
  const auto enter = [&](std::size_t loc) { return locs[loc].indices.back(); };

  // Nearest occupied location strictly between the center and p_i.
  const double ri = dist(center, pi);
  const double ai = polar_angle(center, pi);
  std::optional<std::size_t> inner;
  double inner_r = -1.0;
  for (std::size_t l = 0; l < locs.size(); ++l) {
    if (l == li) continue;
    const double rl = dist(center, locs[l].location);
    if (rl <= leps || rl >= ri) continue;
    if (angle_gap(polar_angle(center, locs[l].location), ai) > aeps) continue;
    if (rl > inner_r) {
      inner_r = rl;
      inner = l;
    }
  }
  if (inner) return {enter(*inner), 0.0};

  // Smallest positive clockwise turn; the robot's own ray counts as a full
  // turn. Among equal turns the farthest location wins.
  struct Cand {
    std::size_t loc;
    double turn;
    double range;
  };
  std::vector<Cand> cands;
  for (std::size_t l = 0; l < locs.size(); ++l) {
    const double rl = dist(center, locs[l].location);
    if (rl <= leps) continue;
    double a = l == li ? 0.0 : angle_cw(pi, center, locs[l].location);
    if (a <= aeps || a >= kTwoPi - aeps) a = kTwoPi;
    cands.push_back({l, a, rl});
  }
  const double amin =
      std::min_element(cands.begin(), cands.end(),
                       [](const Cand& a, const Cand& b) { return a.turn < b.turn; })
          ->turn;
  const Cand* pick = nullptr;
  for (const Cand& cd : cands) {
    if (cd.turn - amin > aeps) continue;
    if (!pick || cd.range > pick->range) pick = &cd;
  }
  return {enter(pick->loc), pick->turn};
}

}  // namespace

int compare_views(const View& a, const View& b, const Tolerance& tol) {
  const std::size_t n = std::min(a.entries.size(), b.entries.size());
  const double reps = radius_eps(tol);
  for (std::size_t i = 0; i < n; ++i) {
    const ViewEntry& x = a.entries[i];
    const ViewEntry& y = b.entries[i];
    if (std::fabs(x.angle - y.angle) > tol.eps_angle) return x.angle < y.angle ? -1 : 1;
    if (std::fabs(x.radius - y.radius) > reps) return x.radius < y.radius ? -1 : 1;
    if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity ? -1 : 1;
  }
  if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size() ? -1 : 1;
  return 0;
}

View view(const Configuration& c, Point p) {
  const auto loc = c.find_location(p);
  if (!loc) throw NotOccupied("view requested from an empty position");
  return view_of_location(c, *loc, location_sec(c));
}

std::vector<View> all_views(const Configuration& c) {
  const Circle sec = location_sec(c);
  std::vector<View> out;
  out.reserve(c.locations().size());
  for (std::size_t i = 0; i < c.locations().size(); ++i) {
    out.push_back(view_of_location(c, i, sec));
  }
  return out;
}

SymmetryReport symmetricity(const Configuration& c) { return symmetricity(c, all_views(c)); }

SymmetryReport symmetricity(const Configuration& c, const std::vector<View>& views) {
  SymmetryReport rep;
  for (std::size_t i = 0; i < views.size(); ++i) {
    bool placed = false;
    for (auto& cls : rep.classes) {
      if (compare_views(views[cls.front()], views[i], c.tolerance()) == 0) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) rep.classes.push_back({i});
  }
  rep.sym = 0;
  for (const auto& cls : rep.classes) rep.sym = std::max(rep.sym, static_cast<int>(cls.size()));
  return rep;
}

std::size_t successor(const Configuration& c, std::size_t i, Point center) {
  if (i >= c.size()) throw InvalidInput("robot index out of range");
  return successor_hop(c, i, center).next;
}

StringOfAngles string_of_angles(const Configuration& c, std::size_t i, Point center) {
  if (i >= c.size()) throw InvalidInput("robot index out of range");
  const int m = static_cast<int>(c.size()) - c.multiplicity_at(center);
  StringOfAngles sa{{}, c[i], center};
  sa.angles.reserve(m);
  std::size_t cur = i;
  for (int k = 0; k < m; ++k) {
    const Hop h = successor_hop(c, cur, center);
    sa.angles.push_back(h.angle);
    cur = h.next;
  }
  return sa;
}

int periodicity(const StringOfAngles& sa, double eps_angle) {
  const std::size_t m = sa.angles.size();
  if (m == 0) return 1;
  for (std::size_t k = m; k > 1; --k) {
    if (m % k != 0) continue;
    const std::size_t shift = m / k;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      ok = std::fabs(sa.angles[j] - sa.angles[(j + shift) % m]) <= eps_angle;
    }
    if (ok) return static_cast<int>(k);
  }
  return 1;
}

int regularity_at(const Configuration& c, Point center) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (dist(c.locations()[c.location_of(i)].location, center) > c.length_eps()) {
      return periodicity(string_of_angles(c, i, center), c.tolerance().eps_angle);
    }
  }
  throw AllAtCenter("every robot sits at the candidate center");
}

int regularity_by_rays(const Configuration& c, Point center) {
  const auto rays = rays_around(c, center);
  if (rays.empty()) throw AllAtCenter("every robot sits at the candidate center");
  const double eps = c.tolerance().eps_angle;
  const std::size_t r = rays.size();
  for (std::size_t m = r; m > 1; --m) {
    if (r % m != 0) continue;
    const double step = kTwoPi / static_cast<double>(m);
    const bool ok = std::all_of(rays.begin(), rays.end(), [&](const Ray& ray) {
      const double target = ray.angle + step;
      return std::any_of(rays.begin(), rays.end(), [&](const Ray& other) {
        return other.count == ray.count && angle_gap(other.angle, target) <= 2.0 * eps;
      });
    });
    if (ok) return static_cast<int>(m);
  }
  return 1;
}

int QRegularityResult::total_deficit() const {
  int s = 0;
  for (const Deficit& d : deficits) s += d.count;
  return s;
}

namespace {

// Orbits of the rays under rotation by 2pi/m, with the robots each empty or
// short slot is missing. Returns nullopt when more than `budget` are needed.
std::optional<std::vector<Deficit>> orbit_deficits(const std::vector<Ray>& rays, int m,
                                                   int budget, double eps, Point origin,
                                                   double reach) {
  const double step = kTwoPi / m;
  std::vector<std::pair<double, std::size_t>> keys;
  keys.reserve(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    double k = std::fmod(rays[i].angle, step);
    if (k < 0.0) k += step;
    if (k >= step - eps) k = 0.0;
    keys.emplace_back(k, i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::vector<std::size_t>> orbits;
  double last = 0.0;
  for (const auto& [k, i] : keys) {
    if (orbits.empty() || k - last > eps) orbits.emplace_back();
    orbits.back().push_back(i);
    last = k;
  }

  std::vector<Deficit> out;
  int total = 0;
  std::vector<int> loc(m);
  for (const auto& orbit : orbits) {
    std::fill(loc.begin(), loc.end(), 0);
    const double base = rays[orbit.front()].angle;
    for (std::size_t i : orbit) {
      const double d = normalize_angle(rays[i].angle - base, eps);
      const long k = std::lround(d / step) % m;
      loc[k] += rays[i].count;
    }
    const int obj = *std::max_element(loc.begin(), loc.end());
    for (int k = 0; k < m; ++k) {
      if (loc[k] == obj) continue;
      const double a = normalize_angle(base + k * step);
      total += obj - loc[k];
      if (total > budget) return std::nullopt;
      out.push_back({origin + reach * Point{std::cos(a), std::sin(a)}, a, obj - loc[k]});
    }
  }
  return out;
}

double reach_from(const Configuration& c, Point p) {
  double r = 0.0;
  for (const Point& q : c.points()) r = std::max(r, dist(p, q));
  return r;
}

}  // namespace

std::optional<QRegularityResult> qregular_test(const Configuration& c, Point p, int m) {
  if (m < 2) throw InvalidInput("q-regularity needs m >= 2");
  const auto loc = c.find_location(p);
  if (!loc) return std::nullopt;
  const Point center = c.locations()[*loc].location;
  const auto rays = rays_around(c, center);
  if (rays.empty()) return std::nullopt;
  auto deficits = orbit_deficits(rays, m, c.locations()[*loc].multiplicity,
                                 c.tolerance().eps_angle, center, reach_from(c, center));
  if (!deficits) return std::nullopt;
  return QRegularityResult{center, m, std::move(*deficits)};
}

std::optional<QRegularityResult> detect_quasi_regular(const Configuration& c) {
  if (c.is_linear()) throw LinearInput("quasi-regularity is tested on non-linear configurations");
  const int n = static_cast<int>(c.size());
  const double eps = c.tolerance().eps_angle;
  for (const auto& loc : c.locations()) {
    const auto rays = rays_around(c, loc.location);
    if (rays.empty()) continue;
    // A slot orbit has m rays; the smallest orbit already has one ray, so at
    // most m - 1 slots are filled from the center.
    const int top = std::min(n, static_cast<int>(rays.size()) + loc.multiplicity);
    const double reach = reach_from(c, loc.location);
    for (int m = top; m >= 2; --m) {
      auto deficits = orbit_deficits(rays, m, loc.multiplicity, eps, loc.location, reach);
      if (deficits) return QRegularityResult{loc.location, m, std::move(*deficits)};
    }
  }
  const Point w = weber_numeric(c);
  if (c.find_location(w)) return std::nullopt;
  const int per = regularity_at(c, w);
  if (per >= 2) return QRegularityResult{w, per, {}};
  return std::nullopt;
}

Point weber_numeric(const Configuration& c) {
  if (c.is_linear()) throw LinearInput("Weber point of a linear configuration is not unique");
  const auto locs = c.locations();
  const double diam = c.diameter();
  const double n = static_cast<double>(c.size());

  // Pull of every location except `skip` on the point x.
  const auto pull = [&](Point x, std::size_t skip) {
    Point g{0.0, 0.0};
    for (std::size_t j = 0; j < locs.size(); ++j) {
      if (j == skip) continue;
      const Point d = locs[j].location - x;
      const double r = norm(d);
      if (r <= 1e-15 * diam) continue;
      g = g + (locs[j].multiplicity / r) * d;
    }
    return g;
  };

  // An occupied location is optimal when the pull of everyone else does not
  // exceed its own weight.
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (norm(pull(locs[i].location, i)) <= locs[i].multiplicity + 1e-9 * n) return locs[i].location;
  }

  const auto objective = [&](Point x) {
    double f = 0.0;
    for (const auto& l : locs) f += l.multiplicity * dist(x, l.location);
    return f;
  };

  Point x{0.0, 0.0};
  for (const auto& l : locs) x = x + (l.multiplicity / n) * l.location;

  // Weiszfeld iterations; data points hit exactly are skipped (the vertex
  // test above already ruled them out as optima).
  for (int iter = 0; iter < 5000; ++iter) {
    Point num{0.0, 0.0};
    double den = 0.0;
    for (const auto& l : locs) {
      const double d = dist(x, l.location);
      if (d <= 1e-15 * diam) continue;
      num = num + (l.multiplicity / d) * l.location;
      den += l.multiplicity / d;
    }
    const Point next = (1.0 / den) * num;
    const double moved = dist(next, x);
    x = next;
    if (moved <= 1e-12 * diam) break;
  }

  // Newton polish: the objective is smooth away from the data points. Close
  // to the optimum objective values stop resolving progress, so a step is
  // also accepted when it shrinks the gradient.
  const auto newton = [&](Point x) {
    double fx = objective(x);
    double gx = norm(pull(x, locs.size()));
    for (int iter = 0; iter < 100 && gx > 0.0; ++iter) {
      Point g{0.0, 0.0};
      double hxx = 0.0, hxy = 0.0, hyy = 0.0;
      for (const auto& l : locs) {
        const Point d = x - l.location;
        const double r = norm(d);
        if (r <= 1e-15 * diam) continue;
        const double w = l.multiplicity;
        const Point u = (1.0 / r) * d;
        g = g + w * u;
        hxx += w * (1.0 - u.x * u.x) / r;
        hxy += w * (-u.x * u.y) / r;
        hyy += w * (1.0 - u.y * u.y) / r;
      }
      const double det = hxx * hyy - hxy * hxy;
      if (!(det > 0.0)) break;
      const Point s{-(hyy * g.x - hxy * g.y) / det, -(-hxy * g.x + hxx * g.y) / det};
      double t = 1.0;
      bool accepted = false;
      Point cand = x;
      double fc = fx, gc = gx;
      while (t > 1e-8) {
        cand = x + t * s;
        fc = objective(cand);
        gc = norm(pull(cand, locs.size()));
        if (fc < fx || (fc <= fx * (1.0 + 1e-15) && gc < gx)) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
      const double moved = dist(cand, x);
      x = cand;
      fx = fc;
      gx = gc;
      if (moved <= 1e-17 * diam) break;
    }
    return x;
  };

  // Both iterations crawl when the optimum sits right next to a data point.
  // Leaving that point along its steepest descent ray (the objective is
  // convex along it) gives Newton a start on the smooth side.
  x = newton(x);
  for (int escape = 0; escape < 4; ++escape) {
    std::size_t near = 0;
    for (std::size_t j = 1; j < locs.size(); ++j) {
      if (dist(x, locs[j].location) < dist(x, locs[near].location)) near = j;
    }
    const Point p = locs[near].location;
    if (dist(x, p) > 1e-6 * diam) break;
    const Point g = pull(p, near);
    const Point v = (1.0 / norm(g)) * g;
    double lo = 0.0, hi = diam;
    for (int k = 0; k < 200; ++k) {
      const double a = lo + (hi - lo) / 3.0;
      const double b = hi - (hi - lo) / 3.0;
      if (objective(p + a * v) <= objective(p + b * v)) {
        hi = b;
      } else {
        lo = a;
      }
    }
    const Point start = p + 0.5 * (lo + hi) * v;
    if (dist(start, p) <= 1e-15 * diam) break;
    x = newton(start);
    if (dist(x, p) > 1e-6 * diam) break;
  }
  return x;
}

Point weber_point(const Configuration& c, const ConfigClass& cls) {
  (void)c;
  if ((cls.tag == ClassTag::L1W || cls.tag == ClassTag::QRegular) && cls.weber) return *cls.weber;
  throw ClassWithoutUniqueWeber(std::string("class ") + std::string(to_string(cls.tag)) +
                                " has no designated Weber point");
}

}  // namespace gather
