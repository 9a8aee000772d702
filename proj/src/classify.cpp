#include <algorithm>

#include "gather/configuration.hpp"
#include "gather/errors.hpp"
#include "gather/symmetry.hpp"

namespace gather {

namespace {

double distance_sum(const Configuration& c, Point p) {
  double s = 0.0;
  for (const Point& q : c.points()) s += dist(p, q);
  return s;
}

}  // namespace

ConfigClass classify(const Configuration& c) {
  const auto locs = c.locations();
  const int n = static_cast<int>(c.size());
  ConfigClass out;

  if (locs.size() == 2 && 2 * locs[0].multiplicity == n && 2 * locs[1].multiplicity == n) {
    out.tag = ClassTag::Bivalent;
    return out;
  }

  {
    int best = 0;
    int ties = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      if (locs[i].multiplicity > best) {
        best = locs[i].multiplicity;
        ties = 1;
        at = i;
      } else if (locs[i].multiplicity == best) {
        ++ties;
      }
    }
    if (ties == 1) {
      out.tag = ClassTag::Multiple;
      out.elected = locs[at].location;
      return out;
    }
  }

  if (c.is_linear()) {
    const auto [lo, hi] = median_interval(c);
    if (c.coincident(lo, hi)) {
      out.tag = ClassTag::L1W;
      out.weber = lo;
    } else {
      const auto [a, b] = linear_extremes(c);
      out.tag = ClassTag::L2W;
      out.endpoints = std::array<Point, 2>{a, b};
      out.midpoint = 0.5 * (a + b);
    }
    return out;
  }

  if (auto q = detect_quasi_regular(c)) {
    out.tag = ClassTag::QRegular;
    out.weber = q->center;
    out.qreg = q->m;
    return out;
  }

  const std::vector<View> views = all_views(c);
  const SymmetryReport sym = symmetricity(c, views);
  if (sym.sym != 1) {
    throw ClassificationError("configuration with sym " + std::to_string(sym.sym) +
                              " was not detected as quasi-regular");
  }

  // Elect among safe points: greatest multiplicity, then least distance sum,
  // then greatest view.
  const double sum_eps = c.length_eps() * n;
  std::optional<std::size_t> best;
  double best_sum = 0.0;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const Point p = locs[i].location;
    const auto rays = rays_around(c, p);
    const bool safe = std::all_of(rays.begin(), rays.end(),
                                  [&](const Ray& r) { return r.count <= (n + 1) / 2 - 1; });
    if (!safe) continue;
    const double s = distance_sum(c, p);
    if (!best) {
      best = i;
      best_sum = s;
      continue;
    }
    const int bm = locs[*best].multiplicity;
    bool better = false;
    if (locs[i].multiplicity != bm) {
      better = locs[i].multiplicity > bm;
    } else if (std::fabs(s - best_sum) > sum_eps) {
      better = s < best_sum;
    } else {
      better = compare_views(views[i], views[*best], c.tolerance()) > 0;
    }
    if (better) {
      best = i;
      best_sum = s;
    }
  }
  if (!best) throw ClassificationError("non-linear configuration without a safe point");
  out.tag = ClassTag::Asymmetric;
  out.elected = locs[*best].location;
  return out;
}

}  // namespace gather
