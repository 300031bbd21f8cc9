#include "qcp/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcp {

namespace {

double cross(const cxd& o, const cxd& a, const cxd& b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

struct Site {
  cxd z;
  int index;  // lowest original index among collapsed duplicates
};

// (distance, parameter in [0,1] of the closest point) from the origin to
// segment a-b.
std::pair<double, double> segment_distance(const cxd& a, const cxd& b) {
  const cxd w = b - a;
  const double ww = std::norm(w);
  double s = 0.0;
  if (ww > 0.0) s = std::clamp((-(a.real() * w.real() + a.imag() * w.imag())) / ww, 0.0, 1.0);
  const cxd closest = a + s * w;
  return {std::abs(closest), s};
}

// Andrew monotone chain; returns hull sites in counterclockwise order.
std::vector<Site> convex_hull(std::vector<Site> pts) {
  std::sort(pts.begin(), pts.end(), [](const Site& a, const Site& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    return a.index < b.index;
  });
  const int n = static_cast<int>(pts.size());
  std::vector<Site> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2].z, hull[k - 1].z, pts[i].z) <= 0) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2].z, hull[k - 1].z, pts[i].z) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Site> dedup(const std::vector<cxd>& points) {
  std::vector<Site> sites;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    bool duplicate = false;
    for (const Site& s : sites) {
      if (std::abs(s.z.real() - points[i].real()) <= 1e-12 && std::abs(s.z.imag() - points[i].imag()) <= 1e-12) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) sites.push_back({points[i], i});
  }
  return sites;
}

void validate_unit_modulus(const std::vector<cxd>& points) {
  if (points.empty()) throw ValidationError("distance_to_polygon: empty point list");
  for (const cxd& z : points)
    if (std::abs(std::abs(z) - 1.0) > 1e-10)
      throw ValidationError("distance_to_polygon: point off the unit circle");
}

std::pair<int, int> ordered_pair(int a, int b) { return a <= b ? std::make_pair(a, b) : std::make_pair(b, a); }

}  // namespace

PolygonResult distance_to_polygon(const std::vector<cxd>& points) {
  validate_unit_modulus(points);
  std::vector<Site> sites = dedup(points);

  if (sites.size() == 1) return {std::abs(sites[0].z), {sites[0].index, sites[0].index}, false};

  std::vector<Site> hull = sites.size() == 2 ? sites : convex_hull(sites);

  // Origin-inside test (only meaningful for a genuine polygon).
  bool inside = false;
  if (hull.size() >= 3) {
    inside = true;
    for (size_t i = 0; i < hull.size(); ++i) {
      const Site& a = hull[i];
      const Site& b = hull[(i + 1) % hull.size()];
      if (cross(a.z, b.z, cxd(0.0, 0.0)) < -1e-12) {
        inside = false;
        break;
      }
    }
  }

  double best = std::numeric_limits<double>::infinity();
  std::pair<int, int> best_edge{0, 0};
  const size_t edge_count = hull.size() == 2 ? 1 : hull.size();
  for (size_t i = 0; i < edge_count; ++i) {
    const Site& a = hull[i];
    const Site& b = hull[(i + 1) % hull.size()];
    const double d = segment_distance(a.z, b.z).first;
    const std::pair<int, int> e = ordered_pair(a.index, b.index);
    if (d < best - 1e-12 || (d <= best + 1e-12 && e < best_edge)) {
      best = d;
      best_edge = e;
    }
  }
  if (inside) best = 0.0;
  return {std::min(best, 1.0), best_edge, inside};
}

std::vector<std::pair<int, double>> zero_overlap_weights(const std::vector<cxd>& points) {
  validate_unit_modulus(points);
  std::vector<Site> sites = dedup(points);

  // A pair whose segment passes through the origin covers most cases.
  for (size_t i = 0; i < sites.size(); ++i) {
    for (size_t j = i + 1; j < sites.size(); ++j) {
      auto [d, s] = segment_distance(sites[i].z, sites[j].z);
      if (d <= 1e-9) return {{sites[i].index, 1.0 - s}, {sites[j].index, s}};
    }
  }

  // Otherwise the origin is strictly inside: fan-triangulate the hull and
  // solve barycentric weights in the containing triangle.
  if (sites.size() >= 3) {
    std::vector<Site> hull = convex_hull(sites);
    for (size_t i = 1; i + 1 < hull.size(); ++i) {
      const cxd a = hull[0].z, b = hull[i].z, c = hull[i + 1].z;
      const double det = (b.real() - a.real()) * (c.imag() - a.imag()) - (c.real() - a.real()) * (b.imag() - a.imag());
      if (std::abs(det) < 1e-15) continue;
      const double wb = ((-a.real()) * (c.imag() - a.imag()) - (c.real() - a.real()) * (-a.imag())) / det;
      const double wc = ((b.real() - a.real()) * (-a.imag()) - (-a.real()) * (b.imag() - a.imag())) / det;
      const double wa = 1.0 - wb - wc;
      if (wa >= -1e-12 && wb >= -1e-12 && wc >= -1e-12) {
        double sa = std::max(wa, 0.0), sb = std::max(wb, 0.0), sc = std::max(wc, 0.0);
        const double total = sa + sb + sc;
        return {{hull[0].index, sa / total}, {hull[i].index, sb / total}, {hull[i + 1].index, sc / total}};
      }
    }
  }
  throw ValidationError("zero_overlap_weights: origin is not inside the hull");
}

}  // namespace qcp
