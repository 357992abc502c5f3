#include "covhuseg/hull.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace covhuseg {

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw std::invalid_argument("convex polygon needs at least one vertex");
  if (std::min_element(vertices_.begin(), vertices_.end()) != vertices_.begin()) {
    throw std::invalid_argument("convex polygon must start at its lexicographically smallest vertex");
  }
  if (n == 2 && vertices_[0] == vertices_[1]) {
    throw std::invalid_argument("convex polygon vertices must be distinct");
  }
  if (n >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cross(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) <= 0) {
        throw std::invalid_argument("convex polygon vertices must make strict left turns");
      }
    }
    // Strict turns everywhere still admit a ring that winds twice; a simple
    // convex ring turns through exactly one revolution, i.e. every vertex
    // after the first is visited in angular order around vertex 0.
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (cross(vertices_[0], vertices_[i], vertices_[i + 1]) <= 0) {
        throw std::invalid_argument("convex polygon ring is not simple");
      }
    }
  }
}

HullAlgorithm parse_hull_algorithm(std::string_view text) {
  if (text == "monotone_chain") return HullAlgorithm::monotone_chain;
  if (text == "quickhull") return HullAlgorithm::quickhull;
  throw std::invalid_argument("unknown hull algorithm '" + std::string(text) +
                              "' (use monotone_chain or quickhull)");
}

std::string_view to_string(HullAlgorithm a) {
  return a == HullAlgorithm::monotone_chain ? "monotone_chain" : "quickhull";
}

namespace {

std::vector<Point> sorted_unique(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("convex hull of an empty point set");
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

ConvexPolygon monotone_chain(std::span<const Point> points) {
  const std::vector<Point> pts = sorted_unique(points);
  const std::size_t n = pts.size();
  if (n <= 2) return ConvexPolygon(pts);

  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return ConvexPolygon(std::move(hull));
}

namespace {

// Appends the hull vertices strictly left of a->b, in order from a to b
// (excluding both endpoints).
void quickhull_side(const Point& a, const Point& b, const std::vector<Point>& candidates,
                    std::vector<Point>& out) {
  if (candidates.empty()) return;
  std::int64_t best_dist = 0;
  Point far{};
  for (const Point& p : candidates) {
    const std::int64_t d = cross(a, b, p);
    if (d > best_dist || (d == best_dist && p < far)) {
      best_dist = d;
      far = p;
    }
  }
  std::vector<Point> left_of_a_far;
  std::vector<Point> left_of_far_b;
  for (const Point& p : candidates) {
    if (cross(a, far, p) > 0) {
      left_of_a_far.push_back(p);
    } else if (cross(far, b, p) > 0) {
      left_of_far_b.push_back(p);
    }
  }
  quickhull_side(a, far, left_of_a_far, out);
  out.push_back(far);
  quickhull_side(far, b, left_of_far_b, out);
}

}  // namespace

ConvexPolygon quickhull(std::span<const Point> points) {
  const std::vector<Point> pts = sorted_unique(points);
  if (pts.size() <= 2) return ConvexPolygon(pts);

  const Point lo = pts.front();
  const Point hi = pts.back();
  std::vector<Point> below;  // cross(lo, hi, p) < 0
  std::vector<Point> above;
  for (const Point& p : pts) {
    const std::int64_t c = cross(lo, hi, p);
    if (c < 0) {
      below.push_back(p);
    } else if (c > 0) {
      above.push_back(p);
    }
  }
  // Canonical ring: lo, the cross < 0 chain from lo to hi, hi, then the
  // cross > 0 chain back to lo. quickhull_side(hi, lo) yields the former
  // ordered hi -> lo, and quickhull_side(lo, hi) the latter ordered lo -> hi.
  std::vector<Point> lower_chain;
  quickhull_side(hi, lo, below, lower_chain);
  std::vector<Point> upper_chain;
  quickhull_side(lo, hi, above, upper_chain);

  std::vector<Point> hull{lo};
  hull.insert(hull.end(), lower_chain.rbegin(), lower_chain.rend());
  hull.push_back(hi);
  hull.insert(hull.end(), upper_chain.rbegin(), upper_chain.rend());
  return ConvexPolygon(std::move(hull));
}

ConvexPolygon convex_hull(std::span<const Point> points, HullAlgorithm algorithm) {
  return algorithm == HullAlgorithm::monotone_chain ? monotone_chain(points) : quickhull(points);
}

Location contains(const ConvexPolygon& poly, const Point& p) {
  const auto& v = poly.vertices();
  switch (v.size()) {
    case 0:
      return Location::outside;
    case 1:
      return p == v[0] ? Location::on_boundary : Location::outside;
    case 2: {
      if (cross(v[0], v[1], p) != 0) return Location::outside;
      const bool within = std::min(v[0].x, v[1].x) <= p.x && p.x <= std::max(v[0].x, v[1].x) &&
                          std::min(v[0].y, v[1].y) <= p.y && p.y <= std::max(v[0].y, v[1].y);
      return within ? Location::on_boundary : Location::outside;
    }
    default:
      break;
  }
  bool on_edge = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t c = cross(v[i], v[(i + 1) % v.size()], p);
    if (c < 0) return Location::outside;
    if (c == 0) on_edge = true;
  }
  return on_edge ? Location::on_boundary : Location::inside;
}

}  // namespace covhuseg
