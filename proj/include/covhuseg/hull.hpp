#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "covhuseg/mask.hpp"

namespace covhuseg {

/**
 * @brief Convex hull of an integer point set in canonical form.
 *
 * Vertices start at the lexicographically smallest point (x, then y) and
 * every consecutive triple satisfies cross(b - a, c - a) > 0. In image
 * coordinates (y down) that is a left turn; collinear boundary points are
 * never stored. A hull has 1 vertex (point), 2 (segment) or at least 3.
 */
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Validates the canonical-form invariants; throws std::invalid_argument.
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  friend bool operator==(const ConvexPolygon&, const ConvexPolygon&) = default;

 private:
  std::vector<Point> vertices_;
};

/// cross(b - a, c - a); exact for coordinates well beyond image sizes.
constexpr std::int64_t cross(const Point& a, const Point& b, const Point& c) {
  return (static_cast<std::int64_t>(b.x) - a.x) * (static_cast<std::int64_t>(c.y) - a.y) -
         (static_cast<std::int64_t>(b.y) - a.y) * (static_cast<std::int64_t>(c.x) - a.x);
}

enum class HullAlgorithm { monotone_chain, quickhull };

HullAlgorithm parse_hull_algorithm(std::string_view text);
std::string_view to_string(HullAlgorithm a);

/// Andrew's monotone chain. Throws std::invalid_argument on empty input.
ConvexPolygon monotone_chain(std::span<const Point> points);

/// Recursive quickhull. Same contract as monotone_chain.
ConvexPolygon quickhull(std::span<const Point> points);

ConvexPolygon convex_hull(std::span<const Point> points, HullAlgorithm algorithm);

enum class Location { inside, on_boundary, outside };

/// Exact point location against a closed convex polygon.
Location contains(const ConvexPolygon& poly, const Point& p);

}  // namespace covhuseg
