#include "covhuseg/raster.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covhuseg {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void check_vertices(const ConvexPolygon& poly, const BinaryMask& mask) {
  for (const Point& v : poly.vertices()) {
    if (!mask.in_bounds(v.x, v.y)) {
      throw std::out_of_range("polygon vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                              ") outside " + std::to_string(mask.width()) + "x" +
                              std::to_string(mask.height()) + " canvas");
    }
  }
}

// Lattice points of a segment: gcd(|dx|,|dy|) + 1 evenly spaced points.
void fill_segment(const Point& a, const Point& b, BinaryMask& mask) {
  const int dx = b.x - a.x;
  const int dy = b.y - a.y;
  const int steps = std::gcd(std::abs(dx), std::abs(dy));
  const int sx = steps == 0 ? 0 : dx / steps;
  const int sy = steps == 0 ? 0 : dy / steps;
  for (int k = 0; k <= steps; ++k) mask.set(a.x + k * sx, a.y + k * sy, true);
}

}  // namespace

void fill_convex_into(const ConvexPolygon& poly, BinaryMask& mask) {
  check_vertices(poly, mask);
  const auto& v = poly.vertices();
  if (v.empty()) return;
  if (v.size() == 1) {
    mask.set(v[0].x, v[0].y, true);
    return;
  }
  if (v.size() == 2) {
    fill_segment(v[0], v[1], mask);
    return;
  }

  const auto [ymin_it, ymax_it] =
      std::minmax_element(v.begin(), v.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
  const int ymin = ymin_it->y;
  const int ymax = ymax_it->y;

  // Row y is the intersection of the closed half-planes
  //   dx * (y - ay) - dy * (x - ax) >= 0
  // for every edge a -> b (dx = bx - ax, dy = by - ay), solved for x exactly.
  for (int y = ymin; y <= ymax; ++y) {
    std::int64_t lo = 0;
    std::int64_t hi = mask.width() - 1;
    for (std::size_t i = 0; i < v.size() && lo <= hi; ++i) {
      const Point& a = v[i];
      const Point& b = v[(i + 1) % v.size()];
      const std::int64_t dx = b.x - a.x;
      const std::int64_t dy = b.y - a.y;
      const std::int64_t rhs = dx * (static_cast<std::int64_t>(y) - a.y);
      if (dy > 0) {
        hi = std::min(hi, a.x + floor_div(rhs, dy));
      } else if (dy < 0) {
        lo = std::max(lo, a.x + ceil_div(rhs, dy));
      } else if (rhs < 0) {
        hi = lo - 1;
      }
    }
    for (std::int64_t x = lo; x <= hi; ++x) mask.set(static_cast<int>(x), y, true);
  }
}

BinaryMask fill_convex(const ConvexPolygon& poly, int width, int height) {
  BinaryMask mask(width, height);
  fill_convex_into(poly, mask);
  return mask;
}

}  // namespace covhuseg
