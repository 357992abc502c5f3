#pragma once

#include "covhuseg/hull.hpp"
#include "covhuseg/mask.hpp"

namespace covhuseg {

/// Lattice points of the closed polygon: pixel (x, y) is set iff
/// contains(poly, {x, y}) != outside. Throws std::out_of_range when a vertex
/// lies outside [0,width) x [0,height).
BinaryMask fill_convex(const ConvexPolygon& poly, int width, int height);

/// Same rule, OR-ed into an existing mask.
void fill_convex_into(const ConvexPolygon& poly, BinaryMask& mask);

}  // namespace covhuseg
