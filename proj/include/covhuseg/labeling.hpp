#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "covhuseg/mask.hpp"

namespace covhuseg {

enum class Connectivity { four, eight };

Connectivity parse_connectivity(std::string_view text);  // "4"/"four" or "8"/"eight"
std::string_view to_string(Connectivity c);

/// Per-pixel component ids: 0 is background, components are 1..component_count().
class LabeledMask {
 public:
  LabeledMask() = default;
  LabeledMask(int width, int height, std::vector<std::int32_t> labels, int component_count);

  int width() const { return width_; }
  int height() const { return height_; }
  int component_count() const { return component_count_; }

  std::int32_t label(int x, int y) const {
    return labels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x];
  }
  const std::vector<std::int32_t>& labels() const { return labels_; }

  /// Pixel count per component, indexed by id (entry 0 is the background).
  std::vector<std::size_t> areas() const;

  /// Mask of a single component.
  BinaryMask component_mask(int id) const;

  friend bool operator==(const LabeledMask&, const LabeledMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int32_t> labels_;
  int component_count_ = 0;
};

/// Two-pass union-find labeling. Components are numbered in raster order of
/// their first (topmost, then leftmost) pixel.
LabeledMask label(const BinaryMask& mask, Connectivity conn = Connectivity::eight);

/// Pixels of component `id` on the image border or with a 4-neighbour outside
/// the component, in raster order. Throws std::out_of_range for a bad id.
std::vector<Point> boundary_pixels(const LabeledMask& labeled, int id);

/// boundary_pixels for every component in one sweep; index k-1 holds component k.
std::vector<std::vector<Point>> all_boundary_pixels(const LabeledMask& labeled);

}  // namespace covhuseg
