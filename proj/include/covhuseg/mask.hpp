#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace covhuseg {

/// Integer pixel coordinate. x is the column, y the row, origin top-left.
struct Point {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/**
 * @brief Rectangular grid of foreground/background pixels, row-major.
 *
 * A 0x0 mask is legal and behaves as an empty set everywhere.
 */
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);

  /// Builds a mask from row-major values; throws if the size does not match.
  static BinaryMask from_values(int width, int height, const std::vector<bool>& values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  bool get(int x, int y) const { return data_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { data_[index(x, y)] = value ? 1 : 0; }

  /// Raw access by linear index (row-major).
  bool at(std::size_t i) const { return data_[i] != 0; }
  void set_at(std::size_t i, bool value) { data_[i] = value ? 1 : 0; }

  std::size_t count() const;

  /// True when every foreground pixel of this mask is foreground in `other`.
  bool subset_of(const BinaryMask& other) const;

  BinaryMask& operator|=(const BinaryMask& other);

  const std::vector<std::uint8_t>& raw() const { return data_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Row-major intensities, each in [0, 1].
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, double fill = 0.0);

  /// Throws std::invalid_argument if a value is outside [0,1] or the size is wrong.
  static GrayImage from_values(int width, int height, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double get(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  void set(int x, int y, double v);

  double at(std::size_t i) const { return data_[i]; }
  void set_at(std::size_t i, double v);

  const std::vector<double>& raw() const { return data_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

void check_same_dimensions(const BinaryMask& a, const BinaryMask& b);

}  // namespace covhuseg
