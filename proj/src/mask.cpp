#include "covhuseg/mask.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace covhuseg {

namespace {

void check_dims(int width, int height) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("negative image dimensions " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

void check_intensity(double v) {
  // NaN fails both comparisons.
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("intensity outside [0,1]: " + std::to_string(v));
  }
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

BinaryMask BinaryMask::from_values(int width, int height, const std::vector<bool>& values) {
  BinaryMask m(width, height);
  if (values.size() != m.size()) {
    throw std::invalid_argument("mask data length " + std::to_string(values.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = values[i] ? 1 : 0;
  return m;
}

std::size_t BinaryMask::count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  check_same_dimensions(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] && !other.data_[i]) return false;
  }
  return true;
}

BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
  check_same_dimensions(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] |= other.data_[i];
  return *this;
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  check_intensity(fill);
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage GrayImage::from_values(int width, int height, std::vector<double> values) {
  check_dims(width, height);
  if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("image data length does not match dimensions");
  }
  for (double v : values) check_intensity(v);
  GrayImage img;
  img.width_ = width;
  img.height_ = height;
  img.data_ = std::move(values);
  return img;
}

void GrayImage::set(int x, int y, double v) {
  check_intensity(v);
  data_[static_cast<std::size_t>(y) * width_ + x] = v;
}

void GrayImage::set_at(std::size_t i, double v) {
  check_intensity(v);
  data_[i] = v;
}

void check_same_dimensions(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
  }
}

}  // namespace covhuseg
