#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "covhuseg/mask.hpp"

namespace covhuseg {

/// Raised by every load/save routine; carries the offending path.
class ImageIoError : public std::runtime_error {
 public:
  ImageIoError(const std::filesystem::path& path, const std::string& reason);

  const std::filesystem::path& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::filesystem::path path_;
  std::string reason_;
};

/**
 * Supported containers are 8-bit grayscale PNG and binary PGM (P5).
 *
 * Loading sniffs the container from the file signature, not the extension.
 * Saving picks the container from the extension (".png" or ".pgm"). PNG
 * cannot encode a zero-width or zero-height image, so degenerate images
 * requested as ".png" are written as P5 bytes under the requested name;
 * the loader recognises them by signature.
 */

/// Foreground iff the stored 8-bit value is >= 128.
BinaryMask load_mask(const std::filesystem::path& path);

/// Writes foreground as 255 and background as 0.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Intensities are stored value / 255.
GrayImage load_gray(const std::filesystem::path& path);

/// Intensities are rounded to the nearest 8-bit level.
void save_gray(const GrayImage& image, const std::filesystem::path& path);

inline constexpr double kDefaultThreshold = 0.5;

/// Foreground iff intensity >= t. Throws std::invalid_argument for t outside [0,1].
BinaryMask threshold(const GrayImage& image, double t = kDefaultThreshold);

/// True for the extensions the batch tools pick up (.png, .pgm; case-insensitive).
bool has_image_extension(const std::filesystem::path& path);

}  // namespace covhuseg
