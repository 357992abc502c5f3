#include "covhuseg/mask_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace covhuseg {

namespace fs = std::filesystem;

ImageIoError::ImageIoError(const fs::path& path, const std::string& reason)
    : std::runtime_error(path.string() + ": " + reason), path_(path), reason_(reason) {}

namespace {

// 8-bit single-channel raster, the common currency of both containers.
struct Raster8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<unsigned char> read_all(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw ImageIoError(path, "file does not exist");
  if (!fs::is_regular_file(path, ec)) throw ImageIoError(path, "not a regular file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError(path, "cannot open for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageIoError(path, "cannot open for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError(path, "write failed");
}

// --- PGM (P5) ---------------------------------------------------------------

class PgmHeaderReader {
 public:
  PgmHeaderReader(const std::vector<unsigned char>& bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  long read_int() {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 30)) throw ImageIoError(path_, "corrupt PGM header: value too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw ImageIoError(path_, "corrupt PGM header: expected integer");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ImageIoError(path_, "corrupt PGM header: missing separator before raster");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

Raster8 decode_pgm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  PgmHeaderReader reader(bytes, path);
  reader.skip(2);  // "P5"
  const long width = reader.read_int();
  const long height = reader.read_int();
  const long maxval = reader.read_int();
  if (maxval < 1 || maxval > 255) {
    throw ImageIoError(path, "unsupported bit depth: PGM maxval " + std::to_string(maxval) +
                                 " (only 8-bit supported)");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + n) throw ImageIoError(path, "corrupt PGM: truncated raster");

  Raster8 r;
  r.width = static_cast<int>(width);
  r.height = static_cast<int>(height);
  r.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                  bytes.begin() + static_cast<std::ptrdiff_t>(offset + n));
  if (maxval != 255) {
    for (auto& p : r.pixels) {
      if (p > maxval) throw ImageIoError(path, "corrupt PGM: sample exceeds maxval");
      p = static_cast<std::uint8_t>((p * 255 + maxval / 2) / maxval);
    }
  }
  return r;
}

std::vector<unsigned char> encode_pgm(const Raster8& r) {
  const std::string header =
      "P5\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.insert(out.end(), r.pixels.begin(), r.pixels.end());
  return out;
}

// --- PNG ---------------------------------------------------------------------

Raster8 decode_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError(path, "corrupt PNG: " + msg);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw ImageIoError(path, "unsupported bit depth: 16-bit PNG (only 8-bit supported)");
  }
  if (image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA)) {
    png_image_free(&image);
    throw ImageIoError(path, "unsupported channel count: expected single-channel grayscale");
  }
  image.format = PNG_FORMAT_GRAY;
  Raster8 r;
  r.width = static_cast<int>(image.width);
  r.height = static_cast<int>(image.height);
  r.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, r.pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError(path, "corrupt PNG: " + msg);
  }
  return r;
}

std::vector<unsigned char> encode_png(const Raster8& r, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(r.width);
  image.height = static_cast<png_uint_32>(r.height);
  image.format = PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, r.pixels.data(), 0, nullptr)) {
    throw ImageIoError(path, std::string("PNG encoding failed: ") + image.message);
  }
  std::vector<unsigned char> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, r.pixels.data(), 0, nullptr)) {
    throw ImageIoError(path, std::string("PNG encoding failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

// --- dispatch ----------------------------------------------------------------

Raster8 read_raster(const fs::path& path) {
  const auto bytes = read_all(path);
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes, path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') {
    throw ImageIoError(path, "unsupported Netpbm variant P" + std::string(1, bytes[1]) +
                                 " (only binary P5 graymaps)");
  }
  throw ImageIoError(path, "corrupt or unsupported container (expected PNG or P5 PGM)");
}

void write_raster(const Raster8& r, const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext != ".png" && ext != ".pgm") {
    throw ImageIoError(path, "unsupported output extension '" + ext + "' (use .png or .pgm)");
  }
  const bool degenerate = r.width == 0 || r.height == 0;
  if (ext == ".pgm" || degenerate) {
    write_all(path, encode_pgm(r));
  } else {
    write_all(path, encode_png(r, path));
  }
}

}  // namespace

BinaryMask load_mask(const fs::path& path) {
  const Raster8 r = read_raster(path);
  BinaryMask mask(r.width, r.height);
  for (std::size_t i = 0; i < r.pixels.size(); ++i) mask.set_at(i, r.pixels[i] >= 128);
  return mask;
}

void save_mask(const BinaryMask& mask, const fs::path& path) {
  Raster8 r{mask.width(), mask.height(), {}};
  r.pixels.resize(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) r.pixels[i] = mask.at(i) ? 255 : 0;
  write_raster(r, path);
}

GrayImage load_gray(const fs::path& path) {
  const Raster8 r = read_raster(path);
  std::vector<double> values(r.pixels.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = r.pixels[i] / 255.0;
  return GrayImage::from_values(r.width, r.height, std::move(values));
}

void save_gray(const GrayImage& image, const fs::path& path) {
  Raster8 r{image.width(), image.height(), {}};
  r.pixels.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    r.pixels[i] = static_cast<std::uint8_t>(std::lround(image.at(i) * 255.0));
  }
  write_raster(r, path);
}

BinaryMask threshold(const GrayImage& image, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [0,1], got " + std::to_string(t));
  }
  BinaryMask mask(image.width(), image.height());
  for (std::size_t i = 0; i < image.size(); ++i) mask.set_at(i, image.at(i) >= t);
  return mask;
}

bool has_image_extension(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".pgm";
}

}  // namespace covhuseg
