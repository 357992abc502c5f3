#include <gtest/gtest.h>
#include <png.h>

#include <cstring>
#include <random>

#include "covhuseg/mask_io.hpp"
#include "generators.hpp"
#include "tempdir.hpp"

using namespace covhuseg;
using covhuseg::testkit::TempDir;

namespace {

// Writes a PNG with an arbitrary simplified-API format, for the rejection tests.
void write_png(const std::filesystem::path& path, int w, int h, png_uint_32 format,
               const void* buffer) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  ASSERT_TRUE(png_image_write_to_file(&image, path.c_str(), 0, buffer, 0, nullptr));
}

}  // namespace

TEST(MaskIo, PgmValuesThresholdAt128) {
  TempDir dir;
  testkit::write_bytes(dir / "a.pgm", testkit::pgm_bytes(2, 2, {0, 255, 0, 255}));
  EXPECT_EQ(load_mask(dir / "a.pgm"), BinaryMask::from_values(2, 2, {false, true, false, true}));

  testkit::write_bytes(dir / "lo.pgm", testkit::pgm_bytes(1, 1, {127}));
  testkit::write_bytes(dir / "hi.pgm", testkit::pgm_bytes(1, 1, {128}));
  EXPECT_FALSE(load_mask(dir / "lo.pgm").get(0, 0));
  EXPECT_TRUE(load_mask(dir / "hi.pgm").get(0, 0));
}

TEST(MaskIo, PngValuesThresholdAt128) {
  TempDir dir;
  const unsigned char px[4] = {0, 127, 128, 255};
  write_png(dir / "g.png", 4, 1, PNG_FORMAT_GRAY, px);
  EXPECT_EQ(load_mask(dir / "g.png"), BinaryMask::from_values(4, 1, {false, false, true, true}));
}

TEST(MaskIo, SaveWrites255And0) {
  TempDir dir;
  save_mask(BinaryMask::from_values(2, 1, {true, false}), dir / "m.pgm");
  EXPECT_EQ(testkit::read_bytes(dir / "m.pgm"), testkit::pgm_bytes(2, 1, {255, 0}));

  save_mask(BinaryMask::from_values(1, 1, {true}), dir / "m.png");
  EXPECT_EQ(load_gray(dir / "m.png").get(0, 0), 1.0);
}

TEST(MaskIo, RoundTripRandomMasks) {
  TempDir dir;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> side(0, 40);
  for (int i = 0; i < 100; ++i) {
    const int w = side(rng), h = side(rng);
    const BinaryMask m = testkit::random_mask(rng, w, h, 0.4);
    const auto ext = i % 2 == 0 ? ".png" : ".pgm";
    const auto path = dir / ("m" + std::to_string(i) + ext);
    save_mask(m, path);
    EXPECT_EQ(load_mask(path), m) << path;
  }
}

TEST(MaskIo, ZeroSizedPngRoundTrips) {
  TempDir dir;
  save_mask(BinaryMask(0, 0), dir / "empty.png");
  const BinaryMask back = load_mask(dir / "empty.png");
  EXPECT_EQ(back.width(), 0);
  EXPECT_EQ(back.height(), 0);
  save_mask(BinaryMask(5, 0), dir / "flat.png");
  EXPECT_EQ(load_mask(dir / "flat.png").width(), 5);
}

TEST(MaskIo, GrayRoundTripIsExactOnLevels) {
  TempDir dir;
  std::vector<double> values;
  for (int v = 0; v < 256; ++v) values.push_back(v / 255.0);
  const GrayImage img = GrayImage::from_values(16, 16, values);
  save_gray(img, dir / "g.png");
  EXPECT_EQ(load_gray(dir / "g.png"), img);
  save_gray(img, dir / "g.pgm");
  EXPECT_EQ(load_gray(dir / "g.pgm"), img);
}

TEST(MaskIo, PgmSmallMaxvalIsRescaled) {
  TempDir dir;
  testkit::write_bytes(dir / "a.pgm", testkit::pgm_bytes(3, 1, {0, 1, 2}, 2));
  const GrayImage g = load_gray(dir / "a.pgm");
  EXPECT_DOUBLE_EQ(g.get(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(g.get(1, 0), 128.0 / 255.0);
  EXPECT_DOUBLE_EQ(g.get(2, 0), 1.0);
}

TEST(MaskIo, MissingFileNamesPath) {
  TempDir dir;
  const auto p = dir / "nope.png";
  try {
    load_mask(p);
    FAIL() << "expected ImageIoError";
  } catch (const ImageIoError& e) {
    EXPECT_EQ(e.path(), p);
    EXPECT_NE(std::string(e.what()).find("nope.png"), std::string::npos);
  }
}

TEST(MaskIo, RejectsSixteenBitPng) {
  TempDir dir;
  const std::uint16_t px[2] = {0, 65535};
  write_png(dir / "deep.png", 2, 1, PNG_FORMAT_LINEAR_Y, px);
  EXPECT_THROW(load_mask(dir / "deep.png"), ImageIoError);
}

TEST(MaskIo, RejectsColorAndAlphaPng) {
  TempDir dir;
  const unsigned char rgb[6] = {0, 0, 0, 255, 255, 255};
  write_png(dir / "rgb.png", 2, 1, PNG_FORMAT_RGB, rgb);
  EXPECT_THROW(load_mask(dir / "rgb.png"), ImageIoError);
  const unsigned char ga[4] = {0, 255, 255, 255};
  write_png(dir / "ga.png", 2, 1, PNG_FORMAT_GA, ga);
  EXPECT_THROW(load_mask(dir / "ga.png"), ImageIoError);
}

TEST(MaskIo, RejectsSixteenBitPgm) {
  TempDir dir;
  testkit::write_bytes(dir / "deep.pgm", testkit::pgm_bytes(1, 1, {0, 0}, 65535));
  EXPECT_THROW(load_mask(dir / "deep.pgm"), ImageIoError);
}

TEST(MaskIo, RejectsCorruptContainers) {
  TempDir dir;
  testkit::write_bytes(dir / "junk.png", "this is not an image");
  EXPECT_THROW(load_mask(dir / "junk.png"), ImageIoError);

  save_mask(BinaryMask(8, 8, true), dir / "ok.png");
  std::string bytes = testkit::read_bytes(dir / "ok.png");
  testkit::write_bytes(dir / "cut.png", bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(load_mask(dir / "cut.png"), ImageIoError);

  testkit::write_bytes(dir / "short.pgm", testkit::pgm_bytes(4, 4, {1, 2, 3}));
  EXPECT_THROW(load_mask(dir / "short.pgm"), ImageIoError);
}

TEST(MaskIo, SaveRejectsUnknownExtension) {
  TempDir dir;
  EXPECT_THROW(save_mask(BinaryMask(1, 1), dir / "m.bmp"), ImageIoError);
}

TEST(Threshold, Examples) {
  const GrayImage g = GrayImage::from_values(3, 1, {0.4, 0.5, 0.6});
  EXPECT_EQ(threshold(g, 0.5), BinaryMask::from_values(3, 1, {false, true, true}));
  EXPECT_EQ(threshold(GrayImage(2, 2, 0.0), 0.0), BinaryMask(2, 2, true));
}

TEST(Threshold, RejectsOutOfRange) {
  EXPECT_THROW(threshold(GrayImage(1, 1), -0.1), std::invalid_argument);
  EXPECT_THROW(threshold(GrayImage(1, 1), 1.5), std::invalid_argument);
}

TEST(Threshold, CountMatchesLoopAndIsMonotone) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> v(30 * 20);
    for (auto& x : v) x = u(rng);
    const GrayImage g = GrayImage::from_values(30, 20, v);
    double t1 = u(rng), t2 = u(rng);
    if (t1 > t2) std::swap(t1, t2);
    std::size_t expected = 0;
    for (double x : v) expected += x >= t1 ? 1 : 0;
    const BinaryMask lo = threshold(g, t1), hi = threshold(g, t2);
    EXPECT_EQ(lo.count(), expected);
    EXPECT_TRUE(hi.subset_of(lo));
  }
}

TEST(GrayImage, RejectsOutOfRangeValues) {
  EXPECT_THROW(GrayImage::from_values(1, 1, {1.5}), std::invalid_argument);
  EXPECT_THROW(GrayImage::from_values(2, 1, {0.5}), std::invalid_argument);
}

TEST(MaskIo, ExtensionFilter) {
  EXPECT_TRUE(has_image_extension("a.PNG"));
  EXPECT_TRUE(has_image_extension("dir/b.pgm"));
  EXPECT_FALSE(has_image_extension("c.txt"));
}
