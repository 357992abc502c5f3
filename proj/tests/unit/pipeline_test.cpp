#include <gtest/gtest.h>

#include <random>

#include "covhuseg/labeling.hpp"
#include "covhuseg/perturb.hpp"
#include "covhuseg/pipeline.hpp"
#include "covhuseg/raster.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace covhuseg;

TEST(Pipeline, EmptyStaysEmpty) {
  EXPECT_EQ(covhuseg::covhuseg(BinaryMask(8, 8)), BinaryMask(8, 8));
  EXPECT_EQ(covhuseg::covhuseg(BinaryMask(0, 0)), BinaryMask(0, 0));
}

TEST(Pipeline, DiskIsFixedPoint) {
  const auto d = testkit::disk(32, 32, 15, 16, 9);
  EXPECT_EQ(covhuseg::covhuseg(d), d);
  EXPECT_EQ(iterations_to_fixed_point(d, {}, 10), 0);
}

TEST(Pipeline, FillsHoleInDisk) {
  const auto d = testkit::disk(16, 16, 8, 8, 6);
  BinaryMask holed = d;
  for (int y = 7; y <= 9; ++y)
    for (int x = 7; x <= 9; ++x) holed.set(x, y, false);
  const auto expected = oracle::pixelwise_fill(oracle::brute_hull(testkit::foreground(holed)), 16, 16);
  EXPECT_EQ(expected, d);
  EXPECT_EQ(covhuseg::covhuseg(holed), expected);
}

TEST(Pipeline, LShapeBecomesTriangleFill) {
  const auto m = BinaryMask::from_values(3, 3, {true, false, false, true, false, false, true, true, true});
  const auto out = covhuseg::covhuseg(m);
  EXPECT_EQ(out, BinaryMask::from_values(3, 3, {true, false, false, true, true, false, true, true, true}));
}

TEST(Pipeline, ProbabilityMapComposesWithThreshold) {
  EXPECT_EQ(covhuseg_probmap(GrayImage(5, 5, 0.9)), BinaryMask(5, 5, true));
  EXPECT_EQ(covhuseg_probmap(GrayImage(5, 5, 0.1)), BinaryMask(5, 5));
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(24 * 24);
    for (auto& x : v) x = u(rng) * u(rng);
    const auto img = GrayImage::from_values(24, 24, v);
    PipelineConfig c;
    c.threshold = u(rng);
    EXPECT_EQ(covhuseg_probmap(img, c), covhuseg::covhuseg(threshold(img, c.threshold), c));
  }
  PipelineConfig bad;
  bad.threshold = 2.0;
  EXPECT_THROW(covhuseg_probmap(GrayImage(1, 1), bad), std::invalid_argument);
}

TEST(Pipeline, SupersetAndAlgorithmInvariance) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 200; ++i) {
    const auto m = i % 2 ? testkit::random_blob_mask(rng, 48, 40) : testkit::random_mask(rng, 30, 30, 0.1);
    for (auto conn : {Connectivity::four, Connectivity::eight}) {
      PipelineConfig a;
      a.connectivity = conn;
      PipelineConfig b = a;
      b.hull_algorithm = HullAlgorithm::quickhull;
      const auto out = covhuseg::covhuseg(m, a);
      EXPECT_TRUE(m.subset_of(out));
      EXPECT_EQ(covhuseg::covhuseg(m, b), out);
    }
  }
}

TEST(Pipeline, ConvergesWithinComponentCount) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const auto m = testkit::random_blob_mask(rng, 40, 40);
    const int n = label(m).component_count();
    const int it = iterations_to_fixed_point(m, {}, n + 5);
    EXPECT_LE(it, n);
    PipelineConfig fixed;
    fixed.iterate_to_fixed_point = true;
    const auto out = covhuseg::covhuseg(m, fixed);
    EXPECT_EQ(covhuseg::covhuseg(out), out);
  }
}

TEST(Pipeline, MinComponentAreaDropsSmallComponents) {
  BinaryMask m(10, 10);
  m.set(0, 0, true);
  for (int y = 4; y < 8; ++y)
    for (int x = 4; x < 8; ++x) m.set(x, y, true);
  PipelineConfig c;
  c.min_component_area = 2;
  const auto out = covhuseg::covhuseg(m, c);
  EXPECT_FALSE(out.get(0, 0));
  EXPECT_EQ(out.count(), 16u);
  c.min_component_area = 0;
  EXPECT_TRUE(covhuseg::covhuseg(m, c).get(0, 0));
}

TEST(Pipeline, SeparatedConvexComponentsAreFixedAndConvex) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    SynthSpec s;
    s.seed = seed;
    s.count_per_image = 1 + static_cast<int>(seed % 3);
    s.shape = seed % 2 ? SynthShape::random_convex_polygon : SynthShape::ellipse;
    s.width = s.height = 96;
    const auto gen = gen_convex_mask(s);
    EXPECT_EQ(covhuseg::covhuseg(gen.mask), gen.mask);

    DegradeSpec d;
    d.seed = seed;
    d.hole_count = 2;
    d.hole_radius_min = 1;
    d.hole_radius_max = 2;
    d.pixel_dropout_prob = 0.1;
    PipelineConfig fixed;
    fixed.iterate_to_fixed_point = true;
    const auto out = covhuseg::covhuseg(degrade(gen.mask, d), fixed);
    const auto lm = label(out);
    for (int id = 1; id <= lm.component_count(); ++id) {
      const auto comp = lm.component_mask(id);
      EXPECT_EQ(oracle::pixelwise_fill(oracle::brute_hull(boundary_pixels(lm, id)), 96, 96), comp);
    }
  }
}
