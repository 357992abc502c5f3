#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "covhuseg/hull.hpp"
#include "covhuseg/mask.hpp"
#include "covhuseg/metrics.hpp"
#include "covhuseg/pipeline.hpp"

namespace covhuseg {

inline constexpr double kDefaultNoiseStd = 0.28;

/// Adds an independent N(0, std^2) sample to every intensity (raster order,
/// one Rng stream seeded with `seed`) and clamps the result to [0, 1].
/// Throws std::invalid_argument for a negative or non-finite std.
GrayImage add_gaussian_noise(const GrayImage& image, double std = kDefaultNoiseStd,
                             std::uint64_t seed = 0);

/// The first `count` pre-clamp offsets add_gaussian_noise draws for `seed`.
std::vector<double> gaussian_noise_samples(std::size_t count, double std, std::uint64_t seed);

/**
 * @brief Pixel-removal model of a segmentation network's failure modes.
 *
 * Applied in order: interior holes, boundary erosion, pixel dropout, then the
 * optional additive speckle. Everything except speckle only removes pixels.
 */
struct DegradeSpec {
  int hole_count = 0;
  int hole_radius_min = 0;
  int hole_radius_max = 0;
  double boundary_erosion_prob = 0.0;
  double pixel_dropout_prob = 0.0;
  /// Background -> foreground flips; breaks the subset guarantee when > 0.
  double speckle_prob = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  bool subtractive() const { return speckle_prob == 0.0; }
};

/// Holes are discs of a radius drawn from [hole_radius_min, hole_radius_max],
/// centred on a pixel whose disc plus a one-pixel ring is entirely foreground,
/// so the original component boundary survives. A hole with no admissible
/// centre is skipped.
BinaryMask degrade(const BinaryMask& mask, const DegradeSpec& spec);

enum class SynthShape { ellipse, random_convex_polygon };

SynthShape parse_synth_shape(std::string_view text);
std::string_view to_string(SynthShape s);

/// Random convex stand-ins for ball-shaped objects. Sizes are semi-axes
/// (ellipse) or vertex radii (polygon) in pixels.
struct SynthSpec {
  SynthShape shape = SynthShape::ellipse;
  int size_min = 6;
  int size_max = 12;
  int count_per_image = 1;
  int width = 64;
  int height = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthMask {
  BinaryMask mask;
  /// Hull of each component, in placement order.
  std::vector<ConvexPolygon> hulls;
};

/// Every component is exactly the lattice points of its hull, 4-connected,
/// and separated from the others by at least one background row or column.
/// Throws std::runtime_error when placement fails after bounded retries.
SynthMask gen_convex_mask(const SynthSpec& spec);

struct Trial {
  BinaryMask ground_truth;
  BinaryMask degraded;
};

/// Trial `index` uses seed ^ index for both the shape and degradation streams.
Trial make_trial(const SynthSpec& synth, const DegradeSpec& deg, std::uint64_t index);

struct ExperimentResult {
  std::vector<EvalRecord> records;
  ReportRow row;
  /// Trials with dice_with < dice_without. Must be 0 for subtractive specs.
  std::size_t violations = 0;
};

inline constexpr std::string_view kSyntheticModelTag = "synthetic";

/// Runs `trials` synthetic (ground truth, degraded) pairs through evaluate_pair.
ExperimentResult improvement_experiment(const SynthSpec& synth, const DegradeSpec& deg, int trials,
                                        const PipelineConfig& config = {});

/// "trial_0007"-style identifier shared by the experiment records and the synth CLI.
std::string trial_id(std::uint64_t index);

}  // namespace covhuseg
