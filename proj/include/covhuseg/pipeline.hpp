#pragma once

#include <cstddef>

#include "covhuseg/hull.hpp"
#include "covhuseg/labeling.hpp"
#include "covhuseg/mask.hpp"
#include "covhuseg/mask_io.hpp"

namespace covhuseg {

/// Free parameters of the mask -> contour -> hull -> fill pipeline.
struct PipelineConfig {
  Connectivity connectivity = Connectivity::eight;
  HullAlgorithm hull_algorithm = HullAlgorithm::monotone_chain;
  /// Components with fewer pixels are dropped entirely. 0 keeps everything.
  std::size_t min_component_area = 0;
  /// Only used for probability-map input.
  double threshold = kDefaultThreshold;
  /// Re-run until the output stops changing (hulls that merged components
  /// get re-hulled as one).
  bool iterate_to_fixed_point = false;

  /// Throws std::invalid_argument when threshold is outside [0,1].
  void validate() const;
};

/**
 * @brief Replaces every connected component by the lattice points of its convex hull.
 *
 * Each retained component is labelled, reduced to its boundary pixels, hulled
 * and filled; the output is the union of those fills. Hulls that overlap are
 * simply unioned unless iterate_to_fixed_point is set.
 */
BinaryMask covhuseg(const BinaryMask& mask, const PipelineConfig& config = {});

/// covhuseg(threshold(image, config.threshold), config).
BinaryMask covhuseg_probmap(const GrayImage& image, const PipelineConfig& config = {});

/// Number of covhuseg applications until the output no longer changes
/// (0 when the input is already a fixed point). Stops at `limit`.
int iterations_to_fixed_point(const BinaryMask& mask, const PipelineConfig& config, int limit);

}  // namespace covhuseg
