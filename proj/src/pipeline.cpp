#include "covhuseg/pipeline.hpp"

#include <stdexcept>
#include <string>

#include "covhuseg/raster.hpp"

namespace covhuseg {

void PipelineConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [0,1], got " + std::to_string(threshold));
  }
}

namespace {

BinaryMask hull_pass(const BinaryMask& mask, const PipelineConfig& config) {
  const LabeledMask labeled = label(mask, config.connectivity);
  const auto areas = labeled.areas();
  const auto boundaries = all_boundary_pixels(labeled);

  BinaryMask out(mask.width(), mask.height());
  for (int id = 1; id <= labeled.component_count(); ++id) {
    if (areas[id] < config.min_component_area) continue;
    const ConvexPolygon hull = convex_hull(boundaries[id - 1], config.hull_algorithm);
    fill_convex_into(hull, out);
  }
  // The closed fill already contains every retained pixel; keep the union explicit
  // so the superset property does not hinge on the raster inclusion rule.
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const auto id = labeled.labels()[i];
    if (id > 0 && areas[id] >= config.min_component_area) out.set_at(i, true);
  }
  return out;
}

}  // namespace

BinaryMask covhuseg(const BinaryMask& mask, const PipelineConfig& config) {
  config.validate();
  BinaryMask out = hull_pass(mask, config);
  if (!config.iterate_to_fixed_point) return out;
  // Each extra pass that changes anything merges at least two components,
  // so this terminates after at most component_count passes.
  for (;;) {
    BinaryMask next = hull_pass(out, config);
    if (next == out) return out;
    out = std::move(next);
  }
}

BinaryMask covhuseg_probmap(const GrayImage& image, const PipelineConfig& config) {
  config.validate();
  return covhuseg(threshold(image, config.threshold), config);
}

int iterations_to_fixed_point(const BinaryMask& mask, const PipelineConfig& config, int limit) {
  PipelineConfig single = config;
  single.iterate_to_fixed_point = false;
  BinaryMask current = mask;
  for (int k = 0; k < limit; ++k) {
    BinaryMask next = covhuseg(current, single);
    if (next == current) return k;
    current = std::move(next);
  }
  return limit;
}

}  // namespace covhuseg
