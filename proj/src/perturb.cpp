#include "covhuseg/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "covhuseg/labeling.hpp"
#include "covhuseg/raster.hpp"
#include "covhuseg/rng.hpp"

namespace covhuseg {

// --- noise -------------------------------------------------------------------

namespace {

void check_std(double std) {
  if (!(std >= 0.0) || !std::isfinite(std)) {
    throw std::invalid_argument("noise std must be finite and >= 0, got " + std::to_string(std));
  }
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1], got " + std::to_string(p));
  }
}

}  // namespace

GrayImage add_gaussian_noise(const GrayImage& image, double std, std::uint64_t seed) {
  check_std(std);
  Rng rng(seed);
  std::vector<double> values(image.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::clamp(image.at(i) + std * rng.normal(), 0.0, 1.0);
  }
  return GrayImage::from_values(image.width(), image.height(), std::move(values));
}

std::vector<double> gaussian_noise_samples(std::size_t count, double std, std::uint64_t seed) {
  check_std(std);
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = std * rng.normal();
  return out;
}

// --- degradation -------------------------------------------------------------

void DegradeSpec::validate() const {
  if (hole_count < 0) throw std::invalid_argument("hole_count must be >= 0");
  if (hole_radius_min < 0 || hole_radius_max < hole_radius_min) {
    throw std::invalid_argument("hole radius range must satisfy 0 <= min <= max");
  }
  check_prob(boundary_erosion_prob, "boundary_erosion_prob");
  check_prob(pixel_dropout_prob, "pixel_dropout_prob");
  check_prob(speckle_prob, "speckle_prob");
}

namespace {

// Chessboard distance to the nearest background pixel, treating everything
// outside the canvas as background. Background pixels get 0.
std::vector<int> chessboard_depth(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> d(mask.size(), 0);
  auto at = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return d[static_cast<std::size_t>(y) * w + x];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      d[static_cast<std::size_t>(y) * w + x] =
          1 + std::min({at(x - 1, y), at(x - 1, y - 1), at(x, y - 1), at(x + 1, y - 1)});
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      if (!mask.get(x, y)) continue;
      auto& cur = d[static_cast<std::size_t>(y) * w + x];
      cur = std::min(cur, 1 + std::min({at(x + 1, y), at(x + 1, y + 1), at(x, y + 1),
                                        at(x - 1, y + 1)}));
    }
  }
  return d;
}

void punch_holes(const BinaryMask& original, BinaryMask& out, const DegradeSpec& spec, Rng& rng) {
  if (spec.hole_count == 0) return;
  const std::vector<int> depth = chessboard_depth(original);
  const int w = original.width();
  for (int k = 0; k < spec.hole_count; ++k) {
    const int r = static_cast<int>(rng.between(spec.hole_radius_min, spec.hole_radius_max));
    // depth >= r + 2 puts the (2r+3)-wide square, and so the disc plus its ring, inside the mask.
    std::vector<std::size_t> centres;
    for (std::size_t i = 0; i < depth.size(); ++i) {
      if (depth[i] >= r + 2) centres.push_back(i);
    }
    if (centres.empty()) continue;
    const std::size_t c = centres[rng.below(centres.size())];
    const int cx = static_cast<int>(c % static_cast<std::size_t>(w));
    const int cy = static_cast<int>(c / static_cast<std::size_t>(w));
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (dx * dx + dy * dy <= r * r) out.set(cx + dx, cy + dy, false);
      }
    }
  }
}

bool on_boundary(const BinaryMask& m, int x, int y) {
  if (x == 0 || y == 0 || x == m.width() - 1 || y == m.height() - 1) return true;
  return !m.get(x - 1, y) || !m.get(x + 1, y) || !m.get(x, y - 1) || !m.get(x, y + 1);
}

}  // namespace

BinaryMask degrade(const BinaryMask& mask, const DegradeSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  BinaryMask out = mask;
  punch_holes(mask, out, spec, rng);

  if (spec.boundary_erosion_prob > 0.0) {
    const BinaryMask before = out;
    for (int y = 0; y < before.height(); ++y) {
      for (int x = 0; x < before.width(); ++x) {
        if (before.get(x, y) && on_boundary(before, x, y) && rng.bernoulli(spec.boundary_erosion_prob)) {
          out.set(x, y, false);
        }
      }
    }
  }
  if (spec.pixel_dropout_prob > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out.at(i) && rng.bernoulli(spec.pixel_dropout_prob)) out.set_at(i, false);
    }
  }
  if (spec.speckle_prob > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!mask.at(i) && rng.bernoulli(spec.speckle_prob)) out.set_at(i, true);
    }
  }
  return out;
}

// --- synthetic convex masks --------------------------------------------------

SynthShape parse_synth_shape(std::string_view text) {
  if (text == "ellipse") return SynthShape::ellipse;
  if (text == "random_convex_polygon" || text == "polygon") return SynthShape::random_convex_polygon;
  throw std::invalid_argument("unknown synth shape '" + std::string(text) +
                              "' (use ellipse or random_convex_polygon)");
}

std::string_view to_string(SynthShape s) {
  return s == SynthShape::ellipse ? "ellipse" : "random_convex_polygon";
}

void SynthSpec::validate() const {
  if (size_min < 1 || size_max < size_min) {
    throw std::invalid_argument("size range must satisfy 1 <= min <= max");
  }
  if (count_per_image < 1) throw std::invalid_argument("count_per_image must be >= 1");
  if (width < 2 * size_max + 1 || height < 2 * size_max + 1) {
    throw std::invalid_argument("canvas " + std::to_string(width) + "x" + std::to_string(height) +
                                " too small for size up to " + std::to_string(size_max));
  }
}

namespace {

struct Box {
  int x0, y0, x1, y1;  // inclusive

  // One clear row or column between boxes keeps components non-adjacent
  // under either connectivity.
  bool touches(const Box& o) const {
    return x0 <= o.x1 + 1 && o.x0 <= x1 + 1 && y0 <= o.y1 + 1 && o.y0 <= y1 + 1;
  }
};

// Candidate lattice points for one shape; empty when the draw is unusable.
std::vector<Point> draw_shape(const SynthSpec& spec, Rng& rng) {
  std::vector<Point> pts;
  const double w = spec.width;
  const double h = spec.height;
  if (spec.shape == SynthShape::ellipse) {
    const double a = static_cast<double>(rng.between(spec.size_min, spec.size_max));
    const double b = static_cast<double>(rng.between(spec.size_min, spec.size_max));
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double hx = std::sqrt(a * a * c * c + b * b * s * s);
    const double hy = std::sqrt(a * a * s * s + b * b * c * c);
    if (2 * hx > w - 1 || 2 * hy > h - 1) return pts;
    const double cx = rng.uniform(hx, w - 1 - hx);
    const double cy = rng.uniform(hy, h - 1 - hy);
    for (int y = static_cast<int>(std::ceil(cy - hy)); y <= static_cast<int>(std::floor(cy + hy)); ++y) {
      for (int x = static_cast<int>(std::ceil(cx - hx)); x <= static_cast<int>(std::floor(cx + hx)); ++x) {
        const double u = ((x - cx) * c + (y - cy) * s) / a;
        const double v = (-(x - cx) * s + (y - cy) * c) / b;
        if (u * u + v * v <= 1.0 && x >= 0 && y >= 0 && x < spec.width && y < spec.height) {
          pts.push_back({x, y});
        }
      }
    }
  } else {
    const int r = spec.size_max;
    const int cx = static_cast<int>(rng.between(r, spec.width - 1 - r));
    const int cy = static_cast<int>(rng.between(r, spec.height - 1 - r));
    const int n = static_cast<int>(rng.between(3, 9));
    for (int i = 0; i < n; ++i) {
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double rad = rng.uniform(spec.size_min, spec.size_max);
      pts.push_back({cx + static_cast<int>(std::lround(rad * std::cos(angle))),
                     cy + static_cast<int>(std::lround(rad * std::sin(angle)))});
    }
  }
  return pts;
}

}  // namespace

SynthMask gen_convex_mask(const SynthSpec& spec) {
  spec.validate();
  constexpr int kAttemptsPerComponent = 1000;
  Rng rng(spec.seed);
  SynthMask out{BinaryMask(spec.width, spec.height), {}};
  std::vector<Box> placed;

  for (int k = 0; k < spec.count_per_image; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < kAttemptsPerComponent && !done; ++attempt) {
      const std::vector<Point> pts = draw_shape(spec, rng);
      if (pts.empty()) continue;
      // Re-filling the hull makes the set exactly the lattice points of its hull.
      const ConvexPolygon hull = monotone_chain(pts);
      const BinaryMask shape = fill_convex(hull, spec.width, spec.height);
      if (label(shape, Connectivity::four).component_count() != 1) continue;

      Box box{spec.width, spec.height, -1, -1};
      for (const Point& v : hull.vertices()) {
        box.x0 = std::min(box.x0, v.x);
        box.y0 = std::min(box.y0, v.y);
        box.x1 = std::max(box.x1, v.x);
        box.y1 = std::max(box.y1, v.y);
      }
      if (std::any_of(placed.begin(), placed.end(), [&](const Box& b) { return b.touches(box); })) {
        continue;
      }
      placed.push_back(box);
      out.mask |= shape;
      out.hulls.push_back(hull);
      done = true;
    }
    if (!done) {
      throw std::runtime_error("could not place component " + std::to_string(k + 1) + " of " +
                               std::to_string(spec.count_per_image) + " after " +
                               std::to_string(kAttemptsPerComponent) + " attempts");
    }
  }
  return out;
}

// --- experiment --------------------------------------------------------------

std::string trial_id(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%04llu", static_cast<unsigned long long>(index));
  return buf;
}

Trial make_trial(const SynthSpec& synth, const DegradeSpec& deg, std::uint64_t index) {
  SynthSpec s = synth;
  s.seed ^= index;
  DegradeSpec d = deg;
  d.seed ^= index;
  BinaryMask gt = gen_convex_mask(s).mask;
  BinaryMask degraded = degrade(gt, d);
  return {std::move(gt), std::move(degraded)};
}

ExperimentResult improvement_experiment(const SynthSpec& synth, const DegradeSpec& deg, int trials,
                                        const PipelineConfig& config) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  synth.validate();
  deg.validate();
  ExperimentResult result;
  result.records.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    const Trial trial = make_trial(synth, deg, static_cast<std::uint64_t>(t));
    EvalRecord rec = evaluate_pair(trial.degraded, trial.ground_truth, config, trial_id(t));
    if (rec.dice_with < rec.dice_without) ++result.violations;
    result.records.push_back(std::move(rec));
  }
  result.row = aggregate(result.records, std::string(kSyntheticModelTag), "-");
  return result;
}

}  // namespace covhuseg
