#include "covhuseg/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace covhuseg {

namespace {

struct Overlap {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t both = 0;
};

Overlap overlap(const BinaryMask& a, const BinaryMask& b) {
  check_same_dimensions(a, b);
  Overlap o;
  const auto& ra = a.raw();
  const auto& rb = b.raw();
  for (std::size_t i = 0; i < ra.size(); ++i) {
    o.a += ra[i];
    o.b += rb[i];
    o.both += ra[i] & rb[i];
  }
  return o;
}

}  // namespace

double dice(const BinaryMask& a, const BinaryMask& b) {
  const Overlap o = overlap(a, b);
  if (o.a + o.b == 0) return 1.0;
  return static_cast<double>(2 * o.both) / static_cast<double>(o.a + o.b);
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  const Overlap o = overlap(a, b);
  const std::size_t uni = o.a + o.b - o.both;
  if (uni == 0) return 1.0;
  return static_cast<double>(o.both) / static_cast<double>(uni);
}

EvalRecord evaluate_pair(const BinaryMask& pred, const BinaryMask& gt, const PipelineConfig& config,
                         std::string image_id) {
  check_same_dimensions(pred, gt);
  const BinaryMask post = covhuseg(pred, config);
  return EvalRecord{std::move(image_id), dice(pred, gt), dice(post, gt), iou(pred, gt),
                    iou(post, gt)};
}

ReportRow make_report_row(std::string model, std::string split, double mean_without,
                          double mean_with) {
  ReportRow row{std::move(model), std::move(split), mean_without, mean_with, 0.0, 0.0};
  row.increase = mean_with - mean_without;
  row.increase_pct = mean_without > 0.0 ? 100.0 * row.increase / mean_without
                                        : std::numeric_limits<double>::quiet_NaN();
  return row;
}

ReportRow aggregate(std::span<const EvalRecord> records, std::string model, std::string split) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate an empty record list");
  std::vector<double> without;
  std::vector<double> with;
  without.reserve(records.size());
  with.reserve(records.size());
  for (const auto& r : records) {
    without.push_back(r.dice_without);
    with.push_back(r.dice_with);
  }
  // Summing in sorted order makes the mean bit-identical under any record order.
  auto mean = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  return make_report_row(std::move(model), std::move(split), mean(without), mean(with));
}

}  // namespace covhuseg
