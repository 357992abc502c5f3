#pragma once

#include <span>
#include <string>
#include <vector>

#include "covhuseg/mask.hpp"
#include "covhuseg/pipeline.hpp"

namespace covhuseg {

/// 2|A n B| / (|A| + |B|); 1.0 when both masks are empty.
double dice(const BinaryMask& a, const BinaryMask& b);

/// |A n B| / |A u B|; 1.0 when both masks are empty.
double iou(const BinaryMask& a, const BinaryMask& b);

/// Scores of one prediction before and after post-processing.
struct EvalRecord {
  std::string image_id;
  double dice_without = 0.0;
  double dice_with = 0.0;
  double iou_without = 0.0;
  double iou_with = 0.0;
};

EvalRecord evaluate_pair(const BinaryMask& pred, const BinaryMask& gt,
                         const PipelineConfig& config = {}, std::string image_id = {});

/// One line of a results table: macro-averaged Dice without/with post-processing.
struct ReportRow {
  std::string model;
  std::string split;
  double mean_without = 0.0;
  double mean_with = 0.0;
  double increase = 0.0;
  /// 100 * increase / mean_without; NaN when mean_without is 0.
  double increase_pct = 0.0;
};

/// Builds a row from already-averaged scores.
ReportRow make_report_row(std::string model, std::string split, double mean_without,
                          double mean_with);

/// Unweighted mean over records. Throws std::invalid_argument when empty.
ReportRow aggregate(std::span<const EvalRecord> records, std::string model, std::string split);

}  // namespace covhuseg
