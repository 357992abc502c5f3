#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "covhuseg/metrics.hpp"

namespace covhuseg {

/// CSV columns: model,split,without,with,increase,increase_pct (6 decimals,
/// "nan" for an undefined percentage), LF line endings.
void write_report_csv(std::span<const ReportRow> rows, std::ostream& out);
void write_report_csv(std::span<const ReportRow> rows, const std::filesystem::path& path);

std::vector<ReportRow> read_report_csv(std::istream& in);
std::vector<ReportRow> read_report_csv(const std::filesystem::path& path);

/// Aligned plain-text table in the column order Model | Split | Without | With |
/// Increase | Increase %. Scores and increase at 3 decimals, percent at 2.
std::string render_report_table(std::span<const ReportRow> rows);

/// Per-image scores: image_id,dice_without,dice_with,iou_without,iou_with.
void write_records_csv(std::span<const EvalRecord> records, const std::filesystem::path& path);

}  // namespace covhuseg
