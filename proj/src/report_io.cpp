#include "covhuseg/report_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "csv.hpp"

namespace covhuseg {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kReportHeader = "model,split,without,with,increase,increase_pct";

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  // Avoid printing "-0.000" for tiny negative values.
  const double scale = std::pow(10.0, decimals);
  if (std::round(v * scale) == 0.0) v = 0.0;
  return fmt::format("{:.{}f}", v, decimals);
}

double parse_number(const std::string& text, std::size_t line) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::runtime_error("report record " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_report_csv(std::span<const ReportRow> rows, std::ostream& out) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << detail::csv_field(r.model) << ',' << detail::csv_field(r.split) << ','
        << fixed(r.mean_without, 6) << ',' << fixed(r.mean_with, 6) << ',' << fixed(r.increase, 6)
        << ',' << fixed(r.increase_pct, 6) << '\n';
  }
}

void write_report_csv(std::span<const ReportRow> rows, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write report '" + path.string() + "'");
  write_report_csv(rows, out);
  if (!out) throw std::runtime_error("write failed for report '" + path.string() + "'");
}

std::vector<ReportRow> read_report_csv(std::istream& in) {
  auto header = detail::read_csv_record(in);
  if (!header) throw std::runtime_error("report is empty (missing header)");
  if (*header != std::vector<std::string>{"model", "split", "without", "with", "increase",
                                          "increase_pct"}) {
    throw std::runtime_error("report header must be '" + std::string(kReportHeader) + "'");
  }
  std::vector<ReportRow> rows;
  std::size_t line = 1;
  while (auto rec = detail::read_csv_record(in)) {
    ++line;
    if (rec->size() == 1 && rec->front().empty()) continue;
    if (rec->size() != 6) {
      throw std::runtime_error("report record " + std::to_string(line) + " has " +
                               std::to_string(rec->size()) + " fields, expected 6");
    }
    const auto& f = *rec;
    rows.push_back({f[0], f[1], parse_number(f[2], line), parse_number(f[3], line),
                    parse_number(f[4], line), parse_number(f[5], line)});
  }
  return rows;
}

std::vector<ReportRow> read_report_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read report '" + path.string() + "'");
  return read_report_csv(in);
}

std::string render_report_table(std::span<const ReportRow> rows) {
  using Line = std::array<std::string, 6>;
  std::vector<Line> lines;
  lines.push_back({"Model", "Split", "Without CovHuSeg", "With CovHuSeg", "Increase", "Increase %"});
  for (const auto& r : rows) {
    const std::string pct = std::isnan(r.increase_pct) ? "n/a" : fixed(r.increase_pct, 2) + "%";
    lines.push_back({r.model, r.split, fixed(r.mean_without, 3), fixed(r.mean_with, 3),
                     fixed(r.increase, 3), pct});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& l : lines) {
    for (std::size_t c = 0; c < l.size(); ++c) width[c] = std::max(width[c], l[c].size());
  }
  auto render = [&](const Line& l) {
    std::string s = "|";
    for (std::size_t c = 0; c < l.size(); ++c) {
      // Text columns left-aligned, numbers right-aligned.
      s += c < 2 ? fmt::format(" {:<{}} |", l[c], width[c]) : fmt::format(" {:>{}} |", l[c], width[c]);
    }
    return s + "\n";
  };
  std::string rule = "+";
  for (auto w : width) rule += std::string(w + 2, '-') + "+";
  rule += "\n";

  std::string out = rule + render(lines[0]) + rule;
  for (std::size_t i = 1; i < lines.size(); ++i) out += render(lines[i]);
  out += rule;
  return out;
}

void write_records_csv(std::span<const EvalRecord> records, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write records '" + path.string() + "'");
  out << "image_id,dice_without,dice_with,iou_without,iou_with\n";
  for (const auto& r : records) {
    out << detail::csv_field(r.image_id) << ',' << fixed(r.dice_without, 6) << ','
        << fixed(r.dice_with, 6) << ',' << fixed(r.iou_without, 6) << ',' << fixed(r.iou_with, 6)
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed for records '" + path.string() + "'");
}

}  // namespace covhuseg
