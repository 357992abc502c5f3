#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covhuseg::detail {

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);

/// Reads one record, honouring quoted fields that span lines. Returns
/// nullopt at end of input. Throws std::runtime_error on an unterminated quote.
std::optional<std::vector<std::string>> read_csv_record(std::istream& in);

}  // namespace covhuseg::detail
