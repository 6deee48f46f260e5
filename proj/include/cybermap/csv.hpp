#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cybermap::csv {

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Splits one CSV record, honoring quoted fields. CRLF tolerated.
std::vector<std::string> split_record(std::string_view line);

} // namespace cybermap::csv
