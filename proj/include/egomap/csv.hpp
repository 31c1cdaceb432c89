#pragma once

#include <string>
#include <vector>

namespace egomap {

// Minimal RFC-4180 style CSV: fields containing the delimiter, quotes or
// newlines are quoted; embedded quotes are doubled. Enough for coding
// sheets edited in any spreadsheet tool.

std::string csv_format_row(const std::vector<std::string>& fields);

// Parses a whole document. Rows may contain quoted embedded newlines.
// Throws SchemaViolationError on unterminated quotes.
std::vector<std::vector<std::string>> csv_parse(const std::string& text);

}  // namespace egomap
