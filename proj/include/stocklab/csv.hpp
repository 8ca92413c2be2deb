#pragma once

#include <istream>
#include <string>
#include <vector>

namespace stocklab {
namespace csv {

// Splits one logical CSV record into fields. Double-quoted fields may
// contain commas and doubled quotes. The record must not span lines
// (read_record handles embedded newlines).
std::vector<std::string> split_record(const std::string& line);

// Reads one logical record, joining physical lines while inside quotes.
// Returns false at end of stream. Strips a trailing '\r'.
bool read_record(std::istream& in, std::vector<std::string>& fields);

// Quotes a field when it contains a comma, quote, or newline.
std::string quote(const std::string& field);

std::string join(const std::vector<std::string>& fields);

}  // namespace csv
}  // namespace stocklab
