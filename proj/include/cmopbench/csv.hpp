#ifndef CMOPBENCH_CSV_HPP
#define CMOPBENCH_CSV_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cmopbench::csv {

/// Shortest representation carrying 17 significant digits; round-trips any
/// finite double exactly and is locale independent.
std::string format_double(double value);

void append_double(std::string& out, double value);
void append_u64(std::string& out, std::uint64_t value);

double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

/// Splits one CSV line on commas (no quoting; the formats here never quote).
std::vector<std::string_view> split(std::string_view line);

} // namespace cmopbench::csv

#endif
