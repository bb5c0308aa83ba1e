#include "cmopbench/csv.hpp"

#include <charconv>
#include <system_error>

#include "cmopbench/errors.hpp"

namespace cmopbench::csv {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) throw IoError("failed to format double");
    return std::string(buf, ptr);
}

void append_double(std::string& out, double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    if (ec != std::errc()) throw IoError("failed to format double");
    out.append(buf, ptr);
}

void append_u64(std::string& out, std::uint64_t value) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw IoError("failed to format integer");
    out.append(buf, ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw IoError("invalid numeric field '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw IoError("invalid integer field '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace cmopbench::csv
