#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pagame {

// One line of a .trace file: ordered key=value pairs. Values holding spaces,
// quotes or backslashes are written in double quotes with backslash escapes.
struct TraceRecord {
    std::vector<std::pair<std::string, std::string>> fields;

    TraceRecord& add(std::string key, std::string value);
    std::optional<std::string> get(std::string_view key) const;
    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string render(const TraceRecord& r);
TraceRecord parse_trace_line(std::string_view line);
// Skips blank lines and lines starting with '#'.
std::vector<TraceRecord> read_trace(std::istream& in);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);

}  // namespace pagame
