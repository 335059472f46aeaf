#include "pagame/trace.hpp"

#include "pagame/errors.hpp"

#include <cctype>

namespace pagame {

TraceRecord& TraceRecord::add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
}

std::optional<std::string> TraceRecord::get(std::string_view key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return v;
    return std::nullopt;
}

namespace {

bool needs_quotes(const std::string& v) {
    if (v.empty()) return true;
    for (char c : v)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '\\') return true;
    return false;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    return true;
}

}  // namespace

std::string render(const TraceRecord& r) {
    std::string out;
    for (const auto& [k, v] : r.fields) {
        if (!valid_key(k)) throw std::invalid_argument("bad trace key: " + k);
        if (!out.empty()) out += ' ';
        out += k + '=';
        if (!needs_quotes(v)) {
            out += v;
            continue;
        }
        out += '"';
        for (char c : v) {
            if (c == '"' || c == '\\') out += '\\';
            if (c == '\n') {
                out += "\\n";
                continue;
            }
            out += c;
        }
        out += '"';
    }
    return out;
}

TraceRecord parse_trace_line(std::string_view s) {
    TraceRecord r;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("trace: " + msg + " at column " + std::to_string(i + 1)); };
    while (true) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        std::size_t eq = s.find('=', i);
        if (eq == std::string_view::npos) fail("expected key=value");
        std::string key(s.substr(i, eq - i));
        if (!valid_key(key)) fail("bad key '" + key + "'");
        i = eq + 1;
        std::string value;
        if (i < s.size() && s[i] == '"') {
            ++i;
            while (true) {
                if (i >= s.size()) fail("unterminated quoted value");
                char c = s[i++];
                if (c == '"') break;
                if (c == '\\') {
                    if (i >= s.size()) fail("dangling escape");
                    char e = s[i++];
                    value += e == 'n' ? '\n' : e;
                } else {
                    value += c;
                }
            }
            if (i < s.size() && s[i] != ' ') fail("expected a space after a quoted value");
        } else {
            std::size_t end = s.find(' ', i);
            if (end == std::string_view::npos) end = s.size();
            value = std::string(s.substr(i, end - i));
            i = end;
        }
        r.add(std::move(key), std::move(value));
    }
    return r;
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_trace_line(line));
    }
    return out;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
    for (const auto& r : records) out << render(r) << '\n';
}

}  // namespace pagame
