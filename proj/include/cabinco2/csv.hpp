#ifndef CABINCO2_CSV_HPP
#define CABINCO2_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cabinco2/types.hpp"

namespace cabinco2::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number in the source file
    std::vector<std::string> fields;
};

// Parsed CSV file. Lines starting with '#' before or between records are kept
// as comments (without the leading "# ").
struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<Row> rows;
    std::vector<std::string> comments;

    // Index of a header column, or npos.
    [[nodiscard]] std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        return npos;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

namespace detail {

inline std::vector<std::string> split_record(std::string_view line, const std::string& source,
                                             std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) throw ParseError(source, line_no, out.size() + 1, "stray quote in field");
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else {
            if (was_quoted) throw ParseError(source, line_no, out.size() + 1, "text after closing quote");
            cur += c;
        }
    }
    if (quoted) throw ParseError(source, line_no, out.size() + 1, "unterminated quoted field");
    out.push_back(std::move(cur));
    return out;
}

}  // namespace detail

inline Table parse(std::string_view text, std::string source) {
    Table t;
    t.source = std::move(source);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
        if (line.empty()) continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
            t.comments.emplace_back(line);
            continue;
        }
        auto fields = detail::split_record(line, t.source, line_no);
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ParseError(t.source, line_no, 0,
                             "expected " + std::to_string(t.header.size()) + " fields, found " +
                                 std::to_string(fields.size()));
        }
        t.rows.push_back(Row{line_no, std::move(fields)});
    }
    return t;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Table read(const std::string& path) { return parse(read_file(path), path); }

// Checks that every required column is present; extra columns are allowed.
inline void require_columns(const Table& t, std::initializer_list<std::string_view> names) {
    if (t.header.empty() && t.rows.empty()) return;
    for (auto n : names) {
        if (t.column(n) == Table::npos) {
            throw ParseError(t.source, 1, 0, "missing required column '" + std::string(n) + "'");
        }
    }
}

inline std::string escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += escape(fields[i]);
    }
    return line;
}

// Strict decimal parse of a whole field.
inline bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace cabinco2::csv

#endif  // CABINCO2_CSV_HPP
