#ifndef CABINCO2_CONFIG_HPP
#define CABINCO2_CONFIG_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cabinco2/csv.hpp"
#include "cabinco2/types.hpp"

namespace cabinco2::config {

// Minimal TOML subset: [table.headers], dotted/quoted keys, numbers, strings,
// booleans and single-line arrays. Enough for constants, run and scenario files.
struct Value {
    enum class Kind { number, string, boolean, array };
    Kind kind = Kind::number;
    double number = 0.0;
    std::string text;
    bool flag = false;
    std::vector<Value> items;
    std::size_t line = 0;
};

struct Document {
    std::string source;
    std::map<std::string, Value> entries;  // full dotted key -> value

    [[nodiscard]] const Value* find(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }

    [[nodiscard]] std::optional<double> number(const std::string& key) const {
        const auto* v = find(key);
        if (!v) return std::nullopt;
        if (v->kind != Value::Kind::number) throw ParseError(source, v->line, 0, "'" + key + "' must be a number");
        return v->number;
    }

    [[nodiscard]] std::optional<std::string> string(const std::string& key) const {
        const auto* v = find(key);
        if (!v) return std::nullopt;
        if (v->kind != Value::Kind::string) throw ParseError(source, v->line, 0, "'" + key + "' must be a string");
        return v->text;
    }

    [[nodiscard]] std::vector<std::string> strings(const std::string& key) const {
        const auto* v = find(key);
        if (!v) return {};
        if (v->kind == Value::Kind::string) return {v->text};
        if (v->kind != Value::Kind::array) throw ParseError(source, v->line, 0, "'" + key + "' must be an array");
        std::vector<std::string> out;
        for (const auto& item : v->items) {
            if (item.kind != Value::Kind::string) throw ParseError(source, v->line, 0, "'" + key + "' must hold strings");
            out.push_back(item.text);
        }
        return out;
    }

    // Keys directly below `prefix.` (one level), in sorted order.
    [[nodiscard]] std::vector<std::string> children(const std::string& prefix) const {
        std::vector<std::string> out;
        const std::string p = prefix + ".";
        for (auto it = entries.lower_bound(p); it != entries.end() && it->first.compare(0, p.size(), p) == 0; ++it) {
            auto rest = it->first.substr(p.size());
            auto head = rest.substr(0, rest.find('.'));
            if (out.empty() || out.back() != head) out.push_back(head);
        }
        return out;
    }
};

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

class LineParser {
public:
    LineParser(std::string_view line, const std::string& source, std::size_t line_no)
        : s_(line), source_(source), line_(line_no) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, i_ + 1, what); }

    std::string parse_key_path() {
        std::string path;
        while (true) {
            skip_ws(s_, i_);
            std::string part;
            if (i_ < s_.size() && (s_[i_] == '"' || s_[i_] == '\'')) {
                part = parse_string();
            } else {
                const auto start = i_;
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '-')) ++i_;
                if (i_ == start) fail("expected key");
                part = std::string(s_.substr(start, i_ - start));
            }
            path += part;
            skip_ws(s_, i_);
            if (i_ < s_.size() && s_[i_] == '.') {
                path += '.';
                ++i_;
                continue;
            }
            return path;
        }
    }

    std::string parse_string() {
        const char q = s_[i_++];
        std::string out;
        while (i_ < s_.size() && s_[i_] != q) {
            if (q == '"' && s_[i_] == '\\' && i_ + 1 < s_.size()) {
                ++i_;
                switch (s_[i_]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: out += s_[i_];
                }
            } else {
                out += s_[i_];
            }
            ++i_;
        }
        if (i_ >= s_.size()) fail("unterminated string");
        ++i_;
        return out;
    }

    Value parse_value() {
        skip_ws(s_, i_);
        if (i_ >= s_.size()) fail("expected value");
        Value v;
        v.line = line_;
        const char c = s_[i_];
        if (c == '"' || c == '\'') {
            v.kind = Value::Kind::string;
            v.text = parse_string();
        } else if (c == '[') {
            ++i_;
            v.kind = Value::Kind::array;
            skip_ws(s_, i_);
            while (i_ < s_.size() && s_[i_] != ']') {
                v.items.push_back(parse_value());
                skip_ws(s_, i_);
                if (i_ < s_.size() && s_[i_] == ',') {
                    ++i_;
                    skip_ws(s_, i_);
                }
            }
            if (i_ >= s_.size()) fail("unterminated array");
            ++i_;
        } else if (s_.substr(i_, 4) == "true") {
            v.kind = Value::Kind::boolean;
            v.flag = true;
            i_ += 4;
        } else if (s_.substr(i_, 5) == "false") {
            v.kind = Value::Kind::boolean;
            i_ += 5;
        } else {
            const auto start = i_;
            while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ']' && s_[i_] != '#' && s_[i_] != ' ' && s_[i_] != '\t') ++i_;
            std::string num(s_.substr(start, i_ - start));
            std::erase(num, '_');
            if (!csv::parse_double(num, v.number)) fail("invalid number '" + num + "'");
        }
        return v;
    }

    void expect_end() {
        skip_ws(s_, i_);
        if (i_ < s_.size() && s_[i_] != '#') fail("unexpected trailing text");
    }

    std::size_t& pos() { return i_; }
    [[nodiscard]] std::string_view text() const { return s_; }

private:
    std::string_view s_;
    const std::string& source_;
    std::size_t line_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline Document parse(std::string_view text, std::string source) {
    Document doc;
    doc.source = std::move(source);
    std::string table;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        detail::LineParser p(line, doc.source, line_no);
        auto& i = p.pos();
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] == '#') continue;
        if (line[i] == '[') {
            ++i;
            table = p.parse_key_path();
            detail::skip_ws(line, i);
            if (i >= line.size() || line[i] != ']') p.fail("expected ']'");
            ++i;
            p.expect_end();
            continue;
        }
        auto key = p.parse_key_path();
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] != '=') p.fail("expected '='");
        ++i;
        auto value = p.parse_value();
        p.expect_end();
        auto full = table.empty() ? key : table + "." + key;
        if (!doc.entries.emplace(full, std::move(value)).second) {
            throw ParseError(doc.source, line_no, 0, "duplicate key '" + full + "'");
        }
    }
    return doc;
}

inline Document read(const std::string& path) { return parse(csv::read_file(path), path); }

}  // namespace cabinco2::config

#endif  // CABINCO2_CONFIG_HPP
