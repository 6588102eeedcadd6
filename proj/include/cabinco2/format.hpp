#ifndef CABINCO2_FORMAT_HPP
#define CABINCO2_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace cabinco2 {

// Shortest decimal text that round-trips to the same double.
inline std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Fixed-point text with `decimals` fractional digits, rounding half away from
// zero on the shortest decimal form of v (so 2.675 -> "2.68").
inline std::string format_fixed(double v, int decimals) {
    if (!std::isfinite(v)) return format_exact(v);
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(v), std::chars_format::fixed);
    std::string digits(buf, ptr);
    const auto dot = digits.find('.');
    std::string int_part = dot == std::string::npos ? digits : digits.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? "" : digits.substr(dot + 1);
    const bool round_up =
        static_cast<int>(frac_part.size()) > decimals && frac_part[static_cast<std::size_t>(decimals)] >= '5';
    frac_part.resize(static_cast<std::size_t>(decimals), '0');
    std::string all = int_part + frac_part;
    if (round_up) {
        int i = static_cast<int>(all.size()) - 1;
        while (i >= 0) {
            if (all[static_cast<std::size_t>(i)] == '9') {
                all[static_cast<std::size_t>(i)] = '0';
                --i;
            } else {
                ++all[static_cast<std::size_t>(i)];
                break;
            }
        }
        if (i < 0) all.insert(all.begin(), '1');
    }
    const auto split = all.size() - static_cast<std::size_t>(decimals);
    std::string out = all.substr(0, split);
    if (decimals > 0) out += '.' + all.substr(split);
    const bool zero = out.find_first_not_of("0.") == std::string::npos;
    return (v < 0 && !zero) ? "-" + out : out;
}

}  // namespace cabinco2

#endif  // CABINCO2_FORMAT_HPP
