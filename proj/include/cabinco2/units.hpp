#ifndef CABINCO2_UNITS_HPP
#define CABINCO2_UNITS_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cabinco2 {

// Dimensioned scalar. Same-unit arithmetic only; dividing two quantities of
// the same unit yields a plain ratio.
template <class Tag>
class Quantity {
public:
    constexpr Quantity() = default;
    constexpr explicit Quantity(double v) : value_(v) {}

    [[nodiscard]] constexpr double value() const { return value_; }

    constexpr Quantity& operator+=(Quantity o) { value_ += o.value_; return *this; }
    constexpr Quantity& operator-=(Quantity o) { value_ -= o.value_; return *this; }

    friend constexpr Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
    friend constexpr Quantity operator-(Quantity a, Quantity b) { return Quantity(a.value_ - b.value_); }
    friend constexpr Quantity operator-(Quantity a) { return Quantity(-a.value_); }
    friend constexpr Quantity operator*(Quantity a, double s) { return Quantity(a.value_ * s); }
    friend constexpr Quantity operator*(double s, Quantity a) { return Quantity(a.value_ * s); }
    friend constexpr Quantity operator/(Quantity a, double s) { return Quantity(a.value_ / s); }
    friend constexpr double operator/(Quantity a, Quantity b) { return a.value_ / b.value_; }

    friend constexpr auto operator<=>(Quantity, Quantity) = default;

private:
    double value_ = 0.0;
};

using SquareFeet = Quantity<struct SquareFeetTag>;
using Kilograms = Quantity<struct KilogramsTag>;
using KgCo2 = Quantity<struct KgCo2Tag>;
using Usd = Quantity<struct UsdTag>;

namespace literals {
constexpr SquareFeet operator""_sqft(long double v) { return SquareFeet(static_cast<double>(v)); }
constexpr Kilograms operator""_kg(long double v) { return Kilograms(static_cast<double>(v)); }
constexpr KgCo2 operator""_kgco2(long double v) { return KgCo2(static_cast<double>(v)); }
constexpr Usd operator""_usd(long double v) { return Usd(static_cast<double>(v)); }
}  // namespace literals

// Exact monetary amount in integer cents. Fares are held in this form at ingest;
// analysis converts to Usd and runs in full double precision.
class Cents {
public:
    constexpr Cents() = default;
    constexpr explicit Cents(std::int64_t c) : cents_(c) {}

    [[nodiscard]] constexpr std::int64_t count() const { return cents_; }
    [[nodiscard]] constexpr Usd usd() const { return Usd(static_cast<double>(cents_) / 100.0); }

    friend constexpr auto operator<=>(Cents, Cents) = default;

    // "12.3" -> 1230, "-0.005" -> -1 (half away from zero beyond two digits).
    // Returns false on anything that is not a plain decimal number.
    static bool parse(std::string_view text, Cents& out) {
        if (text.empty()) return false;
        bool negative = false;
        std::size_t i = 0;
        if (text[0] == '-' || text[0] == '+') {
            negative = text[0] == '-';
            i = 1;
        }
        std::int64_t whole = 0;
        int digits = 0;
        for (; i < text.size() && text[i] != '.'; ++i) {
            if (text[i] < '0' || text[i] > '9') return false;
            whole = whole * 10 + (text[i] - '0');
            ++digits;
            if (whole > 90'000'000'000'000LL) return false;
        }
        std::int64_t frac = 0;
        int frac_digits = 0;
        bool round_up = false;
        if (i < text.size()) {
            ++i;  // '.'
            for (; i < text.size(); ++i) {
                const char c = text[i];
                if (c < '0' || c > '9') return false;
                if (frac_digits < 2) {
                    frac = frac * 10 + (c - '0');
                } else if (frac_digits == 2) {
                    round_up = c >= '5';
                }
                ++frac_digits;
                ++digits;
            }
        }
        if (digits == 0) return false;
        if (frac_digits == 1) frac *= 10;
        std::int64_t total = whole * 100 + frac + (round_up ? 1 : 0);
        out = Cents(negative ? -total : total);
        return true;
    }

    [[nodiscard]] std::string to_string() const {
        const std::int64_t a = cents_ < 0 ? -cents_ : cents_;
        std::string s = std::to_string(a / 100) + '.';
        const auto frac = a % 100;
        if (frac < 10) s += '0';
        s += std::to_string(frac);
        return cents_ < 0 ? "-" + s : s;
    }

private:
    std::int64_t cents_ = 0;
};

}  // namespace cabinco2

#endif  // CABINCO2_UNITS_HPP
