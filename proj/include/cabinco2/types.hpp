#ifndef CABINCO2_TYPES_HPP
#define CABINCO2_TYPES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cabinco2 {

enum class CabinClass { economy, premium_economy, business, service_zone };
enum class Haul { short_haul, long_haul };
enum class Body { narrow, wide };

inline constexpr std::array<CabinClass, 3> kPassengerClasses = {
    CabinClass::economy, CabinClass::premium_economy, CabinClass::business};
inline constexpr std::array<Haul, 2> kHauls = {Haul::short_haul, Haul::long_haul};
inline constexpr std::array<Body, 2> kBodies = {Body::narrow, Body::wide};

constexpr bool is_passenger_class(CabinClass c) { return c != CabinClass::service_zone; }

constexpr std::string_view to_string(CabinClass c) {
    switch (c) {
        case CabinClass::economy: return "economy";
        case CabinClass::premium_economy: return "premium_economy";
        case CabinClass::business: return "business";
        case CabinClass::service_zone: return "service_zone";
    }
    return "?";
}

constexpr std::string_view to_string(Haul h) { return h == Haul::short_haul ? "short" : "long"; }
constexpr std::string_view to_string(Body b) { return b == Body::narrow ? "narrow" : "wide"; }

inline std::optional<CabinClass> parse_cabin_class(std::string_view s) {
    for (auto c : {CabinClass::economy, CabinClass::premium_economy, CabinClass::business,
                   CabinClass::service_zone}) {
        if (s == to_string(c)) return c;
    }
    return std::nullopt;
}

inline std::optional<Haul> parse_haul(std::string_view s) {
    if (s == "short") return Haul::short_haul;
    if (s == "long") return Haul::long_haul;
    return std::nullopt;
}

inline std::optional<Body> parse_body(std::string_view s) {
    if (s == "narrow") return Body::narrow;
    if (s == "wide") return Body::wide;
    return std::nullopt;
}

// Fixed-size map over the three passenger classes, iterated in economy,
// premium economy, business order.
template <class T>
struct PerClass {
    std::array<T, 3> values{};

    static constexpr std::size_t index(CabinClass c) {
        if (c == CabinClass::service_zone) throw std::out_of_range("service_zone is not a passenger class");
        return static_cast<std::size_t>(c);
    }

    constexpr T& operator[](CabinClass c) { return values[index(c)]; }
    constexpr const T& operator[](CabinClass c) const { return values[index(c)]; }

    template <class F>
    [[nodiscard]] T sum(F&& f) const {
        T total{};
        for (auto c : kPassengerClasses) total += f(c, (*this)[c]);
        return total;
    }
    [[nodiscard]] T sum() const {
        return sum([](CabinClass, const T& v) { return v; });
    }
};

// Base exception. Subclasses carry the category the CLI maps to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input row; line/column are 1-based, column 0 means the whole row.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, const std::string& what)
        : Error(file + ":" + std::to_string(line) + (column ? ":" + std::to_string(column) : "") +
                ": " + what),
          file_(std::move(file)), line_(line), column_(column) {}

    [[nodiscard]] const std::string& file() const { return file_; }
    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
};

// Value outside its physical domain (non-positive area, negative count, ...).
class UnitError : public ParseError {
public:
    using ParseError::ParseError;
};

// A record references an entity that does not exist (e.g. unknown aircraft).
class ReferentialError : public Error {
public:
    using Error::Error;
};

// Precondition violated by a model operation.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace cabinco2

#endif  // CABINCO2_TYPES_HPP
