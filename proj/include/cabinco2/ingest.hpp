#ifndef CABINCO2_INGEST_HPP
#define CABINCO2_INGEST_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cabinco2/constants.hpp"
#include "cabinco2/csv.hpp"
#include "cabinco2/format.hpp"
#include "cabinco2/types.hpp"
#include "cabinco2/units.hpp"

namespace cabinco2 {

struct AirlineLayoutRecord {
    std::string airline;
    std::string aircraft;
    CabinClass cabin = CabinClass::economy;
    SquareFeet floor_area;
    std::optional<SquareFeet> area_per_seat;  // never set for service_zone
    std::optional<double> seat_count;         // informational

    friend bool operator==(const AirlineLayoutRecord&, const AirlineLayoutRecord&) = default;
};

struct EmissionsSampleRecord {
    std::string aircraft;
    Haul haul = Haul::short_haul;
    long passengers = 0;
    KgCo2 emissions;

    friend bool operator==(const EmissionsSampleRecord&, const EmissionsSampleRecord&) = default;
};

struct FareRecord {
    std::string airline;
    std::string route;
    Haul haul = Haul::short_haul;
    CabinClass cabin = CabinClass::economy;
    Cents price;
    std::string window;

    friend bool operator==(const FareRecord&, const FareRecord&) = default;
};

struct AircraftSpecRecord {
    std::string aircraft;
    Body body = Body::narrow;
    double max_cycles = 0.0;
    double max_hours = 0.0;
    std::optional<double> exit_limit;  // certified maximum passenger seats

    friend bool operator==(const AircraftSpecRecord&, const AircraftSpecRecord&) = default;
};

// Documented correction applied to the shipped data (e.g. a transposed table),
// declared in the samples file as "# corrected-transposition: <aircraft> (<note>)".
struct DataCorrection {
    std::string aircraft;
    std::string kind;
    std::string note;

    friend bool operator==(const DataCorrection&, const DataCorrection&) = default;
};

struct Dataset {
    std::vector<AirlineLayoutRecord> layouts;
    std::vector<EmissionsSampleRecord> samples;
    std::vector<FareRecord> fares;
    std::vector<AircraftSpecRecord> specs;
    ModelConstants constants;
    std::vector<DataCorrection> corrections;

    [[nodiscard]] const AircraftSpecRecord* spec(const std::string& aircraft) const {
        for (const auto& s : specs) {
            if (s.aircraft == aircraft) return &s;
        }
        return nullptr;
    }

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct DatasetPaths {
    std::string layouts;
    std::string samples;
    std::string fares;  // empty: no fares
    std::string specs;
    std::string constants;  // empty: built-in defaults

    // Standard file names inside `dir`; fares.csv and constants.toml are optional.
    static DatasetPaths in_directory(const std::filesystem::path& dir) {
        DatasetPaths p;
        p.layouts = (dir / "layouts.csv").string();
        p.samples = (dir / "emissions_samples.csv").string();
        p.specs = (dir / "aircraft_specs.csv").string();
        if (std::filesystem::exists(dir / "fares.csv")) p.fares = (dir / "fares.csv").string();
        if (std::filesystem::exists(dir / "constants.toml")) p.constants = (dir / "constants.toml").string();
        return p;
    }
};

namespace detail {

class RowReader {
public:
    RowReader(const csv::Table& t, const csv::Row& r) : t_(t), r_(r) {}

    [[nodiscard]] std::size_t col(std::string_view name) const { return t_.column(name); }

    [[nodiscard]] std::string text(std::string_view name, bool required = true) const {
        const auto c = col(name);
        if (c == csv::Table::npos) return {};
        const auto& v = r_.fields[c];
        if (required && v.empty()) fail(name, "empty value");
        return v;
    }

    [[nodiscard]] std::optional<double> number(std::string_view name, bool required = true) const {
        const auto c = col(name);
        if (c == csv::Table::npos || r_.fields[c].empty()) {
            if (required) fail(name, "empty value");
            return std::nullopt;
        }
        double v = 0.0;
        if (!csv::parse_double(r_.fields[c], v)) fail(name, "not a number: '" + r_.fields[c] + "'");
        return v;
    }

    [[noreturn]] void fail(std::string_view name, const std::string& what) const {
        const auto c = col(name);
        throw ParseError(t_.source, r_.line, c == csv::Table::npos ? 0 : c + 1, std::string(name) + ": " + what);
    }

    [[noreturn]] void unit_fail(std::string_view name, const std::string& what) const {
        const auto c = col(name);
        throw UnitError(t_.source, r_.line, c == csv::Table::npos ? 0 : c + 1, std::string(name) + ": " + what);
    }

    [[nodiscard]] std::size_t line() const { return r_.line; }

private:
    const csv::Table& t_;
    const csv::Row& r_;
};

inline std::string opt_number(const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); }

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace detail

inline std::vector<AirlineLayoutRecord> parse_layouts(const csv::Table& t) {
    csv::require_columns(t, {"airline", "aircraft", "class", "floor_area_sqft", "area_per_seat_sqft"});
    std::vector<AirlineLayoutRecord> out;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        AirlineLayoutRecord rec;
        rec.airline = r.text("airline");
        rec.aircraft = r.text("aircraft");
        auto cls = parse_cabin_class(r.text("class"));
        if (!cls) r.fail("class", "unknown cabin class '" + r.text("class") + "'");
        rec.cabin = *cls;
        const double area = *r.number("floor_area_sqft");
        const bool service = rec.cabin == CabinClass::service_zone;
        if (service ? !(area > 0.0) : area < 0.0) r.unit_fail("floor_area_sqft", service ? "must be > 0" : "must be >= 0");
        rec.floor_area = SquareFeet(area);
        if (auto aps = r.number("area_per_seat_sqft", false)) {
            if (service) r.fail("area_per_seat_sqft", "not applicable to service_zone");
            if (!(*aps > 0.0)) r.unit_fail("area_per_seat_sqft", "must be > 0");
            rec.area_per_seat = SquareFeet(*aps);
        } else if (!service && area > 0.0) {
            r.fail("area_per_seat_sqft", "required when the class has floor area");
        }
        if (auto seats = r.number("seat_count", false)) {
            if (*seats < 0.0) r.unit_fail("seat_count", "must be >= 0");
            rec.seat_count = *seats;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<EmissionsSampleRecord> parse_samples(const csv::Table& t) {
    csv::require_columns(t, {"aircraft", "haul", "passengers", "kg_co2"});
    std::vector<EmissionsSampleRecord> out;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        EmissionsSampleRecord rec;
        rec.aircraft = r.text("aircraft");
        auto haul = parse_haul(r.text("haul"));
        if (!haul) r.fail("haul", "expected short or long");
        rec.haul = *haul;
        const double pax = *r.number("passengers");
        if (pax < 0.0) r.unit_fail("passengers", "must be >= 0");
        if (pax != std::floor(pax)) r.fail("passengers", "must be a whole number");
        rec.passengers = static_cast<long>(pax);
        const double kg = *r.number("kg_co2");
        if (!(kg > 0.0)) r.unit_fail("kg_co2", "must be > 0");
        rec.emissions = KgCo2(kg);
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<FareRecord> parse_fares(const csv::Table& t) {
    csv::require_columns(t, {"airline", "route", "haul", "class", "price_usd", "window"});
    std::vector<FareRecord> out;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        FareRecord rec;
        rec.airline = r.text("airline");
        rec.route = r.text("route");
        auto haul = parse_haul(r.text("haul"));
        if (!haul) r.fail("haul", "expected short or long");
        rec.haul = *haul;
        auto cls = parse_cabin_class(r.text("class"));
        if (!cls || !is_passenger_class(*cls)) r.fail("class", "expected a passenger class");
        rec.cabin = *cls;
        if (!Cents::parse(r.text("price_usd"), rec.price)) r.fail("price_usd", "not a decimal amount");
        if (rec.price.count() <= 0) r.unit_fail("price_usd", "must be > 0");
        rec.window = r.text("window", false);
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<AircraftSpecRecord> parse_specs(const csv::Table& t) {
    csv::require_columns(t, {"aircraft", "body", "max_cycles", "max_hours"});
    std::vector<AircraftSpecRecord> out;
    std::set<std::string> seen;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        AircraftSpecRecord rec;
        rec.aircraft = r.text("aircraft");
        if (!seen.insert(rec.aircraft).second) r.fail("aircraft", "duplicate aircraft '" + rec.aircraft + "'");
        auto body = parse_body(r.text("body"));
        if (!body) r.fail("body", "expected narrow or wide");
        rec.body = *body;
        rec.max_cycles = *r.number("max_cycles");
        if (!(rec.max_cycles > 0.0)) r.unit_fail("max_cycles", "must be > 0");
        rec.max_hours = *r.number("max_hours");
        if (!(rec.max_hours > 0.0)) r.unit_fail("max_hours", "must be > 0");
        rec.exit_limit = r.number("exit_limit", false);
        if (rec.exit_limit && !(*rec.exit_limit > 0.0)) r.unit_fail("exit_limit", "must be > 0");
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::vector<DataCorrection> parse_corrections(const std::vector<std::string>& comments) {
    std::vector<DataCorrection> out;
    const std::string prefix = "corrected-";
    for (const auto& c : comments) {
        if (c.rfind(prefix, 0) != 0) continue;
        const auto colon = c.find(':');
        if (colon == std::string::npos) continue;
        DataCorrection d;
        d.kind = c.substr(prefix.size(), colon - prefix.size());
        auto rest = c.substr(colon + 1);
        rest.erase(0, rest.find_first_not_of(' '));
        const auto paren = rest.find(" (");
        d.aircraft = rest.substr(0, paren);
        if (paren != std::string::npos && rest.back() == ')') d.note = rest.substr(paren + 2, rest.size() - paren - 3);
        out.push_back(std::move(d));
    }
    return out;
}

// Loads and type-checks every file; throws ParseError/UnitError with
// file:line:column diagnostics, or ReferentialError for unknown aircraft.
inline Dataset load_dataset(const DatasetPaths& paths, const config::Document* constants_override = nullptr) {
    Dataset d;
    for (const auto* p : {&paths.layouts, &paths.samples, &paths.specs}) {
        if (p->empty() || !std::filesystem::exists(*p)) throw Error("missing input file: " + (p->empty() ? std::string("(unset)") : *p));
    }
    d.layouts = parse_layouts(csv::read(paths.layouts));
    auto samples = csv::read(paths.samples);
    d.samples = parse_samples(samples);
    d.corrections = parse_corrections(samples.comments);
    d.specs = parse_specs(csv::read(paths.specs));
    if (!paths.fares.empty()) {
        if (!std::filesystem::exists(paths.fares)) throw Error("missing input file: " + paths.fares);
        d.fares = parse_fares(csv::read(paths.fares));
    }
    if (!paths.constants.empty()) {
        if (!std::filesystem::exists(paths.constants)) throw Error("missing input file: " + paths.constants);
        apply_constants(d.constants, config::read(paths.constants));
    }
    if (constants_override) apply_constants(d.constants, *constants_override);

    auto known = [&](const std::string& a) { return d.spec(a) != nullptr; };
    for (const auto& l : d.layouts) {
        if (!known(l.aircraft)) throw ReferentialError(paths.layouts + ": layout for unknown aircraft '" + l.aircraft + "'");
    }
    for (const auto& s : d.samples) {
        if (!known(s.aircraft)) throw ReferentialError(paths.samples + ": sample for unknown aircraft '" + s.aircraft + "'");
    }
    return d;
}

inline Dataset load_dataset(const std::filesystem::path& dir) { return load_dataset(DatasetPaths::in_directory(dir)); }

// Writes the dataset in the standard directory layout; load_dataset(dir)
// reproduces it field for field.
inline void save_dataset(const Dataset& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::string text = "airline,aircraft,class,floor_area_sqft,area_per_seat_sqft,seat_count\n";
    for (const auto& l : d.layouts) {
        text += csv::join({l.airline, l.aircraft, std::string(to_string(l.cabin)), format_exact(l.floor_area.value()),
                           l.area_per_seat ? format_exact(l.area_per_seat->value()) : "", detail::opt_number(l.seat_count)}) +
                '\n';
    }
    detail::write_text(dir / "layouts.csv", text);

    text.clear();
    for (const auto& c : d.corrections) {
        text += "# corrected-" + c.kind + ": " + c.aircraft + (c.note.empty() ? "" : " (" + c.note + ")") + '\n';
    }
    text += "aircraft,haul,passengers,kg_co2\n";
    for (const auto& s : d.samples) {
        text += csv::join({s.aircraft, std::string(to_string(s.haul)), std::to_string(s.passengers),
                           format_exact(s.emissions.value())}) +
                '\n';
    }
    detail::write_text(dir / "emissions_samples.csv", text);

    text = "airline,route,haul,class,price_usd,window\n";
    for (const auto& f : d.fares) {
        text += csv::join({f.airline, f.route, std::string(to_string(f.haul)), std::string(to_string(f.cabin)),
                           f.price.to_string(), f.window}) +
                '\n';
    }
    detail::write_text(dir / "fares.csv", text);

    text = "aircraft,body,max_cycles,max_hours,exit_limit\n";
    for (const auto& s : d.specs) {
        text += csv::join({s.aircraft, std::string(to_string(s.body)), format_exact(s.max_cycles), format_exact(s.max_hours),
                           detail::opt_number(s.exit_limit)}) +
                '\n';
    }
    detail::write_text(dir / "aircraft_specs.csv", text);
    detail::write_text(dir / "constants.toml", constants_to_toml(d.constants));
}

// ---------------------------------------------------------------------------
// Validation

enum class Severity { info, warning, error };

constexpr std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::info: return "info";
        case Severity::warning: return "warning";
        case Severity::error: return "error";
    }
    return "?";
}

struct Finding {
    Severity severity = Severity::info;
    std::string code;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    [[nodiscard]] bool has_errors() const {
        return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::error; });
    }
    [[nodiscard]] std::size_t count(std::string_view code) const {
        return static_cast<std::size_t>(
            std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
    }
};

// Report-only checks. Suspicious data is flagged, never corrected.
inline ValidationReport validate_dataset(const Dataset& d) {
    ValidationReport report;
    auto add = [&](Severity s, std::string code, std::string loc, std::string msg) {
        report.findings.push_back({s, std::move(code), std::move(loc), std::move(msg)});
    };

    // Layout structure per (airline, aircraft).
    std::map<std::pair<std::string, std::string>, std::vector<const AirlineLayoutRecord*>> layouts;
    for (const auto& l : d.layouts) layouts[{l.aircraft, l.airline}].push_back(&l);
    for (const auto& [key, rows] : layouts) {
        const auto loc = "layouts:" + key.first + "/" + key.second;
        std::map<CabinClass, int> count;
        for (const auto* r : rows) ++count[r->cabin];
        if (count[CabinClass::service_zone] != 1) {
            add(Severity::error, "layout-structure", loc, "expected exactly one service_zone row, found " +
                                                              std::to_string(count[CabinClass::service_zone]));
        }
        if (count[CabinClass::economy] < 1) add(Severity::error, "layout-structure", loc, "no economy row");
        for (auto c : kPassengerClasses) {
            if (count[c] > 1) add(Severity::error, "layout-structure", loc, "duplicate " + std::string(to_string(c)) + " rows");
        }
        for (const auto* r : rows) {
            if (r->area_per_seat && r->seat_count && *r->seat_count > 0.0) {
                const double implied = r->floor_area.value() / *r->seat_count;
                if (std::fabs(implied - r->area_per_seat->value()) > 0.01 * implied + 0.005) {
                    add(Severity::warning, "per-seat-consistency", loc + "/" + std::string(to_string(r->cabin)),
                        "area per seat " + format_fixed(r->area_per_seat->value(), 2) + " differs from floor/seats " +
                            format_fixed(implied, 2));
                }
            }
        }
    }

    // Emissions samples per (aircraft, haul).
    std::map<std::pair<std::string, Haul>, std::vector<const EmissionsSampleRecord*>> groups;
    for (const auto& s : d.samples) groups[{s.aircraft, s.haul}].push_back(&s);
    for (auto& [key, rows] : groups) {
        const auto loc = "samples:" + key.first + "/" + std::string(to_string(key.second));
        std::set<long> distinct;
        for (const auto* r : rows) distinct.insert(r->passengers);
        if (distinct.size() < 3 || !distinct.count(0)) {
            add(Severity::error, "insufficient-samples", loc, "need at least 3 distinct passenger counts including 0, found " +
                                                                  std::to_string(distinct.size()));
        }
        std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->passengers < b->passengers; });
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i]->passengers > rows[i - 1]->passengers && !(rows[i]->emissions > rows[i - 1]->emissions)) {
                add(Severity::error, "non-monotonic", loc,
                    "emissions do not increase from " + std::to_string(rows[i - 1]->passengers) + " to " +
                        std::to_string(rows[i]->passengers) + " passengers");
            }
        }
    }
    std::set<std::string> aircraft;
    for (const auto& s : d.samples) aircraft.insert(s.aircraft);
    for (const auto& a : aircraft) {
        auto zero = [&](Haul h) -> std::optional<double> {
            for (const auto& s : d.samples) {
                if (s.aircraft == a && s.haul == h && s.passengers == 0) return s.emissions.value();
            }
            return std::nullopt;
        };
        auto s0 = zero(Haul::short_haul);
        auto l0 = zero(Haul::long_haul);
        if (s0 && l0 && !(*l0 > *s0)) {
            add(Severity::warning, "suspected-transposition", "samples:" + a,
                "long-haul empty-flight emissions (" + format_fixed(*l0, 2) + ") do not exceed short-haul (" +
                    format_fixed(*s0, 2) + "); short/long columns may be transposed");
        }
    }
    for (const auto& c : d.corrections) {
        add(Severity::warning, "corrected-" + c.kind, "samples:" + c.aircraft,
            "source data corrected (" + c.kind + ")" + (c.note.empty() ? "" : ": " + c.note));
    }

    // Fares: coverage and the usual class ordering of the means.
    if (!d.fares.empty()) {
        for (auto h : kHauls) {
            PerClass<double> sum{};
            PerClass<int> n{};
            for (const auto& f : d.fares) {
                if (f.haul != h) continue;
                sum[f.cabin] += f.price.usd().value();
                n[f.cabin] += 1;
            }
            const auto loc = "fares:" + std::string(to_string(h));
            bool complete = true;
            for (auto c : kPassengerClasses) {
                if (n[c] == 0) {
                    complete = false;
                    add(Severity::warning, "fare-coverage", loc, "no " + std::string(to_string(c)) + " fares");
                }
            }
            if (complete) {
                auto mean = [&](CabinClass c) { return sum[c] / n[c]; };
                if (mean(CabinClass::business) < mean(CabinClass::premium_economy) ||
                    mean(CabinClass::premium_economy) < mean(CabinClass::economy)) {
                    add(Severity::warning, "fare-order", loc, "mean fares are not ordered business >= premium_economy >= economy");
                }
            }
        }
    }

    for (const auto& s : d.specs) {
        const bool has_layout = std::any_of(d.layouts.begin(), d.layouts.end(), [&](auto& l) { return l.aircraft == s.aircraft; });
        if (!has_layout) add(Severity::info, "unused-spec", "specs:" + s.aircraft, "no layouts for this aircraft");
    }
    return report;
}

}  // namespace cabinco2

#endif  // CABINCO2_INGEST_HPP
