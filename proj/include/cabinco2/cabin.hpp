#ifndef CABINCO2_CABIN_HPP
#define CABINCO2_CABIN_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cabinco2/config.hpp"
#include "cabinco2/constants.hpp"
#include "cabinco2/ingest.hpp"
#include "cabinco2/types.hpp"
#include "cabinco2/units.hpp"

namespace cabinco2 {

struct CompositeAircraft {
    std::string aircraft;
    Body body = Body::narrow;
    PerClass<SquareFeet> class_floor_area{};
    PerClass<SquareFeet> class_area_per_seat{};  // 0 when no airline offers the class
    SquareFeet service_floor_area;
    SquareFeet total_floor_area;
    double max_cycles = 0.0;
    double max_hours = 0.0;
    std::optional<double> exit_limit;
    std::size_t airline_count = 0;
    // Means of the informational seat counts, present when every layout row carries one.
    std::optional<PerClass<double>> mean_seat_count;
    // Mean over airlines of service area / seats.
    std::optional<SquareFeet> service_area_per_seat;

    [[nodiscard]] SquareFeet passenger_floor_area() const {
        return class_floor_area.sum();
    }
};

inline CompositeAircraft build_composite(const std::vector<AirlineLayoutRecord>& layouts, const AircraftSpecRecord& spec) {
    struct Airline {
        PerClass<const AirlineLayoutRecord*> rows{};
        const AirlineLayoutRecord* service = nullptr;
    };
    std::map<std::string, Airline> airlines;
    for (const auto& l : layouts) {
        if (l.aircraft != spec.aircraft) continue;
        auto& a = airlines[l.airline];
        if (l.cabin == CabinClass::service_zone) {
            if (a.service) throw DomainError(spec.aircraft + "/" + l.airline + ": duplicate service_zone row");
            a.service = &l;
        } else {
            if (a.rows[l.cabin]) throw DomainError(spec.aircraft + "/" + l.airline + ": duplicate " + std::string(to_string(l.cabin)) + " row");
            a.rows[l.cabin] = &l;
        }
    }
    if (airlines.empty()) throw DomainError("no layouts for aircraft '" + spec.aircraft + "'");

    CompositeAircraft c;
    c.aircraft = spec.aircraft;
    c.body = spec.body;
    c.max_cycles = spec.max_cycles;
    c.max_hours = spec.max_hours;
    c.exit_limit = spec.exit_limit;
    c.airline_count = airlines.size();
    const auto n = static_cast<double>(airlines.size());

    PerClass<double> per_seat_sum{};
    PerClass<int> per_seat_n{};
    PerClass<double> seat_sum{};
    bool seats_known = true;
    double service_per_seat_sum = 0.0;
    for (const auto& [name, a] : airlines) {
        if (!a.service) throw DomainError(spec.aircraft + "/" + name + ": missing service_zone row");
        c.service_floor_area += a.service->floor_area;
        double airline_seats = 0.0;
        for (auto cls : kPassengerClasses) {
            const auto* r = a.rows[cls];
            if (!r) continue;
            c.class_floor_area[cls] += r->floor_area;
            if (r->floor_area.value() > 0.0 && r->area_per_seat) {
                per_seat_sum[cls] += r->area_per_seat->value();
                per_seat_n[cls] += 1;
            }
            if (r->seat_count) {
                seat_sum[cls] += *r->seat_count;
                airline_seats += *r->seat_count;
            } else {
                seats_known = false;
            }
        }
        if (seats_known && airline_seats > 0.0) service_per_seat_sum += a.service->floor_area.value() / airline_seats;
    }
    for (auto cls : kPassengerClasses) {
        c.class_floor_area[cls] = c.class_floor_area[cls] / n;
        if (per_seat_n[cls] > 0) c.class_area_per_seat[cls] = SquareFeet(per_seat_sum[cls] / per_seat_n[cls]);
        if (c.class_floor_area[cls].value() > 0.0 && per_seat_n[cls] == 0) {
            throw DomainError(spec.aircraft + ": " + std::string(to_string(cls)) + " has floor area but no per-seat area");
        }
    }
    c.service_floor_area = c.service_floor_area / n;
    c.total_floor_area = c.passenger_floor_area() + c.service_floor_area;
    if (seats_known) {
        PerClass<double> mean{};
        for (auto cls : kPassengerClasses) mean[cls] = seat_sum[cls] / n;
        c.mean_seat_count = mean;
        c.service_area_per_seat = SquareFeet(service_per_seat_sum / n);
    }
    return c;
}

inline std::vector<CompositeAircraft> build_composites(const Dataset& d) {
    std::vector<CompositeAircraft> out;
    for (const auto& s : d.specs) {
        const bool present = std::any_of(d.layouts.begin(), d.layouts.end(), [&](const auto& l) { return l.aircraft == s.aircraft; });
        if (present) out.push_back(build_composite(d.layouts, s));
    }
    return out;
}

inline double derive_seat_count(double floor_share, SquareFeet total_floor, SquareFeet area_per_seat) {
    if (!(area_per_seat.value() > 0.0)) throw DomainError("area per seat must be positive");
    return floor_share * total_floor.value() / area_per_seat.value();
}

struct CabinConfiguration {
    std::string aircraft;
    std::string scenario;
    PerClass<double> seats{};
    PerClass<SquareFeet> class_floor_area{};
    SquareFeet service_floor_area;

    [[nodiscard]] double total_seats() const { return seats.sum(); }
    [[nodiscard]] SquareFeet total_floor_area() const { return class_floor_area.sum() + service_floor_area; }
    [[nodiscard]] int occupied_classes() const {
        int n = 0;
        for (auto c : kPassengerClasses) n += seats[c] > 0.0 ? 1 : 0;
        return n;
    }
};

namespace detail {

inline double seats_for(const CompositeAircraft& c, CabinClass cls, SquareFeet area) {
    if (area.value() == 0.0) return 0.0;
    if (!(c.class_area_per_seat[cls].value() > 0.0)) {
        throw DomainError(c.aircraft + ": no per-seat area for " + std::string(to_string(cls)));
    }
    return derive_seat_count(area / c.total_floor_area, c.total_floor_area, c.class_area_per_seat[cls]);
}

inline CabinConfiguration configure(const CompositeAircraft& c, std::string scenario, const PerClass<SquareFeet>& areas) {
    CabinConfiguration cfg;
    cfg.aircraft = c.aircraft;
    cfg.scenario = std::move(scenario);
    cfg.class_floor_area = areas;
    cfg.service_floor_area = c.service_floor_area;
    for (auto cls : kPassengerClasses) cfg.seats[cls] = seats_for(c, cls, areas[cls]);
    return cfg;
}

}  // namespace detail

inline CabinConfiguration baseline_configuration(const CompositeAircraft& c) {
    return detail::configure(c, "baseline", c.class_floor_area);
}

inline CabinConfiguration all_economy_configuration(const CompositeAircraft& c) {
    PerClass<SquareFeet> areas{};
    areas[CabinClass::economy] = c.passenger_floor_area();
    return detail::configure(c, "all_economy", areas);
}

// A named reallocation of passenger floor area. Transfers move a fraction of
// one class's composite area to another; overrides set per-aircraft areas
// outright. Either way the passenger total must be conserved.
struct FloorTransfer {
    CabinClass from = CabinClass::business;
    CabinClass to = CabinClass::economy;
    double fraction = 1.0;
};

struct ScenarioDefinition {
    std::string name;
    std::vector<FloorTransfer> transfers;
    std::map<std::string, PerClass<std::optional<double>>> floor_overrides;  // by aircraft
};

inline ScenarioDefinition parse_scenario(const config::Document& doc) {
    ScenarioDefinition s;
    const auto name = doc.string("name");
    if (!name || name->empty()) throw ParseError(doc.source, 0, 0, "scenario needs a non-empty 'name'");
    s.name = *name;
    if (s.name == "baseline" || s.name == "all_economy") {
        throw ParseError(doc.source, doc.find("name")->line, 0, "scenario name '" + s.name + "' is reserved");
    }
    std::set<std::string> known{"name"};
    auto cls_of = [&](const std::string& text, const std::string& key) {
        auto c = parse_cabin_class(text);
        if (!c || !is_passenger_class(*c)) throw ParseError(doc.source, doc.find(key) ? doc.find(key)->line : 0, 0, "'" + key + "': unknown passenger class '" + text + "'");
        return *c;
    };
    for (const auto& from : doc.children("transfer")) {
        const auto base = "transfer." + from;
        FloorTransfer t;
        t.from = cls_of(from, base + ".to");
        const auto to = doc.string(base + ".to");
        if (!to) throw ParseError(doc.source, 0, 0, "'" + base + ".to' is required");
        t.to = cls_of(*to, base + ".to");
        t.fraction = doc.number(base + ".fraction").value_or(1.0);
        if (t.fraction < 0.0 || t.fraction > 1.0) {
            throw UnitError(doc.source, doc.find(base + ".fraction")->line, 0, "'" + base + ".fraction' must be within [0, 1]");
        }
        known.insert(base + ".to");
        known.insert(base + ".fraction");
        s.transfers.push_back(t);
    }
    for (const auto& aircraft : doc.children("floor_area")) {
        auto& row = s.floor_overrides[aircraft];
        for (const auto& cls : doc.children("floor_area." + aircraft)) {
            const auto key = "floor_area." + aircraft + "." + cls;
            const double v = *doc.number(key);
            if (v < 0.0) throw UnitError(doc.source, doc.find(key)->line, 0, "'" + key + "' must be >= 0");
            row[cls_of(cls, key)] = v;
            known.insert(key);
        }
    }
    for (const auto& [key, value] : doc.entries) {
        if (!known.count(key)) throw ParseError(doc.source, value.line, 0, "unknown scenario key '" + key + "'");
    }
    return s;
}

inline CabinConfiguration custom_configuration(const CompositeAircraft& c, const ScenarioDefinition& s) {
    PerClass<SquareFeet> areas = c.class_floor_area;
    for (const auto& t : s.transfers) {
        const auto moved = areas[t.from] * t.fraction;
        areas[t.from] -= moved;
        areas[t.to] += moved;
    }
    if (auto it = s.floor_overrides.find(c.aircraft); it != s.floor_overrides.end()) {
        for (auto cls : kPassengerClasses) {
            if (it->second[cls]) areas[cls] = SquareFeet(*it->second[cls]);
        }
    }
    const double before = c.passenger_floor_area().value();
    const double after = areas.sum().value();
    if (std::fabs(after - before) > 1e-9 * std::max(1.0, std::fabs(before))) {
        throw DomainError("scenario '" + s.name + "' does not conserve passenger floor area on " + c.aircraft + " (" +
                          format_fixed(before, 2) + " -> " + format_fixed(after, 2) + " sq ft)");
    }
    return detail::configure(c, s.name, areas);
}

struct ConfigurationWeights {
    PerClass<double> seats{};
    PerClass<Kilograms> seat_weight{};
    PerClass<Kilograms> pax_weight{};

    [[nodiscard]] double total_seats() const { return seats.sum(); }
    [[nodiscard]] Kilograms total_seat_weight() const { return seat_weight.sum(); }
    [[nodiscard]] Kilograms total_pax_weight() const { return pax_weight.sum(); }
    [[nodiscard]] Kilograms total() const { return total_seat_weight() + total_pax_weight(); }
};

inline ConfigurationWeights configuration_weights(const CabinConfiguration& cfg, const ModelConstants& k) {
    ConfigurationWeights w;
    for (auto cls : kPassengerClasses) {
        w.seats[cls] = cfg.seats[cls];
        w.seat_weight[cls] = k.seat_weights[cls] * cfg.seats[cls];
        w.pax_weight[cls] = k.pax_weight() * cfg.seats[cls];
    }
    return w;
}

struct FloorProportions {
    PerClass<double> classes{};
    double service = 0.0;

    [[nodiscard]] double total() const { return classes.sum() + service; }
};

inline FloorProportions floor_proportions(const CabinConfiguration& cfg) {
    const double total = cfg.total_floor_area().value();
    if (!(total > 0.0)) throw DomainError(cfg.aircraft + ": configuration has no floor area");
    FloorProportions p;
    for (auto cls : kPassengerClasses) p.classes[cls] = cfg.class_floor_area[cls].value() / total;
    p.service = cfg.service_floor_area.value() / total;
    return p;
}

// Advisory only: seats above the certified exit limit are reported, never clamped.
inline std::optional<std::string> exit_limit_advisory(const CompositeAircraft& c, const CabinConfiguration& cfg) {
    if (!c.exit_limit || cfg.total_seats() <= *c.exit_limit) return std::nullopt;
    return c.aircraft + " " + cfg.scenario + ": " + format_fixed(cfg.total_seats(), 2) + " seats exceed the certified exit limit of " +
           format_fixed(*c.exit_limit, 0);
}

}  // namespace cabinco2

#endif  // CABINCO2_CABIN_HPP
