#ifndef CABINCO2_EMISSIONS_HPP
#define CABINCO2_EMISSIONS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cabinco2/cabin.hpp"
#include "cabinco2/ingest.hpp"
#include "cabinco2/regression.hpp"

namespace cabinco2 {

struct RegressionFit {
    std::string aircraft;
    Haul haul = Haul::short_haul;
    KgCo2 intercept;
    double slope = 0.0;  // kg CO2 per passenger
    std::vector<double> residuals;
    double r_squared = 0.0;
};

inline RegressionFit fit_linear(std::span<const EmissionsSampleRecord> samples) {
    if (samples.empty()) throw DomainError("fit_linear: no samples");
    std::vector<double> x, y;
    std::set<long> distinct;
    for (const auto& s : samples) {
        if (s.aircraft != samples.front().aircraft || s.haul != samples.front().haul) {
            throw DomainError("fit_linear: samples mix aircraft or haul");
        }
        x.push_back(static_cast<double>(s.passengers));
        y.push_back(s.emissions.value());
        distinct.insert(s.passengers);
    }
    if (distinct.size() < 2) {
        throw DomainError("fit_linear: " + samples.front().aircraft + "/" + std::string(to_string(samples.front().haul)) +
                          " needs at least two distinct passenger counts");
    }
    auto line = fit_line(x, y);
    return {samples.front().aircraft, samples.front().haul, KgCo2(line.intercept), line.slope, std::move(line.residuals), line.r_squared};
}

inline std::vector<EmissionsSampleRecord> samples_for(const Dataset& d, const std::string& aircraft, Haul h) {
    std::vector<EmissionsSampleRecord> out;
    for (const auto& s : d.samples) {
        if (s.aircraft == aircraft && s.haul == h) out.push_back(s);
    }
    return out;
}

struct EmissionsModel {
    std::string aircraft;
    Haul haul = Haul::short_haul;
    double emissions_factor = 0.0;  // kg CO2 per kg carried
    KgCo2 empty_aircraft_emissions;
    RegressionFit source_fit;
    CabinConfiguration reference_config;
};

inline PerClass<KgCo2> seating_emissions(const CabinConfiguration& cfg, double factor, const ModelConstants& k) {
    PerClass<KgCo2> out{};
    for (auto c : kPassengerClasses) out[c] = KgCo2(cfg.seats[c] * k.seat_weights[c].value() * factor);
    return out;
}

inline EmissionsModel derive_emissions_model(const RegressionFit& fit, const CabinConfiguration& baseline, const ModelConstants& k) {
    if (fit.aircraft != baseline.aircraft) {
        throw DomainError("emissions model: fit for " + fit.aircraft + " but baseline for " + baseline.aircraft);
    }
    const double factor = fit.slope / k.pax_weight().value();
    if (!(factor > 0.0)) {
        throw DomainError(fit.aircraft + "/" + std::string(to_string(fit.haul)) + ": non-positive emissions factor");
    }
    EmissionsModel m;
    m.aircraft = fit.aircraft;
    m.haul = fit.haul;
    m.emissions_factor = factor;
    m.empty_aircraft_emissions = fit.intercept - seating_emissions(baseline, factor, k).sum();
    if (!(m.empty_aircraft_emissions.value() > 0.0)) {
        throw DomainError(fit.aircraft + "/" + std::string(to_string(fit.haul)) + ": baseline seat emissions exceed the intercept");
    }
    m.source_fit = fit;
    m.reference_config = baseline;
    return m;
}

inline PerClass<KgCo2> seating_emissions(const CabinConfiguration& cfg, const EmissionsModel& m, const ModelConstants& k) {
    return seating_emissions(cfg, m.emissions_factor, k);
}

inline void check_load_factor(double load_factor) {
    if (!(load_factor >= 0.0 && load_factor <= 1.0)) throw DomainError("load factor must be within [0, 1]");
}

inline PerClass<KgCo2> pax_emissions(const CabinConfiguration& cfg, const EmissionsModel& m, const ModelConstants& k,
                                     double load_factor = 1.0) {
    check_load_factor(load_factor);
    PerClass<KgCo2> out{};
    for (auto c : kPassengerClasses) {
        out[c] = KgCo2(cfg.seats[c] * load_factor * k.pax_weight().value() * m.emissions_factor);
    }
    return out;
}

struct EmissionsBreakdown {
    KgCo2 empty;
    PerClass<KgCo2> seating{};
    PerClass<KgCo2> pax{};
    KgCo2 total;
    KgCo2 variable;
    double load_factor = 1.0;
};

inline EmissionsBreakdown emissions_per_flight(const CabinConfiguration& cfg, const EmissionsModel& m, const ModelConstants& k,
                                               double load_factor = 1.0) {
    if (cfg.aircraft != m.aircraft) throw DomainError("configuration for " + cfg.aircraft + " but model for " + m.aircraft);
    EmissionsBreakdown b;
    b.load_factor = load_factor;
    b.empty = m.empty_aircraft_emissions;
    b.seating = seating_emissions(cfg, m, k);
    b.pax = pax_emissions(cfg, m, k, load_factor);
    b.total = b.empty + b.seating.sum() + b.pax.sum();
    b.variable = b.total - b.empty;
    return b;
}

// How the service-zone share is spread over passengers.
//   as_written:             service share over all seats on board
//   service_to_class_seats: service share over the class's own seats
enum class AllocationStrategy { as_written, service_to_class_seats };
enum class EmissionsBasis { total, variable };

constexpr std::string_view to_string(AllocationStrategy s) {
    return s == AllocationStrategy::as_written ? "as-written" : "service-to-class-seats";
}
constexpr std::string_view to_string(EmissionsBasis b) { return b == EmissionsBasis::total ? "total" : "variable"; }

inline std::optional<AllocationStrategy> parse_allocation(std::string_view s) {
    if (s == "as-written" || s == "as_written") return AllocationStrategy::as_written;
    if (s == "service-to-class-seats" || s == "service_to_class_seats") return AllocationStrategy::service_to_class_seats;
    return std::nullopt;
}

struct PerPassengerEmissions {
    PerClass<std::optional<KgCo2>> per_class{};  // empty for classes not present
    AllocationStrategy strategy = AllocationStrategy::as_written;
    EmissionsBasis basis = EmissionsBasis::total;
};

// Each class carries its floor share of the flight's emissions, plus a share
// of the service zones. The expression is arranged so that a single-class
// cabin reduces to emissions / seats with no rounding difference.
inline PerPassengerEmissions emissions_per_passenger(const CabinConfiguration& cfg, const EmissionsBreakdown& b,
                                                     AllocationStrategy strategy = AllocationStrategy::as_written,
                                                     EmissionsBasis basis = EmissionsBasis::total) {
    PerPassengerEmissions out;
    out.strategy = strategy;
    out.basis = basis;
    const double emitted = (basis == EmissionsBasis::total ? b.total : b.variable).value();
    const double area = cfg.total_floor_area().value();
    const double all_seats = cfg.total_seats();
    const double service = cfg.service_floor_area.value();
    for (auto c : kPassengerClasses) {
        const double seats = cfg.seats[c];
        const double floor = cfg.class_floor_area[c].value();
        if (seats == 0.0 && floor == 0.0) continue;
        if (!(seats > 0.0)) throw DomainError(cfg.aircraft + ": " + std::string(to_string(c)) + " has floor area but no seats");
        const double share = strategy == AllocationStrategy::as_written ? floor + service * (seats / all_seats) : floor + service;
        out.per_class[c] = KgCo2(emitted * (share / area) / seats);
    }
    return out;
}

inline double max_flights(double max_cycles, double max_hours, Haul h, const ModelConstants& k) {
    const double block = k.block_hours_for(h);
    if (!(block > 0.0)) throw DomainError("block hours must be positive");
    return std::min(max_cycles, max_hours / block);
}

inline double max_flights(const AircraftSpecRecord& spec, Haul h, const ModelConstants& k) {
    return max_flights(spec.max_cycles, spec.max_hours, h, k);
}

inline double max_flights(const CompositeAircraft& c, Haul h, const ModelConstants& k) {
    return max_flights(c.max_cycles, c.max_hours, h, k);
}

inline KgCo2 lifetime_emissions(KgCo2 per_flight, double flights) {
    if (flights < 0.0) throw DomainError("flight count must be >= 0");
    return per_flight * flights;
}

inline KgCo2 lifetime_emissions(const EmissionsBreakdown& b, double flights) { return lifetime_emissions(b.total, flights); }
inline KgCo2 lifetime_variable_emissions(const EmissionsBreakdown& b, double flights) {
    return lifetime_emissions(b.variable, flights);
}

// Body-class diagnostic: mean variable emissions over mean carried weight.
inline double composite_emissions_factor(std::span<const KgCo2> variable, std::span<const Kilograms> weight) {
    if (variable.empty() || variable.size() != weight.size()) throw DomainError("composite factor: mismatched inputs");
    double v = 0.0, w = 0.0;
    for (std::size_t i = 0; i < variable.size(); ++i) {
        v += variable[i].value();
        w += weight[i].value();
    }
    if (!(w > 0.0)) throw DomainError("composite factor: zero weight");
    return v / w;
}

}  // namespace cabinco2

#endif  // CABINCO2_EMISSIONS_HPP
