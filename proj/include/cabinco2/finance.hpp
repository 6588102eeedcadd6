#ifndef CABINCO2_FINANCE_HPP
#define CABINCO2_FINANCE_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cabinco2/cabin.hpp"
#include "cabinco2/ingest.hpp"

namespace cabinco2 {

// Average international tourism price elasticities of demand by origin region.
struct ElasticityPreset {
    std::string_view region;
    double value;
};
inline constexpr std::array<ElasticityPreset, 3> kElasticityPresets = {{
    {"asia", -1.420},
    {"america", -1.277},
    {"africa", -0.783},
}};
inline constexpr double kTripBudgetUsd = 2743.0;

struct FareSummary {
    Haul haul = Haul::short_haul;
    PerClass<std::optional<Usd>> prices{};
    PerClass<int> counts{};
    int sample_count = 0;

    [[nodiscard]] Usd price(CabinClass c) const {
        if (!prices[c]) throw DomainError("no " + std::string(to_string(haul)) + "-haul fare for " + std::string(to_string(c)));
        return *prices[c];
    }
};

// Unweighted mean over every record of the haul and class. With allow_partial
// a class without records is left empty instead of raising.
inline FareSummary summarize_fares(const std::vector<FareRecord>& fares, Haul h, bool allow_partial = false) {
    FareSummary s;
    s.haul = h;
    PerClass<std::int64_t> cents{};
    for (const auto& f : fares) {
        if (f.haul != h) continue;
        cents[f.cabin] += f.price.count();
        s.counts[f.cabin] += 1;
        s.sample_count += 1;
    }
    for (auto c : kPassengerClasses) {
        if (s.counts[c] == 0) {
            if (allow_partial) continue;
            throw DomainError("no " + std::string(to_string(h)) + "-haul " + std::string(to_string(c)) + " fares");
        }
        s.prices[c] = Usd(static_cast<double>(cents[c]) / 100.0 / s.counts[c]);
    }
    return s;
}

inline std::array<FareSummary, 2> summarize_fares(const std::vector<FareRecord>& fares) {
    return {summarize_fares(fares, Haul::short_haul), summarize_fares(fares, Haul::long_haul)};
}

struct RevenueBreakdown {
    PerClass<Usd> per_class{};
    Usd total;
    std::optional<Usd> lifetime;
};

inline Usd lifetime_revenue(Usd per_flight, double flights) {
    if (flights < 0.0) throw DomainError("flight count must be >= 0");
    return per_flight * flights;
}

inline RevenueBreakdown revenue_per_flight(const CabinConfiguration& cfg, const FareSummary& fares,
                                           std::optional<double> flights = std::nullopt) {
    RevenueBreakdown r;
    for (auto c : kPassengerClasses) {
        if (cfg.seats[c] == 0.0) continue;
        r.per_class[c] = fares.price(c) * cfg.seats[c];
    }
    r.total = r.per_class.sum();
    if (flights) r.lifetime = lifetime_revenue(r.total, *flights);
    return r;
}

struct RepriceResult {
    Usd new_price;
    Usd delta_abs;
    double delta_rel = 0.0;
};

inline RepriceResult revenue_neutral_price(Usd baseline_revenue, double revised_seats, Usd economy_fare) {
    if (!(revised_seats > 0.0)) throw DomainError("revenue-neutral price needs a positive seat count");
    if (!(economy_fare.value() > 0.0)) throw DomainError("economy fare must be positive");
    RepriceResult r;
    r.new_price = baseline_revenue / revised_seats;
    r.delta_abs = r.new_price - economy_fare;
    r.delta_rel = r.delta_abs / economy_fare;
    return r;
}

// Economy fare that restores baseline revenue when premium classes left in
// `cfg` keep their fares.
inline RepriceResult revenue_neutral_price(Usd baseline_revenue, const CabinConfiguration& cfg, const FareSummary& fares) {
    Usd retained;
    for (auto c : {CabinClass::premium_economy, CabinClass::business}) {
        if (cfg.seats[c] > 0.0) retained += fares.price(c) * cfg.seats[c];
    }
    return revenue_neutral_price(baseline_revenue - retained, cfg.seats[CabinClass::economy], fares.price(CabinClass::economy));
}

inline double elasticity_response(double elasticity, double price_change) { return elasticity * price_change; }

inline double budget_share(Usd delta_price, Usd trip_budget) {
    if (!(trip_budget.value() > 0.0)) throw DomainError("trip budget must be positive");
    return delta_price / trip_budget;
}

inline PerClass<double> class_price_multiples(const FareSummary& fares) {
    const Usd economy = fares.price(CabinClass::economy);
    if (!(economy.value() > 0.0)) throw DomainError("economy fare must be positive");
    PerClass<double> out{};
    for (auto c : kPassengerClasses) out[c] = fares.price(c) / economy;
    return out;
}

// Baseline revenue expressed as a number of economy tickets.
inline double equivalent_economy_seats(Usd baseline_revenue, Usd economy_fare) {
    if (!(economy_fare.value() > 0.0)) throw DomainError("economy fare must be positive");
    return baseline_revenue / economy_fare;
}

}  // namespace cabinco2

#endif  // CABINCO2_FINANCE_HPP
