#ifndef CABINCO2_STUDY_HPP
#define CABINCO2_STUDY_HPP

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cabinco2/cabin.hpp"
#include "cabinco2/emissions.hpp"
#include "cabinco2/finance.hpp"
#include "cabinco2/ingest.hpp"

namespace cabinco2 {

struct StudyOptions {
    bool all_economy = true;
    std::vector<ScenarioDefinition> custom;
    AllocationStrategy allocation = AllocationStrategy::as_written;
    double load_factor = 1.0;
};

// Everything computed for one (aircraft, haul, scenario).
struct StudyCell {
    std::string aircraft;
    Body body = Body::narrow;
    Haul haul = Haul::short_haul;
    std::string scenario;
    CabinConfiguration config;
    ConfigurationWeights weights;
    EmissionsBreakdown emissions;
    PerPassengerEmissions per_pax;
    PerPassengerEmissions per_pax_variable;
    double flights = 0.0;
    KgCo2 lifetime;
    KgCo2 lifetime_variable;
    std::optional<RevenueBreakdown> revenue;
    std::optional<RepriceResult> reprice;  // non-baseline scenarios with fares
};

struct Study {
    StudyOptions options;
    ModelConstants constants;
    std::vector<CompositeAircraft> composites;
    std::vector<EmissionsModel> models;
    std::optional<std::array<FareSummary, 2>> fares;
    std::vector<std::string> scenarios;  // evaluation order, baseline first
    std::vector<StudyCell> cells;
    std::vector<std::string> advisories;

    [[nodiscard]] const StudyCell* find(const std::string& aircraft, Haul h, const std::string& scenario) const {
        for (const auto& c : cells) {
            if (c.aircraft == aircraft && c.haul == h && c.scenario == scenario) return &c;
        }
        return nullptr;
    }
    [[nodiscard]] const StudyCell& at(const std::string& aircraft, Haul h, const std::string& scenario) const {
        const auto* c = find(aircraft, h, scenario);
        if (!c) throw DomainError("no result for " + aircraft + "/" + std::string(to_string(h)) + "/" + scenario);
        return *c;
    }
    [[nodiscard]] const EmissionsModel& model(const std::string& aircraft, Haul h) const {
        for (const auto& m : models) {
            if (m.aircraft == aircraft && m.haul == h) return m;
        }
        throw DomainError("no emissions model for " + aircraft + "/" + std::string(to_string(h)));
    }
    [[nodiscard]] const FareSummary& fare(Haul h) const {
        if (!fares) throw DomainError("dataset has no fares");
        return (*fares)[static_cast<std::size_t>(h)];
    }
    [[nodiscard]] std::vector<std::string> aircraft_of(Body b) const {
        std::vector<std::string> out;
        for (const auto& c : composites) {
            if (c.body == b) out.push_back(c.aircraft);
        }
        return out;
    }
};

inline Study run_study(const Dataset& d, const StudyOptions& options = {}) {
    check_load_factor(options.load_factor);
    Study s;
    s.options = options;
    s.constants = d.constants;
    s.composites = build_composites(d);
    if (!d.fares.empty()) s.fares = summarize_fares(d.fares);

    s.scenarios.push_back("baseline");
    if (options.all_economy) s.scenarios.push_back("all_economy");
    for (const auto& sc : options.custom) {
        if (std::find(s.scenarios.begin(), s.scenarios.end(), sc.name) != s.scenarios.end()) {
            throw DomainError("duplicate scenario '" + sc.name + "'");
        }
        s.scenarios.push_back(sc.name);
    }

    for (const auto& c : s.composites) {
        std::vector<CabinConfiguration> configs;
        configs.push_back(baseline_configuration(c));
        if (options.all_economy) configs.push_back(all_economy_configuration(c));
        for (const auto& sc : options.custom) configs.push_back(custom_configuration(c, sc));
        for (const auto& cfg : configs) {
            if (auto note = exit_limit_advisory(c, cfg)) s.advisories.push_back(*note);
        }
        const auto& baseline = configs.front();

        for (auto h : kHauls) {
            const auto samples = samples_for(d, c.aircraft, h);
            if (samples.empty()) continue;
            s.models.push_back(derive_emissions_model(fit_linear(samples), baseline, d.constants));
            const auto& model = s.models.back();
            const double flights = max_flights(c, h, d.constants);
            std::optional<Usd> baseline_revenue;
            for (const auto& cfg : configs) {
                StudyCell cell;
                cell.aircraft = c.aircraft;
                cell.body = c.body;
                cell.haul = h;
                cell.scenario = cfg.scenario;
                cell.config = cfg;
                cell.weights = configuration_weights(cfg, d.constants);
                cell.emissions = emissions_per_flight(cfg, model, d.constants, options.load_factor);
                cell.per_pax = emissions_per_passenger(cfg, cell.emissions, options.allocation, EmissionsBasis::total);
                cell.per_pax_variable = emissions_per_passenger(cfg, cell.emissions, options.allocation, EmissionsBasis::variable);
                cell.flights = flights;
                cell.lifetime = lifetime_emissions(cell.emissions, flights);
                cell.lifetime_variable = lifetime_variable_emissions(cell.emissions, flights);
                if (s.fares) {
                    const auto& fare = s.fare(h);
                    cell.revenue = revenue_per_flight(cfg, fare, flights);
                    if (!baseline_revenue) {
                        baseline_revenue = cell.revenue->total;
                    } else {
                        cell.reprice = revenue_neutral_price(*baseline_revenue, cfg, fare);
                    }
                }
                s.cells.push_back(std::move(cell));
            }
        }
    }
    return s;
}

}  // namespace cabinco2

#endif  // CABINCO2_STUDY_HPP
