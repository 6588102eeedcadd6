#ifndef CABINCO2_REPORT_HPP
#define CABINCO2_REPORT_HPP

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cabinco2/format.hpp"
#include "cabinco2/study.hpp"

namespace cabinco2 {

enum class Metric {
    emissions_per_pax,  // economy seat
    variable_per_pax,   // economy seat
    emissions_per_flight,
    variable_emissions,
    lifetime_emissions,
    lifetime_variable_emissions,
    revenue_per_flight,
    lifetime_revenue,
    ticket_price,  // economy fare
};

inline constexpr std::array<Metric, 9> kMetrics = {
    Metric::emissions_per_pax,  Metric::variable_per_pax,            Metric::emissions_per_flight,
    Metric::variable_emissions, Metric::lifetime_emissions,          Metric::lifetime_variable_emissions,
    Metric::revenue_per_flight, Metric::lifetime_revenue,            Metric::ticket_price,
};

constexpr std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::emissions_per_pax: return "emissions_per_pax";
        case Metric::variable_per_pax: return "variable_per_pax";
        case Metric::emissions_per_flight: return "emissions_per_flight";
        case Metric::variable_emissions: return "variable_emissions";
        case Metric::lifetime_emissions: return "lifetime_emissions";
        case Metric::lifetime_variable_emissions: return "lifetime_variable_emissions";
        case Metric::revenue_per_flight: return "revenue_per_flight";
        case Metric::lifetime_revenue: return "lifetime_revenue";
        case Metric::ticket_price: return "ticket_price";
    }
    return "?";
}

constexpr std::string_view units(Metric m) {
    switch (m) {
        case Metric::revenue_per_flight:
        case Metric::lifetime_revenue:
        case Metric::ticket_price: return "usd";
        default: return "kg_co2";
    }
}

constexpr bool needs_fares(Metric m) { return units(m) == "usd"; }

struct MetricRow {
    std::string group;  // aircraft or body class
    Haul haul = Haul::short_haul;
    std::string scenario;
    double value = 0.0;
};

struct MetricTable {
    Metric metric = Metric::emissions_per_flight;
    std::string group_kind;  // "aircraft" | "body"
    std::vector<MetricRow> rows;

    [[nodiscard]] std::optional<double> value(const std::string& group, Haul h, const std::string& scenario) const {
        for (const auto& r : rows) {
            if (r.group == group && r.haul == h && r.scenario == scenario) return r.value;
        }
        return std::nullopt;
    }
    [[nodiscard]] double at(const std::string& group, Haul h, const std::string& scenario) const {
        auto v = value(group, h, scenario);
        if (!v) {
            throw DomainError(std::string(to_string(metric)) + ": no value for " + group + "/" + std::string(to_string(h)) + "/" + scenario);
        }
        return *v;
    }
};

inline double cell_value(const StudyCell& c, Metric m) {
    auto economy = [&](const PerPassengerEmissions& p) {
        const auto& v = p.per_class[CabinClass::economy];
        if (!v) throw DomainError(c.aircraft + "/" + c.scenario + ": no economy seats");
        return v->value();
    };
    auto revenue = [&]() -> const RevenueBreakdown& {
        if (!c.revenue) throw DomainError("revenue metrics need fares");
        return *c.revenue;
    };
    switch (m) {
        case Metric::emissions_per_pax: return economy(c.per_pax);
        case Metric::variable_per_pax: return economy(c.per_pax_variable);
        case Metric::emissions_per_flight: return c.emissions.total.value();
        case Metric::variable_emissions: return c.emissions.variable.value();
        case Metric::lifetime_emissions: return c.lifetime.value();
        case Metric::lifetime_variable_emissions: return c.lifetime_variable.value();
        case Metric::revenue_per_flight: return revenue().total.value();
        case Metric::lifetime_revenue: return revenue().lifetime->value();
        case Metric::ticket_price:
            if (c.reprice) return c.reprice->new_price.value();
            revenue();
            return c.revenue->per_class[CabinClass::economy].value() / c.config.seats[CabinClass::economy];
    }
    return 0.0;
}

inline MetricTable per_aircraft_table(const Study& s, Metric m) {
    MetricTable t;
    t.metric = m;
    t.group_kind = "aircraft";
    for (const auto& c : s.cells) t.rows.push_back({c.aircraft, c.haul, c.scenario, cell_value(c, m)});
    return t;
}

using BodyMap = std::map<Body, std::vector<std::string>>;

inline BodyMap body_map(const Study& s) {
    BodyMap out;
    for (auto b : kBodies) {
        auto a = s.aircraft_of(b);
        if (!a.empty()) out[b] = std::move(a);
    }
    return out;
}

// Unweighted mean of per-aircraft results, keyed by (haul, scenario) in the
// order they first appear.
inline MetricTable aggregate_body_class(const MetricTable& per_aircraft, const BodyMap& bodies) {
    MetricTable t;
    t.metric = per_aircraft.metric;
    t.group_kind = "body";
    std::vector<std::pair<Haul, std::string>> keys;
    for (const auto& r : per_aircraft.rows) {
        std::pair<Haul, std::string> k{r.haul, r.scenario};
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }
    std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [body, aircraft] : bodies) {
        if (aircraft.empty()) continue;
        for (const auto& [h, scenario] : keys) {
            double sum = 0.0;
            for (const auto& a : aircraft) sum += per_aircraft.at(a, h, scenario);
            t.rows.push_back({std::string(to_string(body)), h, scenario, sum / static_cast<double>(aircraft.size())});
        }
    }
    return t;
}

// Body-class economy fare: the mean revenue to recover divided by the mean
// economy seat count.
inline MetricTable body_ticket_prices(const Study& s, const BodyMap& bodies) {
    MetricTable t;
    t.metric = Metric::ticket_price;
    t.group_kind = "body";
    for (const auto& [body, aircraft] : bodies) {
        for (auto h : kHauls) {
            for (const auto& scenario : s.scenarios) {
                double to_recover = 0.0, seats = 0.0;
                bool present = true;
                for (const auto& a : aircraft) {
                    const auto* base = s.find(a, h, "baseline");
                    const auto* cell = s.find(a, h, scenario);
                    if (!base || !cell) {
                        present = false;
                        break;
                    }
                    if (!cell->revenue) throw DomainError("ticket prices need fares");
                    const auto& r = *cell->revenue;
                    const Usd economy = r.per_class[CabinClass::economy];
                    const Usd target = scenario == "baseline" ? economy : base->revenue->total - (r.total - economy);
                    to_recover += target.value();
                    seats += cell->config.seats[CabinClass::economy];
                }
                if (!present) continue;
                if (!(seats > 0.0)) throw DomainError(std::string(to_string(body)) + "/" + scenario + ": no economy seats");
                t.rows.push_back({std::string(to_string(body)), h, scenario, to_recover / seats});
            }
        }
    }
    return t;
}

inline MetricTable body_table(const Study& s, Metric m) {
    const auto bodies = body_map(s);
    if (m == Metric::ticket_price) return body_ticket_prices(s, bodies);
    return aggregate_body_class(per_aircraft_table(s, m), bodies);
}

struct DeltaRow {
    std::string group;
    Haul haul = Haul::short_haul;
    std::string scenario;
    double from = 0.0;
    double to = 0.0;
    double absolute = 0.0;
    double relative = 0.0;  // fraction
};

struct DeltaTable {
    Metric metric = Metric::emissions_per_flight;
    std::string reference;
    std::vector<DeltaRow> rows;

    [[nodiscard]] const DeltaRow& at(const std::string& group, Haul h, const std::string& scenario) const {
        for (const auto& r : rows) {
            if (r.group == group && r.haul == h && r.scenario == scenario) return r;
        }
        throw DomainError(std::string(to_string(metric)) + " delta: no row for " + group + "/" + std::string(to_string(h)) + "/" + scenario);
    }
};

// Changes of every scenario against `reference`: absolute = scenario - reference,
// relative = absolute / reference.
inline DeltaTable delta_table(const MetricTable& t, const std::string& reference = "baseline") {
    DeltaTable d;
    d.metric = t.metric;
    d.reference = reference;
    for (const auto& r : t.rows) {
        if (r.scenario == reference) continue;
        const auto base = t.value(r.group, r.haul, reference);
        if (!base) throw DomainError(std::string(to_string(t.metric)) + ": no " + reference + " row for " + r.group);
        if (*base == 0.0) throw DomainError(std::string(to_string(t.metric)) + ": zero " + reference + " value for " + r.group);
        const double abs = r.value - *base;
        d.rows.push_back({r.group, r.haul, r.scenario, *base, r.value, abs, abs / *base});
    }
    return d;
}

// Body-class mean of configuration weights for one scenario.
inline ConfigurationWeights body_weights(const Study& s, Body body, const std::string& scenario) {
    const auto aircraft = s.aircraft_of(body);
    if (aircraft.empty()) throw DomainError("no aircraft in body class " + std::string(to_string(body)));
    ConfigurationWeights w;
    for (const auto& a : aircraft) {
        const StudyCell* cell = nullptr;
        for (auto h : kHauls) {
            if (!cell) cell = s.find(a, h, scenario);
        }
        if (!cell) throw DomainError("no " + scenario + " configuration for " + a);
        for (auto c : kPassengerClasses) {
            w.seats[c] += cell->weights.seats[c];
            w.seat_weight[c] += cell->weights.seat_weight[c];
            w.pax_weight[c] += cell->weights.pax_weight[c];
        }
    }
    const auto n = static_cast<double>(aircraft.size());
    for (auto c : kPassengerClasses) {
        w.seats[c] /= n;
        w.seat_weight[c] = w.seat_weight[c] / n;
        w.pax_weight[c] = w.pax_weight[c] / n;
    }
    return w;
}

// Carried weight that the variable emissions correspond to at the study's load factor.
inline Kilograms carried_weight(const StudyCell& c) {
    return c.weights.total_seat_weight() + c.weights.total_pax_weight() * c.emissions.load_factor;
}

inline double body_composite_factor(const Study& s, Body body, Haul h, const std::string& scenario) {
    std::vector<KgCo2> variable;
    std::vector<Kilograms> weight;
    for (const auto& a : s.aircraft_of(body)) {
        const auto& c = s.at(a, h, scenario);
        variable.push_back(c.emissions.variable);
        weight.push_back(carried_weight(c));
    }
    return composite_emissions_factor(variable, weight);
}

// Splits the body-class change in variable emissions into a seat-weight term
// and a passenger-weight term, both priced at the reference composite factor,
// and a remainder from the factor itself shifting.
struct WeightDecomposition {
    double seat = 0.0;
    double pax = 0.0;
    double factor = 0.0;
    double total = 0.0;
};

inline WeightDecomposition decompose_variable_change(const Study& s, Body body, Haul h, const std::string& scenario,
                                                     const std::string& reference = "baseline") {
    const auto a = body_weights(s, body, reference);
    const auto b = body_weights(s, body, scenario);
    const double f = body_composite_factor(s, body, h, reference);
    const auto variable = aggregate_body_class(per_aircraft_table(s, Metric::variable_emissions), body_map(s));
    const std::string g(to_string(body));
    WeightDecomposition d;
    d.total = variable.at(g, h, scenario) - variable.at(g, h, reference);
    d.seat = (b.total_seat_weight() - a.total_seat_weight()).value() * f;
    d.pax = (b.total_pax_weight() - a.total_pax_weight()).value() * s.options.load_factor * f;
    d.factor = d.total - d.seat - d.pax;
    return d;
}

// ---------------------------------------------------------------------------
// Export

enum class ExportFormat { csv, json };

inline std::optional<ExportFormat> parse_export_format(std::string_view s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "json") return ExportFormat::json;
    return std::nullopt;
}

struct ExportFile {
    std::string name;
    std::string content;
};

namespace detail {

using ojson = nlohmann::ordered_json;

struct Column {
    std::string name;
    int decimals = -1;  // <0: text column
};

// One logical table rendered as CSV (display rounding) or JSON (value plus
// display string for numeric columns).
struct Sheet {
    std::vector<Column> columns;
    std::vector<std::vector<std::string>> text;
    std::vector<std::vector<double>> numbers;

    void add(std::vector<std::string> t, std::vector<double> n) {
        text.push_back(std::move(t));
        numbers.push_back(std::move(n));
    }

    [[nodiscard]] std::string render(ExportFormat f) const {
        if (f == ExportFormat::csv) {
            std::string out;
            std::vector<std::string> header;
            for (const auto& c : columns) header.push_back(c.name);
            out += csv::join(header) + '\n';
            for (std::size_t i = 0; i < text.size(); ++i) {
                std::vector<std::string> fields;
                std::size_t ti = 0, ni = 0;
                for (const auto& c : columns) {
                    fields.push_back(c.decimals < 0 ? text[i][ti++] : format_fixed(numbers[i][ni++], c.decimals));
                }
                out += csv::join(fields) + '\n';
            }
            return out;
        }
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < text.size(); ++i) {
            ojson row = ojson::object();
            std::size_t ti = 0, ni = 0;
            for (const auto& c : columns) {
                if (c.decimals < 0) {
                    row[c.name] = text[i][ti++];
                } else {
                    const double v = numbers[i][ni++];
                    row[c.name] = {{"value", v}, {"display", format_fixed(v, c.decimals)}};
                }
            }
            rows.push_back(std::move(row));
        }
        return rows.dump(2) + '\n';
    }
};

inline std::string ext(ExportFormat f) { return f == ExportFormat::csv ? ".csv" : ".json"; }

inline Sheet metric_sheet(const MetricTable& t) {
    Sheet s;
    s.columns = {{t.group_kind == "body" ? "body" : "aircraft"}, {"haul"}, {"scenario"}, {std::string(units(t.metric)), 2}};
    for (const auto& r : t.rows) s.add({r.group, std::string(to_string(r.haul)), r.scenario}, {r.value});
    return s;
}

inline Sheet delta_sheet(const DeltaTable& t, bool with_relative = true) {
    Sheet s;
    s.columns = {{"body"}, {"haul"}, {"scenario"}, {"absolute_" + std::string(units(t.metric)), 2}};
    if (with_relative) s.columns.push_back({"relative_pct", 2});
    for (const auto& r : t.rows) {
        std::vector<double> n{r.absolute};
        if (with_relative) n.push_back(r.relative * 100.0);
        s.add({r.group, std::string(to_string(r.haul)), r.scenario}, std::move(n));
    }
    return s;
}

}  // namespace detail

// Every export file for a study, in a fixed order. Identical inputs give
// identical bytes.
inline std::vector<ExportFile> render_exports(const Study& s, ExportFormat f) {
    using detail::Sheet;
    std::vector<ExportFile> out;
    auto emit = [&](const std::string& name, const Sheet& sheet) { out.push_back({name + detail::ext(f), sheet.render(f)}); };

    Sheet composites;
    composites.columns = {{"aircraft"}, {"body"}, {"class"}, {"floor_area_sqft", 2}, {"area_per_seat_sqft", 2}};
    for (const auto& c : s.composites) {
        for (auto cls : kPassengerClasses) {
            composites.add({c.aircraft, std::string(to_string(c.body)), std::string(to_string(cls))},
                           {c.class_floor_area[cls].value(), c.class_area_per_seat[cls].value()});
        }
        composites.add({c.aircraft, std::string(to_string(c.body)), "service_zone"},
                       {c.service_floor_area.value(), c.service_area_per_seat ? c.service_area_per_seat->value() : 0.0});
    }
    emit("composites", composites);

    Sheet seats;
    seats.columns = {{"aircraft"}, {"scenario"}, {"class"}, {"seats", 2}, {"floor_area_sqft", 2}, {"floor_share_pct", 2}};
    for (const auto& c : s.cells) {
        if (c.haul != s.cells.front().haul) continue;
        const auto p = floor_proportions(c.config);
        for (auto cls : kPassengerClasses) {
            seats.add({c.aircraft, c.scenario, std::string(to_string(cls))},
                      {c.config.seats[cls], c.config.class_floor_area[cls].value(), p.classes[cls] * 100.0});
        }
        seats.add({c.aircraft, c.scenario, "service_zone"}, {0.0, c.config.service_floor_area.value(), p.service * 100.0});
    }
    emit("configurations", seats);

    Sheet fits;
    fits.columns = {{"aircraft"}, {"haul"}, {"intercept_kg_co2", 2}, {"slope_kg_co2_per_pax", 4},
                    {"r_squared", 6},  {"emissions_factor", 5}, {"empty_kg_co2", 2}};
    for (const auto& m : s.models) {
        fits.add({m.aircraft, std::string(to_string(m.haul))},
                 {m.source_fit.intercept.value(), m.source_fit.slope, m.source_fit.r_squared, m.emissions_factor,
                  m.empty_aircraft_emissions.value()});
    }
    emit("fits", fits);

    Sheet weights;
    weights.columns = {{"body"}, {"scenario"}, {"class"}, {"seats", 2}, {"seat_weight_kg", 2}, {"pax_weight_kg", 2}};
    for (const auto& [body, aircraft] : body_map(s)) {
        for (const auto& scenario : s.scenarios) {
            const auto w = body_weights(s, body, scenario);
            for (auto cls : kPassengerClasses) {
                weights.add({std::string(to_string(body)), scenario, std::string(to_string(cls))},
                            {w.seats[cls], w.seat_weight[cls].value(), w.pax_weight[cls].value()});
            }
            weights.add({std::string(to_string(body)), scenario, "total"},
                        {w.total_seats(), w.total_seat_weight().value(), w.total_pax_weight().value()});
        }
    }
    emit("weights", weights);

    Sheet factors;
    factors.columns = {{"body"}, {"haul"}, {"scenario"}, {"composite_factor", 5}};
    for (const auto& [body, aircraft] : body_map(s)) {
        for (auto h : kHauls) {
            for (const auto& scenario : s.scenarios) {
                factors.add({std::string(to_string(body)), std::string(to_string(h)), scenario}, {body_composite_factor(s, body, h, scenario)});
            }
        }
    }
    emit("composite_factors", factors);

    std::map<Metric, MetricTable> bodies;
    Sheet results;
    results.columns = {{"aircraft"}, {"haul"}, {"scenario"}, {"metric"}, {"value", 2}};
    for (auto m : kMetrics) {
        if (needs_fares(m) && !s.fares) continue;
        for (const auto& r : per_aircraft_table(s, m).rows) {
            results.add({r.group, std::string(to_string(r.haul)), r.scenario, std::string(to_string(m))}, {r.value});
        }
        bodies[m] = body_table(s, m);
        emit(std::string(to_string(m)), detail::metric_sheet(bodies[m]));
        if (s.scenarios.size() > 1) emit(std::string(to_string(m)) + "_delta", detail::delta_sheet(delta_table(bodies[m])));
    }
    emit("aircraft_results", results);

    if (s.fares) {
        Sheet fares;
        fares.columns = {{"haul"}, {"class"}, {"mean_usd", 2}, {"multiple_of_economy", 4}, {"records", 0}};
        for (auto h : kHauls) {
            const auto& fs = s.fare(h);
            const auto mult = class_price_multiples(fs);
            for (auto c : kPassengerClasses) {
                fares.add({std::string(to_string(h)), std::string(to_string(c))},
                          {fs.price(c).value(), mult[c], static_cast<double>(fs.counts[c])});
            }
        }
        emit("fares", fares);
    }

    // Figure data: absolute change from baseline per (body, haul); totals for the S-figures.
    if (s.scenarios.size() > 1) {
        const std::vector<std::pair<std::string, Metric>> deltas = {
            {"fig2a", Metric::emissions_per_pax},     {"fig2b", Metric::emissions_per_flight},
            {"fig2c", Metric::lifetime_emissions},    {"fig3a", Metric::variable_emissions},
            {"fig3b", Metric::lifetime_variable_emissions}, {"fig4a", Metric::ticket_price},
            {"fig4b", Metric::revenue_per_flight},    {"fig4c", Metric::lifetime_revenue},
        };
        for (const auto& [name, m] : deltas) {
            if (!bodies.count(m)) continue;
            emit("figures/" + name, detail::delta_sheet(delta_table(bodies[m]), false));
        }
    }
    const std::vector<std::pair<std::string, Metric>> totals = {
        {"figS2a", Metric::emissions_per_pax}, {"figS2b", Metric::emissions_per_flight},
        {"figS2c", Metric::lifetime_emissions}, {"figS3", Metric::revenue_per_flight},
    };
    for (const auto& [name, m] : totals) {
        if (bodies.count(m)) emit("figures/" + name, detail::metric_sheet(bodies[m]));
    }
    return out;
}

inline void write_exports(const std::vector<ExportFile>& files, const std::filesystem::path& dir) {
    for (const auto& f : files) {
        const auto path = dir / f.name;
        std::filesystem::create_directories(path.parent_path());
        detail::write_text(path, f.content);
    }
}

}  // namespace cabinco2

#endif  // CABINCO2_REPORT_HPP
