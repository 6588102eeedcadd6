#ifndef CABINCO2_RECONCILE_HPP
#define CABINCO2_RECONCILE_HPP

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cabinco2/report.hpp"

namespace cabinco2 {

struct ReferenceCell {
    std::string table;
    std::string row;
    std::string column;
    double value = 0.0;
    int decimals = 2;
    bool percent = false;  // value is in percent / percentage points
    std::string erratum;   // ledger id, empty when none
};

enum class ReconcileStatus { match, mismatch, known_erratum, non_reproducible };

constexpr std::string_view to_string(ReconcileStatus s) {
    switch (s) {
        case ReconcileStatus::match: return "match";
        case ReconcileStatus::mismatch: return "mismatch";
        case ReconcileStatus::known_erratum: return "known_erratum";
        case ReconcileStatus::non_reproducible: return "non_reproducible";
    }
    return "?";
}

struct ErratumEntry {
    std::string id;
    std::string table;
    ReconcileStatus status = ReconcileStatus::known_erratum;
    std::string description;
    std::string evidence;
};

struct ErrataLedger {
    std::vector<ErratumEntry> entries;

    [[nodiscard]] const ErratumEntry* find(const std::string& id) const {
        for (const auto& e : entries) {
            if (e.id == id) return &e;
        }
        return nullptr;
    }
};

inline std::vector<ReferenceCell> load_reference(const std::string& path) {
    const auto t = csv::read(path);
    csv::require_columns(t, {"table", "row", "column", "value", "decimals", "kind", "erratum"});
    std::vector<ReferenceCell> out;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        ReferenceCell c;
        c.table = r.text("table");
        c.row = r.text("row");
        c.column = r.text("column");
        c.value = *r.number("value");
        c.decimals = static_cast<int>(*r.number("decimals"));
        const auto kind = r.text("kind");
        if (kind != "value" && kind != "percent") r.fail("kind", "expected value or percent");
        c.percent = kind == "percent";
        c.erratum = r.text("erratum", false);
        out.push_back(std::move(c));
    }
    return out;
}

inline ErrataLedger load_errata(const std::string& path) {
    const auto t = csv::read(path);
    csv::require_columns(t, {"id", "table", "status", "description", "evidence"});
    ErrataLedger l;
    for (const auto& row : t.rows) {
        detail::RowReader r(t, row);
        ErratumEntry e;
        e.id = r.text("id");
        e.table = r.text("table");
        const auto status = r.text("status");
        if (status == "known_erratum") {
            e.status = ReconcileStatus::known_erratum;
        } else if (status == "non_reproducible") {
            e.status = ReconcileStatus::non_reproducible;
        } else {
            r.fail("status", "expected known_erratum or non_reproducible");
        }
        e.description = r.text("description");
        e.evidence = r.text("evidence", false);
        l.entries.push_back(std::move(e));
    }
    return l;
}

struct Tolerance {
    double relative = 0.005;
    double absolute = 0.0;
};

struct ReconcileOptions {
    std::optional<double> tolerance;  // relative; replaces every table default
    double pp_tolerance = 0.1;        // percentage points, for percent cells
    std::string scenario = "all_economy";
};

struct ReconciliationEntry {
    std::string table_id;
    std::string row;
    std::string column;
    double paper_value = 0.0;
    std::optional<double> computed_value;
    double abs_error = 0.0;
    double rel_error = 0.0;
    Tolerance tolerance;
    ReconcileStatus status = ReconcileStatus::mismatch;
    std::string erratum;
    std::string note;
};

// Default tolerances: 0.2% where the tables are reproduced tightly, 0.5%
// elsewhere, a 2 kg floor on absolute per-flight changes, and a pp band for
// percent cells.
inline Tolerance default_tolerance(const ReferenceCell& c, const ReconcileOptions& o) {
    if (c.percent) return {0.0, o.pp_tolerance};
    Tolerance t;
    for (const char* tight : {"S4ai", "S4bi", "S4ci", "S5bi", "T1"}) {
        if (c.table == tight) t.relative = 0.002;
    }
    if (c.table == "S4biii" || c.table == "S4eii") t.absolute = 2.0;
    if (o.tolerance) t.relative = *o.tolerance;
    return t;
}

// A cell matches when the gap is within tolerance plus half a unit of the
// printed last digit.
inline bool within(double computed, const ReferenceCell& c, const Tolerance& t) {
    const double half_ulp = 0.5 * std::pow(10.0, -c.decimals);
    return std::fabs(computed - c.value) <= std::max(t.relative * std::fabs(c.value), t.absolute) + half_ulp;
}

namespace detail {

struct ReferenceContext {
    const Study& study;
    std::string scenario;
    std::map<Metric, MetricTable> body;
    std::map<Metric, DeltaTable> delta;

    ReferenceContext(const Study& s, std::string sc) : study(s), scenario(std::move(sc)) {
        for (auto m : kMetrics) {
            if (needs_fares(m) && !s.fares) continue;
            body[m] = body_table(s, m);
            if (std::find(s.scenarios.begin(), s.scenarios.end(), scenario) != s.scenarios.end()) {
                delta[m] = delta_table(body[m]);
            }
        }
    }
};

inline std::vector<std::string> split(const std::string& s, char sep = '.') {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto p = s.find(sep, start);
        out.push_back(s.substr(start, p - start));
        if (p == std::string::npos) return out;
        start = p + 1;
    }
}

struct TableMetric {
    const char* table;
    Metric metric;
    int form;  // 0 level, 1 relative pct, 2 absolute
};

inline constexpr TableMetric kBodyTables[] = {
    {"S4ai", Metric::emissions_per_pax, 0},          {"S4aii", Metric::emissions_per_pax, 1},
    {"S4aiii", Metric::emissions_per_pax, 2},        {"S4bi", Metric::emissions_per_flight, 0},
    {"S4bii", Metric::emissions_per_flight, 1},      {"S4biii", Metric::emissions_per_flight, 2},
    {"S4ci", Metric::lifetime_emissions, 0},         {"S4cii", Metric::lifetime_emissions, 1},
    {"S4ciii", Metric::lifetime_emissions, 2},       {"S4di", Metric::variable_per_pax, 1},
    {"S4dii", Metric::variable_per_pax, 2},          {"S4ei", Metric::variable_emissions, 1},
    {"S4eii", Metric::variable_emissions, 2},        {"S4fi", Metric::lifetime_variable_emissions, 1},
    {"S4fii", Metric::lifetime_variable_emissions, 2}, {"S5ai", Metric::ticket_price, 1},
    {"S5aai", Metric::ticket_price, 2},              {"S5bi", Metric::revenue_per_flight, 0},
    {"S5bii", Metric::revenue_per_flight, 1},        {"S5biii", Metric::revenue_per_flight, 2},
    {"S5ci", Metric::lifetime_revenue, 1},           {"S5cii", Metric::lifetime_revenue, 2},
};

inline std::optional<CabinClass> passenger_class(const std::string& s) {
    auto c = parse_cabin_class(s);
    if (c && is_passenger_class(*c)) return c;
    return std::nullopt;
}

inline std::optional<double> weight_cell(const ConfigurationWeights& w, const std::string& cls, const std::string& what) {
    if (cls == "total") {
        if (what == "seats") return w.total_seats();
        if (what == "seat_weight") return w.total_seat_weight().value();
        if (what == "pax_weight") return w.total_pax_weight().value();
        return std::nullopt;
    }
    auto c = passenger_class(cls);
    if (!c) return std::nullopt;
    if (what == "seats") return w.seats[*c];
    if (what == "seat_weight") return w.seat_weight[*c].value();
    if (what == "pax_weight") return w.pax_weight[*c].value();
    return std::nullopt;
}

inline std::optional<double> lookup(const ReferenceContext& ctx, const ReferenceCell& c) {
    const Study& s = ctx.study;
    const auto col = split(c.column);
    const auto body = parse_body(c.row);
    const auto& sc = ctx.scenario;
    const auto find_composite = [&](const std::string& a) -> const CompositeAircraft* {
        for (const auto& comp : s.composites) {
            if (comp.aircraft == a) return &comp;
        }
        return nullptr;
    };

    for (const auto& tm : kBodyTables) {
        if (c.table != tm.table) continue;
        if (!body) return std::nullopt;
        const std::string g(to_string(*body));
        if (tm.form == 0) {
            if (col.size() != 2 || !ctx.body.count(tm.metric)) return std::nullopt;
            auto h = parse_haul(col[1]);
            if (!h) return std::nullopt;
            return ctx.body.at(tm.metric).value(g, *h, col[0]);
        }
        auto h = parse_haul(c.column);
        if (!h || !ctx.delta.count(tm.metric)) return std::nullopt;
        const auto& row = ctx.delta.at(tm.metric).at(g, *h, sc);
        return tm.form == 1 ? row.relative * 100.0 : row.absolute;
    }

    if (c.table == "S1b") {
        const auto* comp = find_composite(c.row);
        if (!comp || col.size() != 2) return std::nullopt;
        const auto cls = parse_cabin_class(col[1]);
        if (!cls) return std::nullopt;
        const bool service = *cls == CabinClass::service_zone;
        if (col[0] == "seats") {
            if (service || !comp->mean_seat_count) return std::nullopt;
            return (*comp->mean_seat_count)[*cls];
        }
        if (col[0] == "area") return (service ? comp->service_floor_area : comp->class_floor_area[*cls]).value();
        if (col[0] == "per_seat") {
            if (service) return comp->service_area_per_seat ? std::optional<double>(comp->service_area_per_seat->value()) : std::nullopt;
            return comp->class_area_per_seat[*cls].value();
        }
        if (col[0] == "alloc_pct") {
            const auto p = floor_proportions(baseline_configuration(*comp));
            return 100.0 * (service ? p.service : p.classes[*cls]);
        }
        return std::nullopt;
    }

    if (c.table == "T1") {
        if (c.row == "all" && col.size() == 2 && col[0] == "distance") {
            auto h = parse_haul(col[1]);
            return h ? std::optional<double>(s.constants.stage_length_for(*h)) : std::nullopt;
        }
        const auto* comp = find_composite(c.row);
        if (!comp) return std::nullopt;
        if (c.column == "max_cycles") return comp->max_cycles;
        if (c.column == "max_hours") return comp->max_hours;
        if (col.size() == 2 && col[0] == "revenue") {
            auto h = parse_haul(col[1]);
            const auto* cell = h ? s.find(c.row, *h, "baseline") : nullptr;
            if (!cell || !cell->revenue) return std::nullopt;
            return cell->revenue->total.value();
        }
        return std::nullopt;
    }

    if (c.table == "T2") {
        if (col.size() != 2) return std::nullopt;
        auto cls = passenger_class(col[1]);
        const StudyCell* cell = s.find(c.row, Haul::short_haul, col[0]);
        if (!cell) cell = s.find(c.row, Haul::long_haul, col[0]);
        if (!cls || !cell) return std::nullopt;
        return cell->config.seats[*cls];
    }

    if (c.table == "T3") {
        if (!body || col.size() != 3) return std::nullopt;
        return weight_cell(body_weights(s, *body, col[0]), col[1], col[2]);
    }

    if (c.table == "T4") {
        if (!body || col.size() != 2) return std::nullopt;
        auto h = parse_haul(col[1]);
        if (!h) return std::nullopt;
        return body_composite_factor(s, *body, *h, col[0]);
    }

    if (c.table == "S2a" || c.table == "S2b" || c.table == "S2c" || c.table == "S2d") {
        return std::nullopt;  // filled from the dataset in reconcile()
    }

    if (c.table == "S2e" || c.table == "S2f") {
        if (col.size() != 2) return std::nullopt;
        auto h = parse_haul(col[0]);
        if (!h) return std::nullopt;
        const auto& m = s.model(c.row, *h);
        if (col[1] == "intercept") return m.source_fit.intercept.value();
        if (col[1] == "slope") return m.source_fit.slope;
        if (col[1] == "empty") return m.empty_aircraft_emissions.value();
        if (col[1] == "factor") return m.emissions_factor;
        return std::nullopt;
    }

    if (c.table == "S3c") {
        auto cls = passenger_class(c.row);
        auto h = parse_haul(c.column);
        if (!cls || !h || !s.fares) return std::nullopt;
        return s.fare(*h).price(*cls).value();
    }

    if (c.table == "results") {
        if (c.row == "class_multiple" && col.size() == 2) {
            auto h = parse_haul(col[0]);
            auto cls = passenger_class(col[1]);
            if (!h || !cls || !s.fares) return std::nullopt;
            return class_price_multiples(s.fare(*h))[*cls];
        }
        if (!ctx.delta.count(Metric::ticket_price)) return std::nullopt;
        const auto& price = ctx.delta.at(Metric::ticket_price);
        if (c.row == "elasticity") {
            for (const auto& p : kElasticityPresets) {
                if (p.region == c.column) return 100.0 * elasticity_response(p.value, price.at("narrow", Haul::short_haul, sc).relative);
            }
            return std::nullopt;
        }
        if (col.size() < 2) return std::nullopt;
        const auto b = parse_body(col[0]);
        if (!b) return std::nullopt;
        const std::string g(to_string(*b));
        if (c.row == "budget_share") {
            auto h = parse_haul(col[1]);
            if (!h) return std::nullopt;
            return 100.0 * budget_share(Usd(price.at(g, *h, sc).absolute), Usd(kTripBudgetUsd));
        }
        if (c.row == "equivalent_seats") {
            auto h = parse_haul(col[1]);
            if (!h) return std::nullopt;
            const double revenue = ctx.body.at(Metric::revenue_per_flight).at(g, *h, "baseline");
            return equivalent_economy_seats(Usd(revenue), s.fare(*h).price(CabinClass::economy));
        }
        if (c.row == "weight_change") {
            const auto before = body_weights(s, *b, "baseline");
            const auto after = body_weights(s, *b, sc);
            if (col[1] == "seat_weight") return (after.total_seat_weight() - before.total_seat_weight()).value();
            if (col[1] == "pax_weight") return (after.total_pax_weight() - before.total_pax_weight()).value();
            return std::nullopt;
        }
        if (c.row == "decomposition" && col.size() == 3) {
            auto h = parse_haul(col[1]);
            if (!h) return std::nullopt;
            const auto d = decompose_variable_change(s, *b, *h, sc);
            if (col[2] == "seat") return d.seat;
            if (col[2] == "pax") return d.pax;
            if (col[2] == "factor") return d.factor;
            if (col[2] == "total") return d.total;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

struct ReconciliationReport {
    std::vector<ReconciliationEntry> entries;

    [[nodiscard]] std::size_t count(ReconcileStatus s) const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.status == s; }));
    }
    [[nodiscard]] bool ok() const { return count(ReconcileStatus::mismatch) == 0; }
};

// One entry per reference cell. Cells naming a ledger entry take its status;
// every other cell is a match or a mismatch, including cells the pipeline
// cannot compute.
inline ReconciliationReport reconcile(const Study& study, const Dataset& data, const std::vector<ReferenceCell>& reference,
                                      const ErrataLedger& ledger, const ReconcileOptions& options = {}) {
    detail::ReferenceContext ctx(study, options.scenario);
    ReconciliationReport report;
    for (const auto& cell : reference) {
        ReconciliationEntry e;
        e.table_id = cell.table;
        e.row = cell.row;
        e.column = cell.column;
        e.paper_value = cell.value;
        e.erratum = cell.erratum;
        e.tolerance = default_tolerance(cell, options);
        try {
            if (cell.table.size() == 3 && cell.table.rfind("S2", 0) == 0 && cell.table[2] >= 'a' && cell.table[2] <= 'd') {
                const auto col = detail::split(cell.column);
                auto h = col.size() == 2 ? parse_haul(col[0]) : std::nullopt;
                for (const auto& smp : data.samples) {
                    if (h && smp.aircraft == cell.row && smp.haul == *h && std::to_string(smp.passengers) == col[1]) {
                        e.computed_value = smp.emissions.value();
                    }
                }
            } else {
                e.computed_value = detail::lookup(ctx, cell);
            }
        } catch (const Error& ex) {
            e.note = ex.what();
        }
        if (e.computed_value) {
            e.abs_error = std::fabs(*e.computed_value - cell.value);
            e.rel_error = cell.value != 0.0 ? e.abs_error / std::fabs(cell.value) : e.abs_error;
        }
        if (!cell.erratum.empty()) {
            const auto* entry = ledger.find(cell.erratum);
            if (entry) {
                e.status = entry->status;
                e.note = cell.erratum + ": " + entry->description;
            } else {
                e.status = ReconcileStatus::mismatch;
                e.note = "erratum " + cell.erratum + " is not in the ledger";
            }
        } else if (!e.computed_value) {
            e.status = ReconcileStatus::mismatch;
            if (e.note.empty()) e.note = "no computed value for this cell";
        } else {
            e.status = within(*e.computed_value, cell, e.tolerance) ? ReconcileStatus::match : ReconcileStatus::mismatch;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

inline std::string render_reconciliation_text(const ReconciliationReport& r, bool verbose = false) {
    std::string out;
    out += "cells: " + std::to_string(r.entries.size()) + "\n";
    for (auto s : {ReconcileStatus::match, ReconcileStatus::mismatch, ReconcileStatus::known_erratum, ReconcileStatus::non_reproducible}) {
        out += "  " + std::string(to_string(s)) + ": " + std::to_string(r.count(s)) + "\n";
    }
    for (const auto& e : r.entries) {
        if (!verbose && e.status == ReconcileStatus::match) continue;
        out += std::string(to_string(e.status)) + "  " + e.table_id + " " + e.row + " " + e.column + "  paper " + format_exact(e.paper_value) +
               "  computed " + (e.computed_value ? format_fixed(*e.computed_value, 4) : std::string("n/a"));
        if (e.computed_value) out += "  rel " + format_fixed(e.rel_error * 100.0, 3) + "%";
        if (!e.note.empty()) out += "  [" + e.note + "]";
        out += "\n";
    }
    out += r.ok() ? "result: PASS\n" : "result: FAIL\n";
    return out;
}

inline std::string render_reconciliation_json(const ReconciliationReport& r) {
    using nlohmann::ordered_json;
    ordered_json summary = ordered_json::object();
    summary["cells"] = r.entries.size();
    for (auto s : {ReconcileStatus::match, ReconcileStatus::mismatch, ReconcileStatus::known_erratum, ReconcileStatus::non_reproducible}) {
        summary[std::string(to_string(s))] = r.count(s);
    }
    summary["ok"] = r.ok();
    ordered_json entries = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json j = ordered_json::object();
        j["table_id"] = e.table_id;
        j["row"] = e.row;
        j["column"] = e.column;
        j["paper_value"] = e.paper_value;
        j["computed_value"] = e.computed_value ? ordered_json(*e.computed_value) : ordered_json(nullptr);
        j["abs_error"] = e.abs_error;
        j["rel_error"] = e.rel_error;
        j["tolerance"] = {{"relative", e.tolerance.relative}, {"absolute", e.tolerance.absolute}};
        j["status"] = std::string(to_string(e.status));
        j["erratum"] = e.erratum;
        j["note"] = e.note;
        entries.push_back(std::move(j));
    }
    ordered_json doc = ordered_json::object();
    doc["summary"] = summary;
    doc["entries"] = entries;
    return doc.dump(2) + "\n";
}

}  // namespace cabinco2

#endif  // CABINCO2_RECONCILE_HPP
