#ifndef CABINCO2_CLI_HPP
#define CABINCO2_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cabinco2/reconcile.hpp"

namespace cabinco2::cli {

enum Exit { ok = 0, failed = 1, usage = 2 };

struct UsageError : Error {
    using Error::Error;
};

struct RunConfig {
    std::string data = "data";
    std::string constants;
    std::vector<std::string> scenarios;
    std::string allocation = "as-written";
    double load_factor = 1.0;
    std::string out;
    std::string format = "csv";
    std::optional<double> tolerance;
    double pp_tolerance = 0.1;
    std::vector<std::string> aircraft;
    std::string reference;
    std::string errata;
    bool verbose = false;
    std::vector<double> elasticities;
    double trip_budget = kTripBudgetUsd;
};

namespace detail {

// Fills every field the command line left unset from the run config file.
inline void apply_config_file(RunConfig& cfg, const std::string& path, const CLI::App& app) {
    const auto doc = config::read(path);
    auto unset = [&](const char* flag) { return app.get_option(flag)->count() == 0; };
    static const std::set<std::string> known = {"data",   "constants", "scenarios",    "allocation", "load_factor", "out",
                                                "format", "tolerance", "pp_tolerance", "aircraft",   "reference",   "errata",
                                                "trip_budget"};
    for (const auto& [key, value] : doc.entries) {
        if (!known.count(key)) throw ParseError(doc.source, value.line, 0, "unknown run config key '" + key + "'");
    }
    if (auto v = doc.string("data"); v && unset("--data")) cfg.data = *v;
    if (auto v = doc.string("constants"); v && unset("--constants")) cfg.constants = *v;
    if (doc.find("scenarios") && unset("--scenario")) cfg.scenarios = doc.strings("scenarios");
    if (auto v = doc.string("allocation"); v && unset("--allocation")) cfg.allocation = *v;
    if (auto v = doc.number("load_factor"); v && unset("--load-factor")) cfg.load_factor = *v;
    if (auto v = doc.string("out"); v && unset("--out")) cfg.out = *v;
    if (auto v = doc.string("format"); v && unset("--format")) cfg.format = *v;
    if (auto v = doc.number("tolerance"); v && unset("--tolerance")) cfg.tolerance = *v;
    if (auto v = doc.number("pp_tolerance"); v && unset("--pp-tolerance")) cfg.pp_tolerance = *v;
    if (doc.find("aircraft") && unset("--aircraft")) cfg.aircraft = doc.strings("aircraft");
    if (auto v = doc.string("reference"); v && unset("--reference")) cfg.reference = *v;
    if (auto v = doc.string("errata"); v && unset("--errata")) cfg.errata = *v;
    if (auto v = doc.number("trip_budget"); v && unset("--trip-budget")) cfg.trip_budget = *v;
}

inline Dataset load(const RunConfig& cfg) {
    if (!std::filesystem::is_directory(cfg.data)) throw Error("data directory not found: " + cfg.data);
    auto paths = DatasetPaths::in_directory(cfg.data);
    if (!cfg.constants.empty()) paths.constants = cfg.constants;
    return load_dataset(paths);
}

inline StudyOptions study_options(const RunConfig& cfg, bool force_all_economy = false) {
    StudyOptions o;
    auto alloc = parse_allocation(cfg.allocation);
    if (!alloc) throw UsageError("--allocation must be as-written or service-to-class-seats");
    o.allocation = *alloc;
    if (!(cfg.load_factor >= 0.0 && cfg.load_factor <= 1.0)) throw UsageError("--load-factor must be within [0, 1]");
    o.load_factor = cfg.load_factor;
    if (!cfg.scenarios.empty()) {
        o.all_economy = force_all_economy;
        for (const auto& s : cfg.scenarios) {
            if (s == "baseline") continue;
            if (s == "all_economy") {
                o.all_economy = true;
                continue;
            }
            if (!std::filesystem::exists(s)) throw UsageError("scenario '" + s + "' is neither a built-in name nor a file");
            o.custom.push_back(parse_scenario(config::read(s)));
        }
    }
    return o;
}

inline ExportFormat export_format(const RunConfig& cfg) {
    auto f = parse_export_format(cfg.format);
    if (!f) throw UsageError("--format must be csv or json");
    return *f;
}

inline std::string render(const cabinco2::detail::Sheet& s, const RunConfig& cfg) { return s.render(export_format(cfg)); }

inline bool selected(const RunConfig& cfg, const std::string& aircraft) {
    return cfg.aircraft.empty() || std::find(cfg.aircraft.begin(), cfg.aircraft.end(), aircraft) != cfg.aircraft.end();
}

inline void emit(const std::vector<ExportFile>& files, const RunConfig& cfg, std::ostream& out) {
    if (!cfg.out.empty()) {
        write_exports(files, cfg.out);
        out << "wrote " << files.size() << " files to " << cfg.out << "\n";
        return;
    }
    for (const auto& f : files) out << "== " << f.name << "\n" << f.content;
}

}  // namespace detail

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const auto d = detail::load(cfg);
    const auto report = validate_dataset(d);
    for (const auto& f : report.findings) {
        out << to_string(f.severity) << " [" << f.code << "] " << f.location << ": " << f.message << "\n";
    }
    out << d.layouts.size() << " layout rows, " << d.samples.size() << " samples, " << d.fares.size() << " fares, "
        << d.specs.size() << " aircraft; " << report.findings.size() << " findings\n";
    return report.has_errors() ? failed : ok;
}

inline int cmd_composite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto d = detail::load(cfg);
    cabinco2::detail::Sheet s;
    s.columns = {{"aircraft"}, {"body"},       {"class"},         {"floor_area_sqft", 2}, {"area_per_seat_sqft", 2},
                 {"floor_share_pct", 2},       {"baseline_seats", 2}, {"all_economy_seats", 2}};
    for (const auto& c : build_composites(d)) {
        if (!detail::selected(cfg, c.aircraft)) continue;
        const auto base = baseline_configuration(c);
        const auto all = all_economy_configuration(c);
        const auto p = floor_proportions(base);
        for (auto cls : kPassengerClasses) {
            s.add({c.aircraft, std::string(to_string(c.body)), std::string(to_string(cls))},
                  {c.class_floor_area[cls].value(), c.class_area_per_seat[cls].value(), p.classes[cls] * 100.0, base.seats[cls],
                   all.seats[cls]});
        }
        s.add({c.aircraft, std::string(to_string(c.body)), "service_zone"},
              {c.service_floor_area.value(), c.service_area_per_seat ? c.service_area_per_seat->value() : 0.0, p.service * 100.0, 0.0, 0.0});
        if (auto note = exit_limit_advisory(c, all)) err << "advisory: " << *note << "\n";
    }
    out << detail::render(s, cfg);
    return ok;
}

inline int cmd_fit(const RunConfig& cfg, std::ostream& out) {
    const auto d = detail::load(cfg);
    for (const auto& a : cfg.aircraft) {
        if (!d.spec(a)) throw UsageError("unknown aircraft '" + a + "'");
    }
    cabinco2::detail::Sheet s;
    s.columns = {{"aircraft"}, {"haul"}, {"intercept_kg_co2", 2}, {"slope_kg_co2_per_pax", 4}, {"r_squared", 6},
                 {"emissions_factor", 5}, {"empty_kg_co2", 2}};
    for (const auto& c : build_composites(d)) {
        if (!detail::selected(cfg, c.aircraft)) continue;
        const auto base = baseline_configuration(c);
        for (auto h : kHauls) {
            const auto samples = samples_for(d, c.aircraft, h);
            if (samples.empty()) continue;
            const auto m = derive_emissions_model(fit_linear(samples), base, d.constants);
            s.add({c.aircraft, std::string(to_string(h))},
                  {m.source_fit.intercept.value(), m.source_fit.slope, m.source_fit.r_squared, m.emissions_factor,
                   m.empty_aircraft_emissions.value()});
        }
    }
    out << detail::render(s, cfg);
    return ok;
}

inline int cmd_scenario(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto d = detail::load(cfg);
    const auto study = run_study(d, detail::study_options(cfg));
    for (const auto& a : study.advisories) err << "advisory: " << a << "\n";
    auto files = render_exports(study, detail::export_format(cfg));
    if (cfg.out.empty()) {
        std::vector<ExportFile> keep;
        for (auto& f : files) {
            if (f.name.rfind("figures/", 0) != 0 && f.name.rfind("composites", 0) != 0 && f.name.rfind("configurations", 0) != 0) {
                keep.push_back(std::move(f));
            }
        }
        files = std::move(keep);
    }
    detail::emit(files, cfg, out);
    return ok;
}

inline int cmd_reprice(const RunConfig& cfg, std::ostream& out) {
    const auto d = detail::load(cfg);
    if (d.fares.empty()) throw Error("reprice needs fares.csv in " + cfg.data);
    const auto study = run_study(d, detail::study_options(cfg, true));
    cabinco2::detail::Sheet s;
    s.columns = {{"group"}, {"haul"}, {"scenario"}, {"economy_fare_usd", 2}, {"new_price_usd", 2}, {"delta_usd", 2}, {"delta_pct", 2}};
    for (const auto& c : study.cells) {
        if (!c.reprice || !detail::selected(cfg, c.aircraft)) continue;
        const double fare = study.fare(c.haul).price(CabinClass::economy).value();
        s.add({c.aircraft, std::string(to_string(c.haul)), c.scenario},
              {fare, c.reprice->new_price.value(), c.reprice->delta_abs.value(), c.reprice->delta_rel * 100.0});
    }
    if (cfg.aircraft.empty()) {
        for (const auto& r : delta_table(body_table(study, Metric::ticket_price)).rows) {
            s.add({r.group, std::string(to_string(r.haul)), r.scenario}, {r.from, r.to, r.absolute, r.relative * 100.0});
        }
    }
    out << detail::render(s, cfg);
    return ok;
}

inline int cmd_elasticity(const RunConfig& cfg, std::ostream& out) {
    const auto d = detail::load(cfg);
    if (d.fares.empty()) throw Error("elasticity needs fares.csv in " + cfg.data);
    if (!(cfg.trip_budget > 0.0)) throw UsageError("--trip-budget must be positive");
    const auto study = run_study(d, detail::study_options(cfg, true));
    std::vector<std::pair<std::string, double>> eps;
    for (double e : cfg.elasticities) eps.emplace_back(format_exact(e), e);
    if (eps.empty()) {
        for (const auto& p : kElasticityPresets) eps.emplace_back(std::string(p.region), p.value);
    }
    cabinco2::detail::Sheet s;
    s.columns = {{"body"}, {"haul"}, {"scenario"}, {"elasticity_label"}, {"elasticity", 3},
                 {"price_change_pct", 2}, {"demand_change_pct", 2}, {"budget_share_pct", 3}};
    for (const auto& r : delta_table(body_table(study, Metric::ticket_price)).rows) {
        const double share = budget_share(Usd(r.absolute), Usd(cfg.trip_budget));
        for (const auto& [label, e] : eps) {
            s.add({r.group, std::string(to_string(r.haul)), r.scenario, label},
                  {e, r.relative * 100.0, elasticity_response(e, r.relative) * 100.0, share * 100.0});
        }
    }
    out << detail::render(s, cfg);
    return ok;
}

inline int cmd_reconcile(const RunConfig& cfg, std::ostream& out) {
    const auto d = detail::load(cfg);
    const auto study = run_study(d, detail::study_options(cfg, true));
    const auto ref_dir = std::filesystem::path(cfg.data) / "reference";
    const auto ref_path = cfg.reference.empty() ? (ref_dir / "paper_tables.csv").string() : cfg.reference;
    const auto errata_path = cfg.errata.empty() ? (ref_dir / "errata.csv").string() : cfg.errata;
    for (const auto& p : {ref_path, errata_path}) {
        if (!std::filesystem::exists(p)) throw Error("missing input file: " + p);
    }
    if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) throw UsageError("--tolerance must be >= 0");
    ReconcileOptions o;
    o.tolerance = cfg.tolerance;
    o.pp_tolerance = cfg.pp_tolerance;
    const auto report = reconcile(study, d, load_reference(ref_path), load_errata(errata_path), o);
    const auto text = render_reconciliation_text(report, cfg.verbose);
    const auto json = render_reconciliation_json(report);
    if (!cfg.out.empty()) {
        write_exports({{"reconciliation.json", json}, {"reconciliation.txt", text}}, cfg.out);
    }
    out << (cfg.format == "json" ? json : text);
    return report.ok() ? ok : failed;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.out.empty()) throw UsageError("export needs --out DIR");
    return cmd_scenario(cfg, out, err);
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cabin configuration emissions and revenue model"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::string config_file;
    double load_factor = 1.0;
    std::string tolerance_text;

    app.add_option("--data", cfg.data, "Dataset directory")->capture_default_str();
    app.add_option("--constants", cfg.constants, "Model constants file");
    app.add_option("--config", config_file, "Run config file; flags win over its keys");
    app.add_option("--scenario", cfg.scenarios, "baseline | all_economy | scenario FILE (repeatable)");
    app.add_option("--allocation", cfg.allocation, "as-written | service-to-class-seats")->capture_default_str();
    app.add_option("--load-factor", load_factor, "Passenger load factor in [0, 1]");
    app.add_option("--out", cfg.out, "Output directory");
    app.add_option("--format", cfg.format, "csv | json")->capture_default_str();
    app.add_option("--tolerance", tolerance_text, "Relative tolerance for reconciliation");
    app.add_option("--pp-tolerance", cfg.pp_tolerance, "Percentage-point tolerance for percent cells")->capture_default_str();
    app.add_option("--aircraft", cfg.aircraft, "Restrict to aircraft (repeatable)");
    app.add_option("--reference", cfg.reference, "Reference tables CSV");
    app.add_option("--errata", cfg.errata, "Errata ledger CSV");
    app.add_option("--elasticity", cfg.elasticities, "Price elasticity of demand (repeatable)");
    app.add_option("--trip-budget", cfg.trip_budget, "Per-trip budget in USD")->capture_default_str();
    app.add_flag("--verbose,-v", cfg.verbose, "List matching cells too");

    auto* validate = app.add_subcommand("validate", "Load and check the dataset");
    auto* composite = app.add_subcommand("composite", "Composite aircraft and scenario seat counts");
    auto* fit = app.add_subcommand("fit", "Regression fits and emissions factors");
    auto* scenario = app.add_subcommand("scenario", "Metric tables for the requested scenarios");
    auto* reprice = app.add_subcommand("reprice", "Revenue-neutral economy fares");
    auto* elasticity = app.add_subcommand("elasticity", "Demand response and budget share of the fare change");
    auto* reconcile_cmd = app.add_subcommand("reconcile", "Compare results with the reference tables");
    auto* export_cmd = app.add_subcommand("export", "Write tables and figure data to --out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (!config_file.empty()) {
            if (!std::filesystem::exists(config_file)) throw UsageError("config file not found: " + config_file);
            detail::apply_config_file(cfg, config_file, app);
        }
        if (app.get_option("--load-factor")->count() > 0) cfg.load_factor = load_factor;
        if (!tolerance_text.empty()) {
            double t = 0.0;
            if (!csv::parse_double(tolerance_text, t)) throw UsageError("--tolerance must be a number");
            cfg.tolerance = t;
        }
        if (validate->parsed()) return cmd_validate(cfg, out);
        if (composite->parsed()) return cmd_composite(cfg, out, err);
        if (fit->parsed()) return cmd_fit(cfg, out);
        if (scenario->parsed()) return cmd_scenario(cfg, out, err);
        if (reprice->parsed()) return cmd_reprice(cfg, out);
        if (elasticity->parsed()) return cmd_elasticity(cfg, out);
        if (reconcile_cmd->parsed()) return cmd_reconcile(cfg, out);
        if (export_cmd->parsed()) return cmd_export(cfg, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}

}  // namespace cabinco2::cli

#endif  // CABINCO2_CLI_HPP
