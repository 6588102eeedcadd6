#include <gtest/gtest.h>

#include "json.hpp"

#include "support.hpp"

using namespace cabinco2;

namespace {

const Study& study() { return testing_support::shipped_study(); }

void expect_printed(double computed, double printed, double rel) {
    EXPECT_LE(std::fabs(computed - printed), rel * std::fabs(printed) + 0.005) << "computed " << computed << " printed " << printed;
}

}  // namespace

TEST(BodyClass, MeanOfAircraft) {
    for (auto m : kMetrics) {
        if (m == Metric::ticket_price) continue;
        const auto per = per_aircraft_table(study(), m);
        const auto body = body_table(study(), m);
        EXPECT_EQ(body.group_kind, "body");
        for (auto h : kHauls) {
            for (const auto& sc : study().scenarios) {
                const double expect = 0.5 * (per.at("A330-200", h, sc) + per.at("777-200LR", h, sc));
                EXPECT_NEAR(body.at("wide", h, sc), expect, 1e-9 * std::fabs(expect));
            }
        }
    }
}

TEST(BodyClass, PerFlightEmissionsMatchPublished) {
    const auto t = body_table(study(), Metric::emissions_per_flight);
    expect_printed(t.at("narrow", Haul::short_haul, "baseline"), 15942.23, 0.002);
    expect_printed(t.at("narrow", Haul::long_haul, "all_economy"), 51622.84, 0.002);
    expect_printed(t.at("wide", Haul::short_haul, "all_economy"), 36729.03, 0.002);
    expect_printed(t.at("wide", Haul::long_haul, "baseline"), 111751.13, 0.002);
}

TEST(BodyClass, AllEconomyPerPassengerMatchesPublished) {
    const auto t = body_table(study(), Metric::emissions_per_pax);
    expect_printed(t.at("narrow", Haul::short_haul, "all_economy"), 91.42, 0.002);
    expect_printed(t.at("narrow", Haul::long_haul, "all_economy"), 296.91, 0.002);
    expect_printed(t.at("wide", Haul::short_haul, "all_economy"), 107.09, 0.002);
    expect_printed(t.at("wide", Haul::long_haul, "all_economy"), 330.35, 0.002);
}

TEST(BodyClass, LifetimeEmissions) {
    const auto t = body_table(study(), Metric::lifetime_emissions);
    expect_printed(t.at("narrow", Haul::short_haul, "baseline"), 600240713.63, 0.002);
    expect_printed(t.at("wide", Haul::long_haul, "all_economy"), 2368236048.77, 0.002);
}

TEST(BodyClass, TicketPriceIsPooled) {
    const auto& s = study();
    const auto t = body_table(s, Metric::ticket_price);
    const auto& fare = s.fare(Haul::short_haul);
    EXPECT_NEAR(t.at("narrow", Haul::short_haul, "baseline"), fare.price(CabinClass::economy).value(), 1e-9);
    double rev = 0.0, seats = 0.0;
    for (const auto& a : s.aircraft_of(Body::wide)) {
        const auto& base = s.at(a, Haul::long_haul, "baseline");
        const auto& all = s.at(a, Haul::long_haul, "all_economy");
        rev += base.revenue->total.value();
        seats += all.config.seats[CabinClass::economy];
    }
    EXPECT_NEAR(t.at("wide", Haul::long_haul, "all_economy"), rev / seats, 1e-9);
}

TEST(Delta, AbsoluteAndRelative) {
    const auto t = body_table(study(), Metric::emissions_per_flight);
    const auto d = delta_table(t);
    EXPECT_EQ(d.reference, "baseline");
    const auto& row = d.at("wide", Haul::short_haul, "all_economy");
    const double a = t.at("wide", Haul::short_haul, "baseline");
    const double b = t.at("wide", Haul::short_haul, "all_economy");
    EXPECT_DOUBLE_EQ(row.absolute, b - a);
    EXPECT_DOUBLE_EQ(row.relative, (b - a) / a);
    EXPECT_THROW((void)d.at("medium", Haul::short_haul, "all_economy"), DomainError);
}

TEST(Delta, RevenueNeutralPriceChange) {
    const auto d = delta_table(body_table(study(), Metric::ticket_price));
    EXPECT_NEAR(100 * d.at("narrow", Haul::short_haul, "all_economy").relative, 5.99, 0.1);
    EXPECT_NEAR(100 * d.at("wide", Haul::short_haul, "all_economy").relative, -4.69, 0.1);
    EXPECT_NEAR(100 * d.at("wide", Haul::long_haul, "all_economy").relative, 24.34, 0.1);
    EXPECT_NEAR(d.at("narrow", Haul::short_haul, "all_economy").absolute, 13.24, 0.05);
    EXPECT_NEAR(d.at("wide", Haul::long_haul, "all_economy").absolute, 124.31, 0.05);
}

TEST(Weights, BodyMeansMatchPublished) {
    const auto n = body_weights(study(), Body::narrow, "baseline");
    expect_printed(n.seats[CabinClass::economy], 132.64, 0.0);
    expect_printed(n.seat_weight[CabinClass::business].value(), 1761.20, 0.0005);
    expect_printed(n.total_pax_weight().value(), 11730.75, 0.0005);
    const auto w = body_weights(study(), Body::wide, "all_economy");
    expect_printed(w.total_seats(), 345.04, 0.0);
    expect_printed(w.total_pax_weight().value(), 25878.00, 0.0005);
}

TEST(CompositeFactor, BodyLabelsOppositeToPrintedRows) {
    EXPECT_NEAR(body_composite_factor(study(), Body::narrow, Haul::short_haul, "baseline"), 0.19445, 5e-4);
    EXPECT_NEAR(body_composite_factor(study(), Body::wide, Haul::short_haul, "baseline"), 0.15954, 5e-4);
}

TEST(Decomposition, TermsSumToTotal) {
    for (auto h : kHauls) {
        const auto d = decompose_variable_change(study(), Body::wide, h, "all_economy");
        EXPECT_NEAR(d.seat + d.pax + d.factor, d.total, 1e-9);
    }
    const auto s = decompose_variable_change(study(), Body::wide, Haul::short_haul, "all_economy");
    EXPECT_NEAR(s.seat, -573, 0.005 * 573 + 0.5);
    EXPECT_NEAR(s.total, 408, 0.005 * 408 + 0.5);
}

TEST(Export, FilesAndDeterminism) {
    const auto a = render_exports(study(), ExportFormat::csv);
    const auto b = render_exports(testing_support::shipped_study(), ExportFormat::csv);
    ASSERT_EQ(a.size(), b.size());
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].name, b[i].name);
        EXPECT_EQ(a[i].content, b[i].content);
        names.insert(a[i].name);
    }
    for (const auto* n : {"composites.csv", "configurations.csv", "fits.csv", "weights.csv", "composite_factors.csv",
                          "emissions_per_pax.csv", "ticket_price_delta.csv", "aircraft_results.csv", "fares.csv",
                          "figures/fig2a.csv", "figures/fig4c.csv", "figures/figS3.csv"}) {
        EXPECT_TRUE(names.count(n)) << n;
    }
}

TEST(Export, CsvHeaderAndRounding) {
    for (const auto& f : render_exports(study(), ExportFormat::csv)) {
        if (f.name != "emissions_per_flight.csv") continue;
        const auto t = csv::parse(f.content, f.name);
        EXPECT_EQ(t.header, (std::vector<std::string>{"body", "haul", "scenario", units(Metric::emissions_per_flight).data()}));
        EXPECT_EQ(t.rows.size(), 8u);
        for (const auto& r : t.rows) EXPECT_EQ(r.fields[3].size() - r.fields[3].find('.'), 3u);
        return;
    }
    FAIL() << "no emissions_per_flight.csv";
}

TEST(Export, JsonCarriesValueAndDisplay) {
    for (const auto& f : render_exports(study(), ExportFormat::json)) {
        if (f.name != "fits.json") continue;
        const auto j = nlohmann::json::parse(f.content);
        ASSERT_TRUE(j.is_array());
        ASSERT_EQ(j.size(), 8u);
        for (const auto& [key, v] : j[0].items()) {
            if (v.is_object()) {
                EXPECT_TRUE(v.contains("value"));
                EXPECT_TRUE(v["display"].is_string());
            }
        }
        return;
    }
    FAIL() << "no fits.json";
}

TEST(Export, WithoutFaresSkipsRevenue) {
    auto d = testing_support::shipped();
    d.fares.clear();
    const auto s = run_study(d);
    for (const auto& f : render_exports(s, ExportFormat::csv)) {
        EXPECT_EQ(f.name.find("revenue"), std::string::npos) << f.name;
        EXPECT_EQ(f.name.find("ticket_price"), std::string::npos) << f.name;
        EXPECT_NE(f.name, "fares.csv");
    }
    EXPECT_THROW(body_table(s, Metric::revenue_per_flight), DomainError);
}

TEST(Export, WriteCreatesSubdirectories) {
    testing_support::TempDir tmp;
    write_exports(render_exports(study(), ExportFormat::csv), tmp.path());
    EXPECT_TRUE(std::filesystem::exists(tmp.path() / "figures" / "fig2a.csv"));
    EXPECT_FALSE(testing_support::slurp(tmp.path() / "composites.csv").empty());
}

TEST(Metric, NamesAndUnits) {
    EXPECT_TRUE(needs_fares(Metric::lifetime_revenue));
    EXPECT_FALSE(needs_fares(Metric::lifetime_emissions));
    EXPECT_EQ(parse_export_format("json"), ExportFormat::json);
    EXPECT_FALSE(parse_export_format("xml"));
}
