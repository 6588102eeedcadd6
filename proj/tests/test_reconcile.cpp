#include <gtest/gtest.h>

#include "json.hpp"
#include "support.hpp"

using namespace cabinco2;

namespace {

const std::string kReference = testing_support::kData + "/reference/paper_tables.csv";
const std::string kErrata = testing_support::kData + "/reference/errata.csv";

const ReconciliationReport& shipped_report() {
    static const auto r = reconcile(testing_support::shipped_study(), testing_support::shipped(), load_reference(kReference),
                                    load_errata(kErrata));
    return r;
}

ReferenceCell cell(double value, int decimals, std::string table = "T2") {
    ReferenceCell c;
    c.table = std::move(table);
    c.value = value;
    c.decimals = decimals;
    return c;
}

}  // namespace

TEST(Reference, LoadsShippedTables) {
    const auto ref = load_reference(kReference);
    EXPECT_EQ(ref.size(), 344u);
    const auto ledger = load_errata(kErrata);
    for (const auto* id : {"E1", "E2", "E3", "E4", "E5", "E6"}) EXPECT_NE(ledger.find(id), nullptr) << id;
    EXPECT_EQ(ledger.find("E1")->status, ReconcileStatus::known_erratum);
    EXPECT_EQ(ledger.find("E5")->status, ReconcileStatus::non_reproducible);
    for (const auto& c : ref) {
        if (!c.erratum.empty()) {
            EXPECT_NE(ledger.find(c.erratum), nullptr) << c.table << " " << c.row << " " << c.column;
        }
    }
}

TEST(Tolerance, Defaults) {
    const ReconcileOptions o;
    EXPECT_DOUBLE_EQ(default_tolerance(cell(1, 2, "T2"), o).relative, 0.005);
    EXPECT_DOUBLE_EQ(default_tolerance(cell(1, 2, "S4bi"), o).relative, 0.002);
    EXPECT_DOUBLE_EQ(default_tolerance(cell(1, 2, "S4biii"), o).absolute, 2.0);
    auto pct = cell(1, 2, "S5ai");
    pct.percent = true;
    const auto t = default_tolerance(pct, o);
    EXPECT_EQ(t.relative, 0.0);
    EXPECT_DOUBLE_EQ(t.absolute, 0.1);
    ReconcileOptions loose;
    loose.tolerance = 0.05;
    EXPECT_DOUBLE_EQ(default_tolerance(cell(1, 2, "S4bi"), loose).relative, 0.05);
}

TEST(Tolerance, HalfUnitOfLastPrintedDigit) {
    const Tolerance none{0.0, 0.0};
    EXPECT_TRUE(within(0.1851, cell(0.19, 2), none));
    EXPECT_FALSE(within(0.184, cell(0.19, 2), none));
    EXPECT_TRUE(within(13245.6, cell(13246, 0), none));
    EXPECT_TRUE(within(100.4, cell(100, 2), Tolerance{0.005, 0.0}));
    EXPECT_FALSE(within(100.6, cell(100, 2), Tolerance{0.005, 0.0}));
    EXPECT_TRUE(within(101.5, cell(100, 2), Tolerance{0.005, 2.0}));
}

TEST(Reconcile, ShippedDataHasNoMismatches) {
    const auto& r = shipped_report();
    EXPECT_EQ(r.entries.size(), 344u);
    EXPECT_TRUE(r.ok()) << render_reconciliation_text(r);
    EXPECT_EQ(r.count(ReconcileStatus::mismatch), 0u);
    EXPECT_GT(r.count(ReconcileStatus::match), 300u);
    EXPECT_GT(r.count(ReconcileStatus::known_erratum), 0u);
    EXPECT_GT(r.count(ReconcileStatus::non_reproducible), 0u);
}

TEST(Reconcile, EveryUnflaggedCellIsComputed) {
    for (const auto& e : shipped_report().entries) {
        if (e.erratum.empty()) {
            EXPECT_TRUE(e.computed_value) << e.table_id << " " << e.row << " " << e.column << " " << e.note;
        }
    }
}

TEST(Reconcile, FlaggedCellsFollowTheLedger) {
    const auto ledger = load_errata(kErrata);
    for (const auto& e : shipped_report().entries) {
        if (e.erratum.empty()) {
            EXPECT_TRUE(e.status == ReconcileStatus::match || e.status == ReconcileStatus::mismatch);
        } else {
            EXPECT_EQ(e.status, ledger.find(e.erratum)->status);
        }
    }
}

TEST(Reconcile, TransposedFactorRowsComputeToTheOtherBody) {
    for (const auto& e : shipped_report().entries) {
        if (e.table_id != "T4" || e.column != "baseline.short") continue;
        ASSERT_TRUE(e.computed_value);
        EXPECT_NEAR(*e.computed_value, e.row == "narrow" ? 0.1945 : 0.1595, 5e-4) << e.row;
    }
}

TEST(Reconcile, UnknownErratumIsMismatch) {
    auto ref = load_reference(kReference);
    ref.resize(1);
    ref[0].erratum = "E99";
    const auto r = reconcile(testing_support::shipped_study(), testing_support::shipped(), ref, load_errata(kErrata));
    EXPECT_EQ(r.entries[0].status, ReconcileStatus::mismatch);
    EXPECT_FALSE(r.ok());
}

TEST(Reconcile, UnknownCellIsMismatch) {
    std::vector<ReferenceCell> ref = {cell(1.0, 2, "T9")};
    ref[0].row = "A320-200";
    ref[0].column = "nothing";
    const auto r = reconcile(testing_support::shipped_study(), testing_support::shipped(), ref, load_errata(kErrata));
    EXPECT_EQ(r.entries[0].status, ReconcileStatus::mismatch);
    EXPECT_FALSE(r.entries[0].computed_value);
}

TEST(Reconcile, PerturbedConstantsProduceMismatches) {
    auto d = testing_support::shipped();
    d.constants.seat_weights[CabinClass::business] = Kilograms(70.0);
    const auto r = reconcile(run_study(d), d, load_reference(kReference), load_errata(kErrata));
    EXPECT_FALSE(r.ok());
    EXPECT_GT(r.count(ReconcileStatus::mismatch), 10u);
}

TEST(Reconcile, WideToleranceOverride) {
    auto d = testing_support::shipped();
    d.constants.seat_weights[CabinClass::business] = Kilograms(139.0);
    const auto study = run_study(d);
    const auto ref = load_reference(kReference);
    const auto ledger = load_errata(kErrata);
    ReconcileOptions loose;
    loose.tolerance = 0.5;
    loose.pp_tolerance = 100.0;
    EXPECT_TRUE(reconcile(study, d, ref, ledger, loose).ok());
}

TEST(Render, TextAndJson) {
    const auto& r = shipped_report();
    const auto text = render_reconciliation_text(r);
    EXPECT_NE(text.find("cells: 344"), std::string::npos);
    EXPECT_NE(text.find("result: PASS"), std::string::npos);
    EXPECT_LT(text.size(), render_reconciliation_text(r, true).size());
    const auto j = nlohmann::json::parse(render_reconciliation_json(r));
    EXPECT_EQ(j["summary"]["cells"], 344);
    EXPECT_EQ(j["summary"]["ok"], true);
    ASSERT_EQ(j["entries"].size(), 344u);
    for (const auto* key : {"table_id", "row", "column", "paper_value", "computed_value", "abs_error", "rel_error", "tolerance", "status"}) {
        EXPECT_TRUE(j["entries"][0].contains(key)) << key;
    }
}
