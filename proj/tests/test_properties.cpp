#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace cabinco2;

namespace {

constexpr std::uint64_t kSeed = 20240917;

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST(Properties, LayoutRowOrderDoesNotMatter) {
    std::mt19937_64 rng(kSeed);
    const auto& d = testing_support::shipped();
    const auto base = build_composites(d);
    for (int trial = 0; trial < 5; ++trial) {
        auto shuffled = d;
        std::shuffle(shuffled.layouts.begin(), shuffled.layouts.end(), rng);
        const auto again = build_composites(shuffled);
        ASSERT_EQ(again.size(), base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            for (auto c : kPassengerClasses) {
                EXPECT_LT(rel_gap(again[i].class_floor_area[c].value(), base[i].class_floor_area[c].value()), 1e-12);
                EXPECT_LT(rel_gap(again[i].class_area_per_seat[c].value(), base[i].class_area_per_seat[c].value()), 1e-12);
            }
        }
    }
}

TEST(Properties, UniformAreaScaleKeepsSeatCounts) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double k = scale(rng);
        auto d = testing_support::shipped();
        for (auto& l : d.layouts) {
            l.floor_area = l.floor_area * k;
            if (l.area_per_seat) l.area_per_seat = *l.area_per_seat * k;
        }
        const auto scaled = build_composites(d);
        for (const auto& c : scaled) {
            const auto a = baseline_configuration(c);
            const auto b = baseline_configuration(testing_support::composite(c.aircraft));
            for (auto cls : kPassengerClasses) EXPECT_NEAR(a.seats[cls], b.seats[cls], 1e-9 * std::max(1.0, b.seats[cls]));
        }
    }
}

TEST(Properties, TransfersConserveFloorAndAddSeats) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ScenarioDefinition s;
        s.name = "t" + std::to_string(trial);
        s.transfers.push_back({CabinClass::business, CabinClass::economy, frac(rng)});
        s.transfers.push_back({CabinClass::premium_economy, CabinClass::economy, frac(rng)});
        for (const auto& c : testing_support::shipped_study().composites) {
            const auto base = baseline_configuration(c);
            const auto cfg = custom_configuration(c, s);
            EXPECT_NEAR(cfg.total_floor_area().value(), base.total_floor_area().value(), 1e-9 * base.total_floor_area().value());
            EXPECT_GE(cfg.total_seats(), base.total_seats() - 1e-9);
            EXPECT_LE(cfg.total_seats(), all_economy_configuration(c).total_seats() + 1e-9);
        }
    }
}

TEST(Properties, EmissionsIncreaseWithLoadFactor) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> lf(0.0, 1.0);
    const auto& s = testing_support::shipped_study();
    for (int trial = 0; trial < 20; ++trial) {
        double a = lf(rng), b = lf(rng);
        if (a > b) std::swap(a, b);
        for (const auto& cell : s.cells) {
            const auto& m = s.model(cell.aircraft, cell.haul);
            const auto lo = emissions_per_flight(cell.config, m, s.constants, a);
            const auto hi = emissions_per_flight(cell.config, m, s.constants, b);
            EXPECT_LE(lo.total.value(), hi.total.value() + 1e-9);
            EXPECT_EQ(lo.seating.sum(), hi.seating.sum());
        }
    }
}

TEST(Properties, ConstantShiftMovesOnlyTheIntercept) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> shift(-500.0, 500.0);
    const auto& d = testing_support::shipped();
    for (int trial = 0; trial < 5; ++trial) {
        const double k = shift(rng);
        for (const auto& spec : d.specs) {
            for (auto h : kHauls) {
                auto samples = samples_for(d, spec.aircraft, h);
                const auto before = fit_linear(samples);
                for (auto& smp : samples) smp.emissions = smp.emissions + KgCo2(k);
                const auto after = fit_linear(samples);
                EXPECT_NEAR(after.slope, before.slope, 1e-9 * std::fabs(before.slope));
                EXPECT_NEAR(after.intercept.value(), before.intercept.value() + k, 1e-6);
            }
        }
    }
}

TEST(Properties, FareScalingScalesRevenueButNotRelativeChange) {
    const auto& base = testing_support::shipped_study();
    for (int k : {2, 3, 7}) {
        auto d = testing_support::shipped();
        for (auto& f : d.fares) f.price = Cents(f.price.count() * k);
        const auto s = run_study(d);
        for (std::size_t i = 0; i < s.cells.size(); ++i) {
            const auto& a = base.cells[i];
            const auto& b = s.cells[i];
            EXPECT_NEAR(b.revenue->total.value(), k * a.revenue->total.value(), 1e-9 * b.revenue->total.value());
            if (a.reprice) {
                EXPECT_NEAR(b.reprice->delta_rel, a.reprice->delta_rel, 1e-12);
            }
            EXPECT_EQ(b.emissions.total, a.emissions.total);
        }
    }
}

TEST(Properties, PerPassengerAllocationsAgreeWithoutPremiumCabins) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> lf(0.0, 1.0);
    auto d = testing_support::shipped();
    for (int trial = 0; trial < 5; ++trial) {
        StudyOptions o;
        o.load_factor = lf(rng);
        const auto s = run_study(d, o);
        o.allocation = AllocationStrategy::service_to_class_seats;
        const auto t = run_study(d, o);
        for (std::size_t i = 0; i < s.cells.size(); ++i) {
            if (s.cells[i].scenario != "all_economy") continue;
            EXPECT_EQ(*s.cells[i].per_pax.per_class[CabinClass::economy], *t.cells[i].per_pax.per_class[CabinClass::economy]);
        }
    }
}
