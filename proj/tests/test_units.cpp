#include <gtest/gtest.h>

#include "cabinco2/format.hpp"
#include "cabinco2/types.hpp"
#include "cabinco2/units.hpp"

using namespace cabinco2;
using namespace cabinco2::literals;

TEST(Quantity, ArithmeticKeepsUnits) {
    const auto a = 10.0_kg + 5.0_kg;
    EXPECT_DOUBLE_EQ(a.value(), 15.0);
    EXPECT_DOUBLE_EQ((a * 2.0).value(), 30.0);
    EXPECT_DOUBLE_EQ((a / 3.0).value(), 5.0);
    EXPECT_DOUBLE_EQ(a / 5.0_kg, 3.0);
    EXPECT_LT(1.0_sqft, 2.0_sqft);
    EXPECT_EQ(-(3.0_usd), Usd(-3.0));
}

TEST(Cents, ParsesPlainDecimals) {
    Cents c;
    ASSERT_TRUE(Cents::parse("221.02", c));
    EXPECT_EQ(c.count(), 22102);
    ASSERT_TRUE(Cents::parse("12.3", c));
    EXPECT_EQ(c.count(), 1230);
    ASSERT_TRUE(Cents::parse("7", c));
    EXPECT_EQ(c.count(), 700);
    ASSERT_TRUE(Cents::parse("-0.5", c));
    EXPECT_EQ(c.count(), -50);
}

TEST(Cents, RoundsHalfAwayBeyondTwoDigits) {
    Cents c;
    ASSERT_TRUE(Cents::parse("1.005", c));
    EXPECT_EQ(c.count(), 101);
    ASSERT_TRUE(Cents::parse("1.0049", c));
    EXPECT_EQ(c.count(), 100);
    ASSERT_TRUE(Cents::parse("-0.005", c));
    EXPECT_EQ(c.count(), -1);
}

TEST(Cents, RejectsGarbage) {
    Cents c;
    for (const char* bad : {"", "abc", "1.2.3", "1e5", "$5", ".", "-"}) EXPECT_FALSE(Cents::parse(bad, c)) << bad;
}

TEST(Cents, ToStringRoundTrips) {
    for (const char* s : {"0.00", "1.05", "2757.49", "-3.10"}) {
        Cents c;
        ASSERT_TRUE(Cents::parse(s, c));
        EXPECT_EQ(c.to_string(), s);
    }
    EXPECT_DOUBLE_EQ(Cents(22102).usd().value(), 221.02);
}

TEST(Format, FixedRoundsHalfAwayFromZero) {
    EXPECT_EQ(format_fixed(2.675, 2), "2.68");
    EXPECT_EQ(format_fixed(-2.675, 2), "-2.68");
    EXPECT_EQ(format_fixed(0.125, 2), "0.13");
    EXPECT_EQ(format_fixed(9.995, 2), "10.00");
    EXPECT_EQ(format_fixed(15942.2345, 2), "15942.23");
    EXPECT_EQ(format_fixed(3.0, 0), "3");
    EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
    EXPECT_EQ(format_fixed(1e-7, 3), "0.000");
}

TEST(Format, ExactIsShortestRoundTrip) {
    EXPECT_EQ(format_exact(0.1), "0.1");
    EXPECT_EQ(format_exact(131.34), "131.34");
    EXPECT_EQ(std::stod(format_exact(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Types, ParseAndPrintTags) {
    EXPECT_EQ(parse_cabin_class("premium_economy"), CabinClass::premium_economy);
    EXPECT_EQ(parse_cabin_class("service_zone"), CabinClass::service_zone);
    EXPECT_FALSE(parse_cabin_class("first"));
    EXPECT_EQ(parse_haul("short"), Haul::short_haul);
    EXPECT_EQ(parse_haul("long"), Haul::long_haul);
    EXPECT_FALSE(parse_haul("medium"));
    EXPECT_EQ(parse_body("wide"), Body::wide);
    EXPECT_EQ(to_string(Haul::long_haul), "long");
    EXPECT_EQ(to_string(CabinClass::business), "business");
}

TEST(Types, PerClassRejectsServiceZone) {
    PerClass<double> p{};
    p[CabinClass::economy] = 1.0;
    p[CabinClass::business] = 2.5;
    EXPECT_DOUBLE_EQ(p.sum(), 3.5);
    EXPECT_THROW(p[CabinClass::service_zone], std::out_of_range);
}

TEST(Types, ParseErrorCarriesLocation) {
    const ParseError e("layouts.csv", 12, 4, "bad value");
    EXPECT_EQ(e.line(), 12u);
    EXPECT_EQ(e.column(), 4u);
    EXPECT_STREQ(e.what(), "layouts.csv:12:4: bad value");
    const UnitError u("x.csv", 3, 0, "must be > 0");
    EXPECT_STREQ(u.what(), "x.csv:3: must be > 0");
}
