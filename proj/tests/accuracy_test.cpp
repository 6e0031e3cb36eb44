// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fdda/accuracy.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace fdda {
namespace {

TEST(ThresholdPercent, DefaultsToSeventyFive) {
  EXPECT_EQ(ThresholdPercent{}.micro(), 75'000'000);
  EXPECT_EQ(ThresholdPercent{}.to_string(), "75");
}

TEST(ThresholdPercent, ParsesExactDecimals) {
  EXPECT_EQ(ThresholdPercent::parse("33.33").micro(), 33'330'000);
  EXPECT_EQ(ThresholdPercent::parse("66.666667").micro(), 66'666'667);
  EXPECT_EQ(ThresholdPercent::parse("0").micro(), 0);
  EXPECT_EQ(ThresholdPercent::parse("100").micro(), 100'000'000);
  EXPECT_EQ(ThresholdPercent::parse("100.0").micro(), 100'000'000);
  EXPECT_EQ(ThresholdPercent::parse("66.67").to_string(), "66.67");
  EXPECT_EQ(ThresholdPercent::parse("050.500").to_string(), "50.5");
}

TEST(ThresholdPercent, RejectsOutOfRangeAndJunk) {
  for (const char *bad : {"", "-1", "100.01", "101", "1e2", "abc", "75.",
                          ".5", "1.2345678", "75%", "1000"})
    EXPECT_THROW(ThresholdPercent::parse(bad), ConfigError) << bad;
  EXPECT_THROW(ThresholdPercent::from_percent(-0.5), ConfigError);
  EXPECT_THROW(ThresholdPercent::from_percent(NAN), ConfigError);
}

TEST(ThresholdPercent, FromPercentRounds) {
  EXPECT_EQ(ThresholdPercent::from_percent(75.0).micro(), 75'000'000);
  EXPECT_EQ(ThresholdPercent::from_percent(33.33).micro(), 33'330'000);
}

TEST(PercentAccuracy, ComparesExactlyAtTheBoundary) {
  const PercentAccuracy half(1, 2);
  EXPECT_TRUE(half.meets(ThresholdPercent::parse("50")));
  EXPECT_FALSE(half.meets(ThresholdPercent::parse("50.000001")));

  const PercentAccuracy third(1, 3);
  EXPECT_TRUE(third.meets(ThresholdPercent::parse("33.333333")));
  EXPECT_FALSE(third.meets(ThresholdPercent::parse("33.333334")));

  const PercentAccuracy two_thirds(2, 3);
  EXPECT_TRUE(two_thirds.meets(ThresholdPercent::parse("66.66")));
  EXPECT_FALSE(two_thirds.meets(ThresholdPercent::parse("66.67")));
}

TEST(PercentAccuracy, RejectsImpossibleRatios) {
  EXPECT_THROW(PercentAccuracy(1, 0), ProtocolViolation);
  EXPECT_THROW(PercentAccuracy(3, 2), ProtocolViolation);
}

TEST(PercentFormatting, MatchesReferencePrintout) {
  EXPECT_EQ(format_percent_precise({2, 2}), "100.0");
  EXPECT_EQ(format_percent_precise({1, 3}), "33.3333333333");
  EXPECT_EQ(format_percent_precise({2, 3}), "66.6666666667");
  EXPECT_EQ(format_percent_precise({1, 2}), "50.0");
  EXPECT_EQ(format_percent_precise({0, 2}), "0.0");
  EXPECT_EQ(format_percent_table({1, 3}), "33.33");
  EXPECT_EQ(format_percent_table({2, 3}), "66.67");
  EXPECT_EQ(format_percent_table({2, 2}), "100.00");
}

} // namespace
} // namespace fdda
