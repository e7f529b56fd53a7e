#include "leleec/error.hpp"
#include "leleec/rational.hpp"

#include <gtest/gtest.h>

using leleec::Rational;

TEST(Rational, IntegerComparisons) {
    const Rational zero(0), half(1, 2);
    EXPECT_TRUE(zero == 0);
    EXPECT_TRUE(0 == zero);
    EXPECT_TRUE(zero == std::int64_t{0});
    EXPECT_FALSE(half == 0);
    EXPECT_TRUE(half != 1);
    EXPECT_TRUE(half < 1);
    EXPECT_TRUE(1 > half);
}

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(leleec::parse_rational("0.1"), Rational(1, 10));
    EXPECT_EQ(leleec::parse_rational("1/10"), Rational(1, 10));
    EXPECT_EQ(leleec::parse_rational("-2"), Rational(-2));
    EXPECT_EQ(leleec::parse_rational("0.125"), Rational(1, 8));
    EXPECT_THROW(leleec::parse_rational("abc"), leleec::ParseError);
    EXPECT_THROW(leleec::parse_rational("1/0"), leleec::ParseError);
    EXPECT_EQ(leleec::format_rational(Rational(91, 10)), "9.1");
    EXPECT_EQ(leleec::format_rational(Rational(2)), "2");
    EXPECT_EQ(leleec::format_rational(Rational(1, 3)), "1/3");
    EXPECT_EQ(leleec::format_rational(Rational(-1, 4)), "-0.25");
}
