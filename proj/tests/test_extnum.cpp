#include <pnt/extnum.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using pnt::ExtReal;

namespace {

// Values are stored as logs, so precision is absolute in the log and is set
// by the largest operand log taking part in the expression.
long double ulp_distance(long double a, long double b, long double scale) {
    return std::abs(a - b) / (std::max(scale, 1.0L) * std::numeric_limits<long double>::epsilon());
}

}  // namespace

TEST(ExtReal, RoundTripsOrdinaryDoubles) {
    for (double v : {1e-300, 3.5e-7, 0.5, 1.0, 2.0, 12345.678, 9.9e299}) {
        EXPECT_NEAR(ExtReal::from_real(v).to_real(), v, 1e-14 * v) << v;
    }
}

TEST(ExtReal, ZeroIsAdditiveIdentityAndMinimum) {
    const ExtReal z = ExtReal::zero();
    const ExtReal a = ExtReal::exp_of(-5000);
    EXPECT_EQ(z + a, a);
    EXPECT_TRUE((z * a).is_zero());
    EXPECT_LT(z, ExtReal::exp_of(-1e9L));
    EXPECT_THROW(a / z, std::domain_error);
}

TEST(ExtReal, RepresentsValuesFarOutsideDoubleRange) {
    const ExtReal tiny = ExtReal::exp_of(-1e6L);
    const pnt::Decimal d = tiny.to_decimal();
    const long double expected = -1e6L / std::log(10.0L);
    EXPECT_EQ(d.exponent, static_cast<std::int64_t>(std::floor(expected)));
    EXPECT_NEAR(std::log10(d.mantissa), expected - std::floor(expected), 1e-9);
    EXPECT_EQ(tiny.to_real(), 0.0);
}

TEST(ExtReal, ScientificFormattingKeepsThreeDigits) {
    EXPECT_EQ(pnt::to_scientific(ExtReal::from_real(9.12e-111), 3), "9.12e-111");
    EXPECT_EQ(pnt::to_scientific(ExtReal::from_real(23.17), 3), "2.32e+1");
}

TEST(ExtReal, AdditionAndMultiplicationLawsHoldWithinFourUlp) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<long double> logs(-2000.0L, 2000.0L);
    for (int i = 0; i < 2000; ++i) {
        const ExtReal a = ExtReal::exp_of(logs(rng));
        const ExtReal b = ExtReal::exp_of(logs(rng));
        const ExtReal c = ExtReal::exp_of(logs(rng));
        const long double s = std::max({std::abs(a.log_value()), std::abs(b.log_value()), std::abs(c.log_value())});
        EXPECT_LE(ulp_distance(((a + b) + c).log_value(), (a + (b + c)).log_value(), s), 4.0L);
        EXPECT_LE(ulp_distance(((a * b) * c).log_value(), (a * (b * c)).log_value(), s), 4.0L);
        EXPECT_EQ((a + b).log_value(), (b + a).log_value());
        EXPECT_LE(ulp_distance((a * (b + c)).log_value(), (a * b + a * c).log_value(), s), 4.0L);
        EXPECT_LE(ulp_distance(((a * b) / b).log_value(), a.log_value(), s), 4.0L);
    }
}

TEST(ExtReal, SumMatchesPlainArithmeticInRange) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> v(1e-3, 1e3);
    for (int i = 0; i < 500; ++i) {
        const double x = v(rng), y = v(rng);
        EXPECT_NEAR((ExtReal::from_real(x) + ExtReal::from_real(y)).to_real(), x + y, 1e-13 * (x + y));
    }
}

TEST(ExtReal, OrderingFollowsLogValue) {
    EXPECT_LT(ExtReal::exp_of(-3), ExtReal::exp_of(-2));
    EXPECT_GT(ExtReal::infinity(), ExtReal::exp_of(1e12L));
    EXPECT_EQ(pow(ExtReal::exp_of(2), 0.5L), ExtReal::exp_of(1));
}
