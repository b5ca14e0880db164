#include <pnt/envelope.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace pnt;

namespace {

EnvelopeTerm cubic_decay() {
    EnvelopeTerm t;
    t.label = "u^3 e^-u";
    t.kind = ArgKind::LogX;
    t.a = 3.0;
    t.b = 1.0;
    return t;
}

}  // namespace

TEST(Certifier, AcceptsAFallingTermAndRejectsARisingOne) {
    EXPECT_TRUE(certify_term(cubic_decay(), 50.0).certified);
    EXPECT_TRUE(certify_term(cubic_decay(), 50.0).closed_form);
    const auto early = certify_term(cubic_decay(), 2.0);
    EXPECT_FALSE(early.certified);
    EXPECT_TRUE(early.scan_used);
}

TEST(Certifier, SqrtArgumentTurningPoint) {
    EnvelopeTerm t = cubic_decay();
    t.kind = ArgKind::SqrtLog;
    t.a = 6.0;
    t.b = 2.0;  // u^6 e^{-2u} peaks at u = 3, i.e. L = 9
    EXPECT_TRUE(certify_term(t, 9.5).certified);
    EXPECT_FALSE(certify_term(t, 8.0).certified);
}

TEST(Certifier, RefusesAShiftAtOrAboveTheStart) {
    EnvelopeTerm t = cubic_decay();
    t.shifts = {{60.0, 1.0}};
    EXPECT_FALSE(certify_term(t, 50.0).certified);
    EXPECT_THROW((void)t.log_value(50.0), std::domain_error);
}

TEST(Certifier, VerdictAgreesWithADenseSampleOfTheFunction) {
    for (double L0 : {1.0, 2.0, 2.9, 3.1, 5.0, 40.0}) {
        const EnvelopeTerm t = cubic_decay();
        bool nonincreasing = true;
        for (int i = 0; i < 20000 && nonincreasing; ++i) {
            const double a = L0 + 0.01 * i;
            nonincreasing = t.log_value(a + 0.01) <= t.log_value(a) + 1e-15;
        }
        if (certify_term(t, L0).certified) {
            EXPECT_TRUE(nonincreasing) << L0;
        }
    }
}

TEST(EnvelopeShape, TurningPointAndSupremum) {
    const Envelope e{ArgKind::SqrtLog, 9.39, 1.515, 0.8274};
    EXPECT_NEAR(e.turning_point(), std::pow(2 * 1.515 / 0.8274, 2), 1e-12);
    const Sup s = envelope_sup(e, std::log(2.0));
    EXPECT_NEAR(s.log_x, 13.41, 0.005);
    // Independent grid maximum.
    double best = -1e300;
    for (double L = 0.7; L < 200; L += 1e-4) best = std::max(best, static_cast<double>(e.log_at(L)));
    EXPECT_NEAR(static_cast<double>(s.value.log_value()), best, 1e-6);
    // Start beyond the turning point: the sup is the start value.
    EXPECT_EQ(envelope_sup(e, 100.0).log_x, 100.0);
}

TEST(EnvelopeShape, VkTurningPointSolvesTheStationarityEquation) {
    const Envelope e{ArgKind::VkR, 0.026, 1.801, 0.1853};
    const double L = e.turning_point();
    const double h = 1e-6 * L;
    EXPECT_NEAR(static_cast<double>(e.log_at(L + h) - e.log_at(L - h)) / (2 * h), 0.0, 1e-8);
}

TEST(EnvelopeShape, Dominance) {
    const Envelope inner{ArgKind::SqrtLog, 9.39707, 1.5146, 0.82747};
    const Envelope outer{ArgKind::SqrtLog, 9.39, 1.515, 0.8274};
    EXPECT_TRUE(envelope_dominates(outer, inner, 2488.0));
    EXPECT_FALSE(envelope_dominates(inner, outer, 2488.0));
    const Envelope decays_faster{ArgKind::SqrtLog, 100.0, 1.515, 0.9};
    EXPECT_FALSE(envelope_dominates(decays_faster, outer, 2488.0));
}

TEST(Rounding, DirectedToTheRequestedPlace) {
    EXPECT_DOUBLE_EQ(round_up(9.39707, 2), 9.40);
    EXPECT_DOUBLE_EQ(round_up(1.51, 2), 1.51);
    EXPECT_DOUBLE_EQ(round_down(0.827479, 4), 0.8274);
    EXPECT_DOUBLE_EQ(round_down(0.8274, 4), 0.8274);
}
