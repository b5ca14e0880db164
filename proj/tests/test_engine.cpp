#include <pnt/engine.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pnt;

namespace {

const DensityTable& density() {
    static const DensityTable t = DensityTable::load(default_density_table_path());
    return t;
}

BoundConstants row_bound(const published::Row& r) {
    return compute_bound(density(), r.regime, r.log_x0, r.sigma, r.K, r.X);
}

}  // namespace

TEST(Engine, CPrimeMinimisesOverK) {
    for (int K : {1, 3, 4, 5}) {
        const int k = cprime_argmin(0.99, K);
        for (int j = 0; j < K; ++j) EXPECT_LE(ck(0.99, K, k), ck(0.99, K, j) + 1e-15);
    }
    EXPECT_THROW(medium_terms(density(), 3000, 0.99, 0), std::domain_error);
}

TEST(Engine, MediumPreconditionIsEnforced) {
    EXPECT_FALSE(check_rvm_precondition(500, 10));
    EXPECT_THROW(medium_bound(density(), 500, 0.99, 4), std::domain_error);
    EXPECT_NO_THROW(medium_bound(density(), 2488, 0.985692, 4));
}

TEST(Engine, CanonicalTermsMatchTheDirectFormula) {
    const double sigma = 0.99;
    const int K = 4;
    const auto raw = medium_raw_terms(density(), sigma, K);
    for (double L : {2488.0, 3000.0, 7777.0, 1e4, 5e4}) {
        const double direct = static_cast<double>(medium_terms(density(), L, sigma, K).total().log_value());
        EXPECT_NEAR(static_cast<double>(sum_at(raw, L).log_value()), direct, 1e-9) << L;
    }
    const Bracket br = bracket_nu2(1e6);
    const auto braw = bracket_raw_terms(density(), 0.998974, br);
    for (double L : {1e6, 3e6, 1e8}) {
        const double direct =
            static_cast<double>(bracket_terms(density(), L, 0.998974, br).total().log_value());
        EXPECT_NEAR(static_cast<double>(sum_at(braw, L).log_value()), direct, 1e-9) << L;
    }
}

TEST(Engine, EveryTableRowIsCertifiedMonotone) {
    for (const auto& r : published::table1()) {
        const auto b = row_bound(r);
        EXPECT_TRUE(b.monotone_certified) << r.label;
        for (const auto& t : b.certificate.terms) EXPECT_TRUE(t.certified) << r.label << " " << t.label;
    }
}

TEST(Engine, EnvelopeDominatesTheRecomputedSumAtRandomPoints) {
    std::mt19937_64 rng(424242);
    for (const auto& r : published::table1()) {
        const auto b = row_bound(r);
        std::uniform_real_distribution<double> lg(std::log(b.log_x0), std::log(b.log_x0) + std::log(1e3));
        for (int i = 0; i < 1000; ++i) {
            const double L = std::exp(lg(rng));
            const ExtReal sum = recompute_terms(density(), b, L);
            ASSERT_LE(sum, b.envelope().at(L)) << r.label << " at log x = " << L;
            ASSERT_LE(sum.log_value(), b.unrounded_envelope().log_at(L) + 1e-9L) << r.label << " at log x = " << L;
        }
    }
}

TEST(Engine, PrintedFirstRowDominatesTheRecomputedEnvelope) {
    const auto& first = published::table1().front();
    const auto b = row_bound(first);
    EXPECT_TRUE(envelope_dominates({ArgKind::SqrtLog, first.A, first.B, first.C}, b.unrounded_envelope(), b.log_x0));
}

TEST(Engine, ComputationIsDeterministic) {
    const auto& r = published::table1()[4];
    const auto a = row_bound(r);
    const auto b = row_bound(r);
    EXPECT_EQ(a.A_unrounded, b.A_unrounded);
    EXPECT_EQ(a.C_unrounded, b.C_unrounded);
    EXPECT_EQ(a.eps0.log_value(), b.eps0.log_value());
    const auto o1 = optimize(density(), Regime::Medium, 6000);
    const auto o2 = optimize(density(), Regime::Medium, 6000);
    EXPECT_EQ(o1.best.sigma, o2.best.sigma);
    EXPECT_EQ(o1.best.K, o2.best.K);
    EXPECT_EQ(o1.evaluated, o2.evaluated);
}

TEST(Engine, OptimiserRecoversThePrintedParameters) {
    const auto o = optimize(density(), Regime::Medium, 6000);
    EXPECT_NEAR(o.best.sigma, 0.99, 1e-6);
    EXPECT_EQ(o.best.K, 4);
    const auto big = optimize(density(), Regime::Large, 1e6);
    EXPECT_NEAR(big.best.sigma, 0.998974, 2e-6);
}

TEST(Engine, OptimisedEps0DecreasesAlongTheTable) {
    long double prev = std::numeric_limits<long double>::infinity();
    for (const auto& r : published::table1()) {
        if (r.X < 3000) continue;
        const auto o = optimize(density(), r.regime, r.log_x0, r.X);
        EXPECT_LT(o.best.eps0.log_value(), prev) << r.label;
        prev = o.best.eps0.log_value();
    }
}

TEST(Engine, OptimisedRowIsNoWorseThanThePrintedParameters) {
    for (const char* label : {"3000", "8000", "1e5"}) {
        const auto* r = published::find_row(label);
        const auto o = optimize(density(), r->regime, r->log_x0, r->X);
        EXPECT_LE(o.best.eps0.log_value(), row_bound(*r).eps0.log_value() + 1e-9L) << label;
    }
}

TEST(Engine, EpsilonIsTheEnvelopeSupremum) {
    const auto b = row_bound(published::table1().front());
    EXPECT_EQ(epsilon0(b), b.eps0);
    EXPECT_NEAR(static_cast<double>(b.eps0.log10()), std::log10(23.14), 2e-3);
}

TEST(Engine, RegimeComparisonCrossesTwice) {
    const auto c = regime_compare();
    ASSERT_EQ(c.crossings.size(), 2u);
    EXPECT_GT(c.crossings[0], 40);
    EXPECT_LT(c.crossings[0], 80);
    EXPECT_GT(c.crossings[1], 2e10);
    EXPECT_LT(c.crossings[1], 3.4e10);
    EXPECT_LT(c.log_ratio_at_1e4, 0);
}

TEST(Engine, FirstRowStitchingHasNoFailingSegment) {
    const PrimeTable primes(100);
    const auto b = row_bound(published::table1().front());
    const auto rep = piecewise_coverage(density(), primes, b);
    EXPECT_TRUE(rep.pass);
    int assumed = 0;
    for (const auto& s : rep.segments) {
        EXPECT_NE(s.status, SegmentStatus::Fail) << s.range;
        assumed += s.status == SegmentStatus::Assumed;
    }
    EXPECT_EQ(assumed, 1);
}
