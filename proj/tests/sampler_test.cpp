#include <gtest/gtest.h>

#include <random>
#include <set>

#include <dispersion/sampler.hpp>

using namespace dispersion;

TEST(Sampler, DeterministicAndInRange) {
    const auto a = sample_uniform(50, 3, 99);
    const auto b = sample_uniform(50, 3, 99);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_uniform(50, 3, 100));
    for (double c : a.data()) {
        EXPECT_GE(c, 0.0);
        EXPECT_LT(c, 1.0);
    }
}

TEST(Sampler, GeneratorContract) {
    // the 10000th output of a default-seeded mt19937_64 is fixed by the C++ standard
    const auto P = sample_uniform(10000, 1, 5489);
    EXPECT_EQ(P.coord(9999, 0), static_cast<double>(9981545732273789042ULL >> 11) * 0x1.0p-53);
    std::mt19937_64 e(7);
    const auto Q = sample_uniform(2, 2, 7);
    for (double c : Q.data()) EXPECT_EQ(c, static_cast<double>(e() >> 11) * 0x1.0p-53);
}

TEST(Sampler, TrialSeedsDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(trial_seed(42, t));
    EXPECT_EQ(seen.size(), 1000u);
    // first SplitMix64 output for state 0 after one increment
    EXPECT_EQ(trial_seed(0, 0), 0xe220a8397b1dcdafULL);
}

TEST(Sampler, MeanAndVariance) {
    const auto P = sample_uniform(200000, 1, 3);
    double s = 0, s2 = 0;
    for (double c : P.data()) {
        s += c;
        s2 += c * c;
    }
    const double n = 200000, mean = s / n, var = s2 / n - mean * mean;
    // 5 standard errors
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(var, 1.0 / 12, 5 * std::sqrt(1.0 / 180 / n));
}

TEST(Certify, OddEighths) {
    const PointSet P(1, {0.125, 0.375, 0.625, 0.875});
    const auto c = certify(P, 0.5);
    EXPECT_EQ(c.m, 4u);
    EXPECT_EQ(c.cover_max, 0.0);
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.certified_bound, 0.5);
    EXPECT_LE(dispersion_periodic(P).value, c.certified_bound);
}

TEST(Certify, RejectsBadDelta) {
    const PointSet P(1, std::vector<double>{0.5});
    EXPECT_THROW(certify(P, 0.0), std::invalid_argument);
    EXPECT_THROW(certify(P, 1.0), std::invalid_argument);
}

TEST(FindGoodSet, SucceedsAndCrossChecks) {
    const auto c = find_good_set(20, 1, 0.3, 200, 42);
    ASSERT_TRUE(c.certified);
    EXPECT_EQ(c.m, 7u);
    EXPECT_NEAR(c.cardinality_log, std::log(64.0), 1e-14);
    EXPECT_LE(c.cover_max, c.target);
    EXPECT_EQ(c.point_set, sample_uniform(20, 1, c.point_seed));
    EXPECT_EQ(c.point_seed, trial_seed(42, c.trials_used - 1));
    const double disp = dispersion_periodic(c.point_set).value;
    EXPECT_LE(disp, c.certified_bound);
    EXPECT_LE(disp, std::log(64.0) / 20 + 0.3);
}

TEST(FindGoodSet, IndependentOfThreads) {
    const auto a = find_good_set(6, 1, 0.5, 50, 9, Family::periodic, {.threads = 1});
    const auto b = find_good_set(6, 1, 0.5, 50, 9, Family::periodic, {.threads = 3});
    EXPECT_EQ(a.certified, b.certified);
    EXPECT_EQ(a.trials_used, b.trials_used);
    EXPECT_EQ(a.point_seed, b.point_seed);
    EXPECT_EQ(a.cover_max, b.cover_max);
}

TEST(FindGoodSet, ExhaustionReturnsBestAttempt) {
    // m = 3 and target log 16 / 9 < 1/3, so only cover_max 0 certifies
    const auto c = find_good_set(9, 1, 0.99, 2, 11);
    EXPECT_FALSE(c.certified);
    EXPECT_EQ(c.trials_used, 2u);
    EXPECT_GT(c.cover_max, c.target);
    const auto cover = build_cover(1, 0.99);
    const double v0 = cover_dispersion(sample_uniform(9, 1, trial_seed(11, 0)), cover);
    const double v1 = cover_dispersion(sample_uniform(9, 1, trial_seed(11, 1)), cover);
    EXPECT_EQ(c.point_seed, trial_seed(11, v1 < v0 ? 1 : 0));
    EXPECT_EQ(c.cover_max, std::min(v0, v1));
}

namespace {

/// P(X <= k), X ~ Binomial(n, p).
double binomial_cdf(int k, int n, double p) {
    long double total = 0.0L;
    for (int i = 0; i <= k; ++i)
        total += std::exp(std::lgamma(n + 1.0L) - std::lgamma(i + 1.0L) - std::lgamma(n - i + 1.0L) +
                          i * std::log(static_cast<long double>(p)) + (n - i) * std::log1p(-static_cast<long double>(p)));
    return static_cast<double>(total);
}

}  // namespace

TEST(Certify, EmptySetIsNeverCertified) {
    const auto c = certify(PointSet(2), 0.9);
    EXPECT_EQ(c.cover_max, 1.0);
    EXPECT_FALSE(c.certified);
}

TEST(Certify, SampleSizeReachesConfidence) {
    // n = ceil(log(|Gamma| / alpha) / delta) with |Gamma| = 25, delta = 0.5, alpha = 0.5 gives n = 8
    const double alpha = 0.5;
    const auto n = static_cast<std::size_t>(std::ceil((std::log(25.0) - std::log(alpha)) / 0.5));
    ASSERT_EQ(n, 8u);
    int ok = 0;
    for (std::uint64_t s = 1000; s < 1500; ++s) ok += certify(sample_uniform(n, 1, s), 0.5).certified;
    EXPECT_GE(binomial_cdf(ok, 500, 1.0 - alpha), 0.01) << ok;
}

TEST(FindGoodSet, SingleTrialFrequencyMatchesUnionBound) {
    const double c_n = std::log(64.0) / 20.0;
    const double p_star = 1.0 - 64.0 * std::pow(1.0 - c_n, 20.0);
    ASSERT_GT(p_star, 0.39);
    int ok = 0;
    for (std::uint64_t s = 1; s <= 500; ++s) ok += find_good_set(20, 1, 0.3, 1, s).certified;
    EXPECT_GE(binomial_cdf(ok, 500, p_star), 0.01) << ok;
}

TEST(FindGoodSet, FortyPointsFillEveryCell) {
    const auto c = find_good_set(40, 1, 0.5, 1000, 5);
    ASSERT_TRUE(c.certified);
    EXPECT_NEAR(c.target, std::log(25.0) / 40.0, 1e-15);
    EXPECT_EQ(c.cover_max, 0.0);
    EXPECT_LE(dispersion_periodic(c.point_set).value, c.certified_bound);
}

TEST(FindGoodSet, Deterministic) {
    const auto a = find_good_set(12, 2, 0.8, 20, 77);
    const auto b = find_good_set(12, 2, 0.8, 20, 77);
    EXPECT_EQ(a.point_set, b.point_set);
    EXPECT_EQ(a.cover_max, b.cover_max);
    EXPECT_EQ(a.trials_used, b.trials_used);
}
