#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "orbitcf/errors.hpp"
#include "orbitcf/stats.hpp"

using namespace orbitcf;

namespace {
const std::vector<double> kSample{3, 1, 4, 1, 5, 9, 2, 6};
}

// Reference values from numpy.percentile with linear interpolation.
TEST(Percentile, LinearInterpolation) {
    EXPECT_DOUBLE_EQ(percentile(kSample, 0.05), 1.0);
    EXPECT_DOUBLE_EQ(percentile(kSample, 0.5), 3.5);
    EXPECT_NEAR(percentile(kSample, 0.9), 6.9, 1e-12);
    EXPECT_DOUBLE_EQ(percentile(kSample, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(percentile(kSample, 1.0), 9.0);
    EXPECT_DOUBLE_EQ(median({2.0}), 2.0);
    EXPECT_DOUBLE_EQ(percentile({1.0, 2.0, 3.0, 4.0, 5.0}, 0.05), 1.2);
}

TEST(Percentile, RejectsBadInput) {
    EXPECT_THROW(percentile({}, 0.5), InputError);
    EXPECT_THROW(percentile(kSample, 1.5), InputError);
    EXPECT_THROW(mean({}), InputError);
}

TEST(Mean, OrderIndependent) {
    std::vector<double> v;
    std::mt19937_64 rng(1);
    std::lognormal_distribution<double> d(0.0, 3.0);
    for (int i = 0; i < 1000; ++i) v.push_back(d(rng));
    const double a = mean(v);
    std::shuffle(v.begin(), v.end(), rng);
    EXPECT_EQ(mean(v), a);
    EXPECT_DOUBLE_EQ(mean(kSample), 3.875);
}

TEST(Cdf, RightContinuousStep) {
    const EmpiricalCdf cdf = empirical_cdf(kSample);
    EXPECT_TRUE(std::is_sorted(cdf.x.begin(), cdf.x.end()));
    EXPECT_DOUBLE_EQ(cdf(0.5), 0.0);
    EXPECT_DOUBLE_EQ(cdf(1.0), 0.25);  // tie at 1 counts both
    EXPECT_DOUBLE_EQ(cdf(1.5), 0.25);
    EXPECT_DOUBLE_EQ(cdf(9.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf(100.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf.p[0], 0.25);
    EXPECT_TRUE(std::is_sorted(cdf.p.begin(), cdf.p.end()));
}

TEST(Summary, Fields) {
    const Summary s = summarize(kSample);
    EXPECT_DOUBLE_EQ(s.min, 1.0);
    EXPECT_DOUBLE_EQ(s.max, 9.0);
    EXPECT_DOUBLE_EQ(s.median, 3.5);
    EXPECT_DOUBLE_EQ(s.p5, 1.0);
    EXPECT_DOUBLE_EQ(s.mean, 3.875);
}
