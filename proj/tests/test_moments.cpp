#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "orbitcf/errors.hpp"
#include "orbitcf/moments.hpp"

using namespace orbitcf;
using orbitcf::testing::random_psd;
using orbitcf::testing::random_vec;

namespace {

const arma::cx_mat kI4 = arma::eye<arma::cx_mat>(4, 4);
const arma::cx_mat kZero4(4, 4, arma::fill::zeros);
const arma::cx_vec kZeroV4(4, arma::fill::zeros);
const arma::cx_vec kOnes4(4, arma::fill::ones);

}  // namespace

TEST(MomentIndependent, TraceCase) { EXPECT_DOUBLE_EQ(moment_independent(kZeroV4, kZeroV4, kI4, kI4), 4.0); }

TEST(MomentIndependent, DeterministicCase) {
    EXPECT_DOUBLE_EQ(moment_independent(kOnes4, kOnes4, kZero4, kZero4), 16.0);
}

TEST(MomentIndependent, DimensionMismatch) {
    EXPECT_THROW(moment_independent(kOnes4, arma::cx_vec(3, arma::fill::ones), kI4, kI4), InputError);
}

TEST(MomentCorrelated, SameVectorCase) {
    const CorrelatedMoments mm = moment_correlated(kZeroV4, kZeroV4, kI4, kI4);
    EXPECT_NEAR(std::abs(mm.first - cx(4.0)), 0.0, 1e-12);
    EXPECT_NEAR(mm.second, 20.0, 1e-12);
}

TEST(MomentCorrelated, DeterministicCase) {
    Rng rng(1);
    const arma::cx_vec u = random_vec(4, 1.0, rng);
    const arma::cx_vec v = random_vec(4, 1.0, rng);
    const CorrelatedMoments mm = moment_correlated(u, v, kZero4, kZero4);
    EXPECT_NEAR(std::abs(mm.first - arma::cdot(u, v)), 0.0, 1e-15);
    EXPECT_NEAR(mm.second, std::norm(arma::cdot(u, v)), 1e-14);
}

TEST(MomentIndependent, MatchesSampling) {
    Rng rng(5);
    for (int inst = 0; inst < 3; ++inst) {
        const int n = 3;
        const arma::cx_vec ub = random_vec(n, 0.7, rng);
        const arma::cx_vec vb = random_vec(n, 0.7, rng);
        const arma::cx_mat ru = random_psd(n, 1.0, rng);
        const arma::cx_mat rv = random_psd(n, 1.0, rng);
        const arma::cx_mat su = psd_sqrt(ru);
        const arma::cx_mat sv = psd_sqrt(rv);
        ComplexNormal cn;
        arma::cx_vec a(n), b(n);
        double acc = 0.0;
        const int samples = 200000;
        for (int s = 0; s < samples; ++s) {
            for (auto& z : a) z = cn(rng);
            for (auto& z : b) z = cn(rng);
            acc += std::norm(arma::cdot(ub + su * a, vb + sv * b));
        }
        EXPECT_NEAR(acc / samples / moment_independent(ub, vb, ru, rv), 1.0, 0.02);
    }
}

TEST(MomentCorrelated, MatchesSampling) {
    Rng rng(6);
    for (int inst = 0; inst < 3; ++inst) {
        const int n = 3;
        const arma::cx_vec ub = random_vec(n, 0.5, rng);
        const arma::cx_vec vb = random_vec(n, 0.5, rng);
        const arma::cx_mat ru = random_psd(n, 1.0, rng);
        const arma::cx_mat rv = random_psd(n, 1.0, rng);
        const arma::cx_mat su = psd_sqrt(ru);
        const arma::cx_mat sv = psd_sqrt(rv);
        ComplexNormal cn;
        arma::cx_vec m(n);
        cx first = 0.0;
        double second = 0.0;
        const int samples = 200000;
        for (int s = 0; s < samples; ++s) {
            for (auto& z : m) z = cn(rng);
            const cx x = arma::cdot(ub + su * m, vb + sv * m);
            first += x;
            second += std::norm(x);
        }
        const CorrelatedMoments mm = moment_correlated(ub, vb, ru, rv);
        EXPECT_LT(std::abs(first / static_cast<double>(samples) - mm.first) / std::abs(mm.first), 0.02);
        EXPECT_NEAR(second / samples / mm.second, 1.0, 0.02);
    }
}

TEST(PsdSqrt, SquaresBackAndClampsRounding) {
    Rng rng(3);
    const arma::cx_mat r = random_psd(5, 2.0, rng);
    const arma::cx_mat s = psd_sqrt(r);
    EXPECT_LT(arma::norm(s * s - r, "fro"), 1e-12 * arma::norm(r, "fro"));
    EXPECT_LT(hermitian_defect(s), 1e-14);

    arma::cx_mat rank1 = arma::cx_vec(kOnes4) * arma::cx_vec(kOnes4).t();
    EXPECT_NO_THROW(psd_sqrt(rank1));
    EXPECT_THROW(psd_sqrt(-kI4), NumericalError);
}

TEST(HpdInverse, RejectsIllConditioned) {
    arma::cx_mat a = kI4;
    a(3, 3) = 1e-16;
    EXPECT_THROW(hpd_inverse(a), NumericalError);
    EXPECT_LT(arma::norm(hpd_inverse(2.0 * kI4) - 0.5 * kI4, "fro"), 1e-15);
}

TEST(Seeds, DerivedStreamsDiffer) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
