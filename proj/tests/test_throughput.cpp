#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "orbitcf/errors.hpp"
#include "orbitcf/throughput.hpp"

using namespace orbitcf;
using orbitcf::testing::make_net;
using orbitcf::testing::random_net;

namespace {

// Literal transcription of the closed-form SINR, term by term, with full
// matrix products and no shared helpers from the library.
arma::vec literal_sinr(const NetworkRealization& net, const EstimationStatistics& st, const arma::vec& rho,
                       bool sat, bool gnd) {
    const int K = net.k();
    const int M = net.m();
    const double ptau = st.pilot_energy;
    arma::vec out(K, arma::fill::zeros);
    for (int k = 0; k < K; ++k) {
        const arma::cx_vec& gk = net.g_bar_sat[k];
        const arma::cx_mat& Rk = net.R_sat[k];
        const arma::cx_mat& Phik = st.phi[net.pilot_of_user[k] - 1];
        const arma::cx_mat RPR = Rk * Phik * Rk;

        double a = 0.0;
        if (sat) a += std::real(arma::cdot(gk, gk)) + ptau * std::real(arma::trace(RPR));
        if (gnd)
            for (int m = 0; m < M; ++m) a += st.gamma(m, k);

        double mi = 0.0;
        for (int kp = 0; kp < K; ++kp) {
            if (rho(kp) == 0.0) continue;
            const arma::cx_vec& gkp = net.g_bar_sat[kp];
            const arma::cx_mat& Rkp = net.R_sat[kp];
            const bool co = net.pilot_of_user[kp] == net.pilot_of_user[k];
            if (co && kp != k) {
                cx t = 0.0;
                if (sat) t += arma::cdot(gk, gkp) + ptau * arma::trace(Rkp * Phik * Rk);
                if (gnd)
                    for (int m = 0; m < M; ++m) t += st.c(m, kp) / st.c(m, k) * st.gamma(m, k);
                mi += rho(kp) * std::norm(t);
            }
            if (!co && sat) mi += rho(kp) * std::norm(arma::cdot(gk, gkp));
            if (sat) {
                mi += ptau * rho(kp) * std::real(arma::cdot(gkp, RPR * gkp));
                mi += rho(kp) * std::real(arma::cdot(gk, Rkp * gk));
                mi += ptau * rho(kp) * std::real(arma::trace(Rkp * RPR));
            }
            if (gnd)
                for (int m = 0; m < M; ++m) mi += rho(kp) * st.gamma(m, k) * net.beta_ground(m, kp);
        }
        double no = 0.0;
        if (sat) no += st.sigma2_sat * std::real(arma::cdot(gk, gk)) + ptau * st.sigma2_sat * std::real(arma::trace(RPR));
        if (gnd)
            for (int m = 0; m < M; ++m) no += st.sigma2_ap * st.gamma(m, k);
        out(k) = rho(k) * a * a / (mi + no);
    }
    return out;
}

struct Drop {
    NetworkRealization net;
    EstimationStatistics st;
};

Drop random_drop(std::uint64_t seed, int m = 4, int k = 6, int n = 4, int tau_p = 3) {
    Drop d{random_net(m, k, n, tau_p, seed), {}};
    d.st = compute_estimation_statistics(d.net, TrainingParams{0.8, 0.2, 0.3});
    return d;
}

double max_rel(const arma::vec& a, const arma::vec& b) { return arma::max(arma::abs(a - b) / arma::abs(b)); }

}  // namespace

TEST(ClosedForm, MatchesLiteralFormula) {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const Drop d = random_drop(seed);
        const arma::vec rho = arma::linspace(0.2, 1.0, d.net.k());
        EXPECT_LT(max_rel(sinr_values(sinr_coefficients(d.st, d.net), rho), literal_sinr(d.net, d.st, rho, true, true)),
                  1e-12);
        EXPECT_LT(max_rel(ground_only_sinr(d.st, d.net, rho), literal_sinr(d.net, d.st, rho, false, true)), 1e-12);
        EXPECT_LT(max_rel(space_only_sinr(d.st, d.net, rho), literal_sinr(d.net, d.st, rho, true, false)), 1e-12);
    }
}

TEST(ClosedForm, BreakdownComponents) {
    const Drop d = random_drop(9);
    const arma::vec rho = arma::linspace(0.1, 0.9, d.net.k());
    for (const auto& b : closed_form_sinr(d.st, d.net, rho)) {
        EXPECT_GE(b.signal, 0.0);
        EXPECT_GE(b.mi_coherent, 0.0);
        EXPECT_GE(b.mi_noncoherent, 0.0);
        EXPECT_GT(b.noise, 0.0);
    }
    const auto b = closed_form_sinr(d.st, d.net, rho);
    EXPECT_NEAR(b[2].sinr, rho(2) * b[2].signal / (b[2].mi_coherent + b[2].mi_noncoherent + b[2].noise), 1e-15 * b[2].sinr);
}

TEST(ClosedForm, ZeroPowerGivesZero) {
    const Drop d = random_drop(5);
    const arma::vec zero(d.net.k(), arma::fill::zeros);
    EXPECT_TRUE(arma::all(sinr_values(sinr_coefficients(d.st, d.net), zero) == 0.0));
    EXPECT_THROW(sinr_values(sinr_coefficients(d.st, d.net), -arma::ones(d.net.k())), InputError);
}

TEST(ClosedForm, GroundOnlyScalarCase) {
    arma::mat beta(1, 1, arma::fill::ones);
    const NetworkRealization net =
        make_net(beta, {arma::cx_vec(2, arma::fill::zeros)}, {arma::cx_mat(2, 2, arma::fill::zeros)}, 1);
    const EstimationStatistics st = compute_estimation_statistics(net, TrainingParams{1.0, 1.0, 1.0});
    ASSERT_DOUBLE_EQ(st.gamma(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(ground_only_sinr(st, net, arma::vec{1.0})(0), 0.25);
    EXPECT_DOUBLE_EQ(closed_form_sinr(st, net, arma::vec{1.0})[0].sinr, 0.25);
}

TEST(ClosedForm, SpaceOnlyLosUser) {
    arma::mat beta(2, 1, arma::fill::ones);
    const arma::cx_vec g{cx(0.3, 0.1), cx(-0.2, 0.4), cx(0.5, 0.0)};
    const NetworkRealization net = make_net(beta, {g}, {arma::cx_mat(3, 3, arma::fill::zeros)}, 1);
    const double s2 = 0.05;
    const EstimationStatistics st = compute_estimation_statistics(net, TrainingParams{1.0, 1.0, s2});
    const double rho = 0.7;
    const double g2 = std::real(arma::cdot(g, g));
    EXPECT_NEAR(space_only_sinr(st, net, arma::vec{rho})(0), rho * g2 / s2, 1e-13 * rho * g2 / s2);
}

TEST(ClosedForm, ReductionsAreExact) {
    Drop d = random_drop(12);
    const arma::vec rho = arma::linspace(0.3, 0.6, d.net.k());

    Drop ground = d;
    for (auto& g : ground.net.g_bar_sat) g.zeros();
    for (auto& r : ground.net.R_sat) r.zeros();
    ground.st = compute_estimation_statistics(ground.net, TrainingParams{0.8, 0.2, 0.3});
    const arma::vec a = sinr_values(sinr_coefficients(ground.st, ground.net), rho);
    const arma::vec b = ground_only_sinr(ground.st, ground.net, rho);
    for (arma::uword k = 0; k < a.n_elem; ++k) EXPECT_EQ(a(k), b(k));

    Drop space = d;
    space.net.beta_ground.zeros();
    space.st = compute_estimation_statistics(space.net, TrainingParams{0.8, 0.2, 0.3});
    const arma::vec c = sinr_values(sinr_coefficients(space.st, space.net), rho);
    const arma::vec e = space_only_sinr(space.st, space.net, rho);
    for (arma::uword k = 0; k < c.n_elem; ++k) EXPECT_EQ(c(k), e(k));
}

TEST(ClosedForm, StrictlyIncreasingInOwnPower) {
    const Drop d = random_drop(21);
    const SinrCoefficients coeffs = sinr_coefficients(d.st, d.net);
    arma::vec rho = arma::linspace(0.2, 0.8, d.net.k());
    for (int k = 0; k < d.net.k(); ++k) {
        double last = -1.0;
        for (double p : {1e-4, 1e-3, 0.01, 0.1, 0.3, 0.5, 1.0, 2.0}) {
            arma::vec r = rho;
            r(k) = p;
            const double s = sinr_values(coeffs, r)(k);
            EXPECT_GT(s, last);
            last = s;
        }
    }
}

TEST(ClosedForm, DroppingAUserNeverHurtsOthers) {
    const Drop d = random_drop(33, 5, 7, 4, 3);
    const SinrCoefficients coeffs = sinr_coefficients(d.st, d.net);
    const arma::vec rho = arma::linspace(0.2, 0.8, d.net.k());
    const arma::vec base = sinr_values(coeffs, rho);
    for (int off = 0; off < d.net.k(); ++off) {
        arma::vec r = rho;
        r(off) = 0.0;
        const arma::vec s = sinr_values(coeffs, r);
        EXPECT_EQ(s(off), 0.0);
        for (int k = 0; k < d.net.k(); ++k)
            if (k != off) EXPECT_GE(s(k), base(k));
    }
}

TEST(Throughput, Prelog) {
    EXPECT_DOUBLE_EQ(throughput_from_sinr(3.0, 20e6, 5, 10), 20.0);
    EXPECT_DOUBLE_EQ(throughput_from_sinr(0.0, 20e6, 5, 10), 0.0);
    EXPECT_NEAR(throughput_from_sinr(1.0, 20e6, 10, 200), 19.0, 1e-12);
    EXPECT_THROW(throughput_from_sinr(1.0, 20e6, 10, 10), ConfigError);
    EXPECT_THROW(throughput_from_sinr(-1.0, 20e6, 1, 10), InputError);
}

TEST(Throughput, ReportSumsUsers) {
    SystemConfig cfg;
    const ThroughputReport r = make_report(arma::vec{0.0, 1.0, 3.0}, cfg, "closed-form");
    EXPECT_EQ(r.mode, "closed-form");
    EXPECT_DOUBLE_EQ(r.sum_mbps, arma::accu(r.per_user_mbps));
    EXPECT_NEAR(r.per_user_mbps(2), 2.0 * 20.0 * 0.999, 1e-12);
}
