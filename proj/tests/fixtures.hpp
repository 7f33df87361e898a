#pragma once

// Small hand-built networks shared by the unit tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"
#include "orbitcf/linalg.hpp"
#include "orbitcf/scenario.hpp"

namespace orbitcf::testing {

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Random Hermitian PSD matrix with trace about `scale * n`, full rank.
inline arma::cx_mat random_psd(int n, double scale, Rng& rng) {
    ComplexNormal cn;
    arma::cx_mat a(n, n);
    for (auto& z : a) z = cn(rng);
    arma::cx_mat r = a * a.t() / static_cast<double>(n) + 0.05 * arma::eye<arma::cx_mat>(n, n);
    return hermitian_part(r * scale);
}

inline arma::cx_vec random_vec(int n, double scale, Rng& rng) {
    ComplexNormal cn;
    arma::cx_vec v(n);
    for (auto& z : v) z = cn(rng) * scale;
    return v;
}

/// Network with given ground gains and satellite statistics. Positions are
/// placeholders; only their count matters to the pilot assignment.
inline NetworkRealization make_net(const arma::mat& beta, const std::vector<arma::cx_vec>& g_bar,
                                   const std::vector<arma::cx_mat>& r, int tau_p) {
    NetworkRealization net;
    net.beta_ground = beta;
    net.g_bar_sat = g_bar;
    net.R_sat = r;
    net.beta_sat.set_size(beta.n_cols);
    for (arma::uword k = 0; k < beta.n_cols; ++k)
        net.beta_sat(k) = std::real(arma::cdot(g_bar[k], g_bar[k])) + std::real(arma::trace(r[k]));
    net.ap_positions_km.assign(beta.n_rows, Vec3{});
    net.user_positions_km.assign(beta.n_cols, Vec3{});
    assign_pilots(net, tau_p);
    return net;
}

/// Random network with M APs, K users, N antennas and moderate SNR so that
/// every term of the SINR matters.
inline NetworkRealization random_net(int m, int k, int n, int tau_p, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.2, 1.0);
    arma::mat beta(m, k);
    for (auto& b : beta) b = u(rng);
    std::vector<arma::cx_vec> g;
    std::vector<arma::cx_mat> r;
    for (int i = 0; i < k; ++i) {
        g.push_back(random_vec(n, 0.4, rng));
        r.push_back(random_psd(n, 0.3, rng));
    }
    return make_net(beta, g, r, tau_p);
}

/// Small version of the default geometry used by the validation criterion.
inline SystemConfig small_config() {
    SystemConfig cfg;
    cfg.m = 10;
    cfg.k = 8;
    cfg.n_v = 3;
    cfg.n_h = 3;
    cfg.tau_p = 4;
    return cfg;
}

}  // namespace orbitcf::testing
