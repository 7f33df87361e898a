#include "orbitcf/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "orbitcf/errors.hpp"
#include "orbitcf/linalg.hpp"

namespace orbitcf {

namespace {

constexpr std::uint64_t kGeometryStream = 0x5CE0;

void check_distance(double d_km) {
    if (!(d_km > 0.0)) throw std::domain_error("pathloss: distance must be > 0 km");
}

// Exponential correlation along one array axis with phase progression psi.
arma::cx_mat axis_correlation(int len, double r, double psi) {
    arma::cx_mat out(len, len);
    for (int a = 0; a < len; ++a)
        for (int b = 0; b < len; ++b) {
            const int d = a - b;
            out(a, b) = std::pow(r, std::abs(d)) * std::polar(1.0, psi * d);
        }
    return out;
}

}  // namespace

double distance_km(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    const double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double ground_pathloss_db(double d_km, double shadow_db, const SystemConfig& cfg) {
    check_distance(d_km);
    return cfg.gain_ap_dbi + cfg.gain_user_dbi - 8.5 - 38.63 * std::log10(d_km) - 20.0 * std::log10(cfg.f_c_mhz) +
           shadow_db;
}

double satellite_pathloss_db(double d_km, double shadow_db, const SystemConfig& cfg) {
    check_distance(d_km);
    return cfg.gain_user_dbi + cfg.gain_sat_dbi - 32.45 - 20.0 * std::log10(d_km) - 20.0 * std::log10(cfg.f_c_mhz) +
           shadow_db;
}

std::pair<arma::cx_vec, arma::cx_mat> build_satellite_statistics(const Vec3& user_pos_km, const Vec3& sat_pos_km,
                                                                 double beta_k, const SystemConfig& cfg) {
    const double d = distance_km(user_pos_km, sat_pos_km);
    check_distance(d);
    // Direction cosines of the user->satellite ray in the array (horizontal) plane.
    const double ux = (sat_pos_km[0] - user_pos_km[0]) / d;
    const double uy = (sat_pos_km[1] - user_pos_km[1]) / d;
    const double psi_h = std::numbers::pi * ux;
    const double psi_v = std::numbers::pi * uy;
    const double kappa = cfg.rician_factor();

    arma::cx_vec g_bar(cfg.n());
    for (int iv = 0; iv < cfg.n_v; ++iv)
        for (int ih = 0; ih < cfg.n_h; ++ih) g_bar(iv * cfg.n_h + ih) = std::polar(1.0, psi_h * ih + psi_v * iv);
    g_bar *= std::sqrt(beta_k * kappa / (kappa + 1.0));

    arma::cx_mat r = arma::kron(axis_correlation(cfg.n_v, cfg.corr_coeff, psi_v),
                                axis_correlation(cfg.n_h, cfg.corr_coeff, psi_h));
    r *= beta_k / (kappa + 1.0);
    return {std::move(g_bar), hermitian_part(r)};
}

void assign_pilots(NetworkRealization& net, int tau_p) {
    if (tau_p < 1) throw ConfigError("invalid config: waveform.tau_p must be >= 1");
    const int k = static_cast<int>(net.user_positions_km.size());
    net.tau_p = tau_p;
    net.pilot_of_user.assign(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(tau_p));
    for (int u = 0; u < k; ++u) {
        net.pilot_of_user[static_cast<std::size_t>(u)] = u % tau_p + 1;
        classes[static_cast<std::size_t>(u % tau_p)].push_back(u);
    }
    net.copilot_sets.assign(static_cast<std::size_t>(k), {});
    for (int u = 0; u < k; ++u) net.copilot_sets[static_cast<std::size_t>(u)] = classes[static_cast<std::size_t>(u % tau_p)];
}

NetworkRealization build_scenario(const SystemConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng(derive_seed(seed, kGeometryStream));
    std::uniform_real_distribution<double> coord(0.0, cfg.area_side_km);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    NetworkRealization net;
    net.sat_position_km = cfg.sat_position_km;
    const double ap_z = cfg.ap_height_m / 1000.0;
    const double user_z = cfg.user_height_m / 1000.0;
    for (int m = 0; m < cfg.m; ++m) {
        const double x = coord(rng);
        const double y = coord(rng);
        net.ap_positions_km.push_back({x, y, ap_z});
    }
    for (int k = 0; k < cfg.k; ++k) {
        const double x = coord(rng);
        const double y = coord(rng);
        net.user_positions_km.push_back({x, y, user_z});
    }

    net.beta_ground.set_size(cfg.m, cfg.k);
    for (int m = 0; m < cfg.m; ++m)
        for (int k = 0; k < cfg.k; ++k) {
            const double d = distance_km(net.ap_positions_km[m], net.user_positions_km[k]);
            const double z = cfg.shadow_std_ap_db * unit_normal(rng);
            net.beta_ground(m, k) = db_to_linear(ground_pathloss_db(d, z, cfg));
        }

    net.beta_sat.set_size(cfg.k);
    for (int k = 0; k < cfg.k; ++k) {
        const double d = distance_km(net.user_positions_km[k], net.sat_position_km);
        const double z = cfg.shadow_std_sat_db * unit_normal(rng);
        net.beta_sat(k) = db_to_linear(satellite_pathloss_db(d, z, cfg));
        auto [g_bar, r] = build_satellite_statistics(net.user_positions_km[k], net.sat_position_km, net.beta_sat(k), cfg);
        net.g_bar_sat.push_back(std::move(g_bar));
        net.R_sat.push_back(std::move(r));
    }

    assign_pilots(net, cfg.tau_p);
    return net;
}

}  // namespace orbitcf
