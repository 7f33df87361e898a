#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"

namespace orbitcf {

using Vec3 = std::array<double, 3>;

/// One network drop: geometry, large-scale statistics and pilot assignment.
/// Users and APs are indexed from 0; pilot indices run from 1 to tau_p.
struct NetworkRealization {
    std::vector<Vec3> ap_positions_km;
    std::vector<Vec3> user_positions_km;
    Vec3 sat_position_km{};
    arma::mat beta_ground;                ///< M x K, linear
    arma::vec beta_sat;                   ///< K, linear
    std::vector<arma::cx_vec> g_bar_sat;  ///< LoS part per user, length N
    std::vector<arma::cx_mat> R_sat;      ///< NLoS covariance per user, N x N
    std::vector<int> pilot_of_user;
    std::vector<std::vector<int>> copilot_sets;  ///< P_k, sorted, contains k
    int tau_p = 1;

    int m() const { return static_cast<int>(beta_ground.n_rows); }
    int k() const { return static_cast<int>(beta_ground.n_cols); }
    int n() const { return g_bar_sat.empty() ? 0 : static_cast<int>(g_bar_sat.front().n_elem); }
    int pilot_class(int user) const { return pilot_of_user[static_cast<std::size_t>(user)] - 1; }
    bool copilots(int a, int b) const { return pilot_of_user[static_cast<std::size_t>(a)] == pilot_of_user[static_cast<std::size_t>(b)]; }
};

double distance_km(const Vec3& a, const Vec3& b);

/// G_m + G_k - 8.5 - 38.63 log10(d) - 20 log10(f_c) + shadow, d in km, f_c in MHz.
double ground_pathloss_db(double d_km, double shadow_db, const SystemConfig& cfg);

/// G_k + G - 32.45 - 20 log10(d) - 20 log10(f_c) + shadow.
double satellite_pathloss_db(double d_km, double shadow_db, const SystemConfig& cfg);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Planar-array LoS vector and Kronecker exponential-correlation matrix for a
/// user with linear satellite gain beta_k.
std::pair<arma::cx_vec, arma::cx_mat> build_satellite_statistics(const Vec3& user_pos_km, const Vec3& sat_pos_km,
                                                                 double beta_k, const SystemConfig& cfg);

/// Round-robin: user k (0-based) gets pilot (k mod tau_p) + 1.
void assign_pilots(NetworkRealization& net, int tau_p);

/// Deterministic in (cfg, seed). Throws ConfigError for invalid cfg.
NetworkRealization build_scenario(const SystemConfig& cfg, std::uint64_t seed);

}  // namespace orbitcf
