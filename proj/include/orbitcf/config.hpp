#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace orbitcf {

struct AoConfig {
    double epsilon_mbps = 1e-2;
    int max_iter = 100;
    std::string init = "full";  ///< "full" or "random"
    double schedule_threshold = 1e-6;  ///< fraction of P_max,k
};

/// Scenario, waveform, power and solver parameters. Units are in the names.
struct SystemConfig {
    // scenario
    int m = 40;
    int k = 20;
    int n_v = 5;
    int n_h = 5;
    double area_side_km = 4.0;
    std::array<double, 3> sat_position_km{300.0, 300.0, 400.0};
    double ap_height_m = 10.0;
    double user_height_m = 1.5;

    // waveform
    double b_hz = 20e6;
    double f_c_mhz = 3000.0;
    int tau_c = 10000;
    int tau_p = 10;

    // power
    double p_pilot_w = 0.1;
    std::vector<double> p_max_w{0.1};  ///< one entry (shared) or K entries

    // radio
    double noise_figure_ap_db = 1.2;
    double noise_figure_sat_db = 4.0;
    double gain_ap_dbi = 10.0;
    double gain_user_dbi = 10.0;
    double gain_sat_dbi = 30.0;
    double shadow_std_ap_db = 4.0;
    double shadow_std_sat_db = 4.0;
    double rician_factor_db = 10.0;
    double corr_coeff = 0.5;

    std::uint64_t seed = 1;

    AoConfig ao;

    int n() const { return n_v * n_h; }
    double p_max(int user) const;
    std::vector<double> p_max_vector() const;
    double pilot_energy() const { return p_pilot_w * tau_p; }
    double sigma2_ap() const;
    double sigma2_sat() const;
    double rician_factor() const;

    /// Throws ConfigError naming the first violated bound.
    void validate() const;
};

/// Thermal noise power in W for the given bandwidth and noise figure.
double noise_power_w(double b_hz, double noise_figure_db);

nlohmann::json to_json(const SystemConfig& cfg);

/// Parses nested sections (scenario, waveform, power, radio, ao) plus a
/// top-level seed. Missing keys keep their defaults; unknown keys are rejected.
SystemConfig config_from_json(const nlohmann::json& j);

SystemConfig load_config(const std::string& path);

/// Applies "section.key=value" style overrides. The value is parsed as JSON
/// when possible, otherwise taken as a string.
void apply_override(SystemConfig& cfg, const std::string& dotted_key, const std::string& value);

/// Dotted names of every overridable leaf, e.g. "waveform.tau_p".
std::vector<std::string> override_keys();

}  // namespace orbitcf
