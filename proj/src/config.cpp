#include "orbitcf/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "orbitcf/errors.hpp"

namespace orbitcf {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

template <typename T>
void read_key(const json& section, const char* key, T& out, const std::string& where) {
    auto it = section.find(key);
    if (it == section.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("invalid config: " + where + "." + key + " has the wrong type (" + e.what() + ")");
    }
}

void reject_unknown(const json& section, const json& known, const std::string& where) {
    for (auto it = section.begin(); it != section.end(); ++it) {
        if (!known.contains(it.key()))
            throw ConfigError("invalid config: unknown key " + where + (where.empty() ? "" : ".") + it.key());
    }
}

}  // namespace

double SystemConfig::p_max(int user) const {
    if (p_max_w.size() == 1) return p_max_w.front();
    return p_max_w.at(static_cast<std::size_t>(user));
}

std::vector<double> SystemConfig::p_max_vector() const {
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = p_max(i);
    return out;
}

double noise_power_w(double b_hz, double noise_figure_db) {
    const double dbm = -174.0 + 10.0 * std::log10(b_hz) + noise_figure_db;
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double SystemConfig::sigma2_ap() const { return noise_power_w(b_hz, noise_figure_ap_db); }
double SystemConfig::sigma2_sat() const { return noise_power_w(b_hz, noise_figure_sat_db); }
double SystemConfig::rician_factor() const { return std::pow(10.0, rician_factor_db / 10.0); }

void SystemConfig::validate() const {
    require(m >= 1, "scenario.m must be >= 1");
    require(k >= 1, "scenario.k must be >= 1");
    require(n_v >= 1, "scenario.n_v must be >= 1");
    require(n_h >= 1, "scenario.n_h must be >= 1");
    require(area_side_km > 0, "scenario.area_side_km must be > 0");
    require(ap_height_m >= 0, "scenario.ap_height_m must be >= 0");
    require(user_height_m >= 0, "scenario.user_height_m must be >= 0");
    require(tau_p >= 1, "waveform.tau_p must be >= 1");
    require(tau_p <= tau_c, "waveform.tau_p must be <= waveform.tau_c");
    require(b_hz > 0, "waveform.b_hz must be > 0");
    require(f_c_mhz > 0, "waveform.f_c_mhz must be > 0");
    require(p_pilot_w > 0, "power.p_pilot_w must be > 0");
    require(p_max_w.size() == 1 || p_max_w.size() == static_cast<std::size_t>(k),
            "power.p_max_w must have 1 or K entries");
    for (double p : p_max_w) require(p > 0, "power.p_max_w entries must be > 0");
    require(shadow_std_ap_db >= 0, "radio.shadow_std_ap_db must be >= 0");
    require(shadow_std_sat_db >= 0, "radio.shadow_std_sat_db must be >= 0");
    require(corr_coeff >= 0 && corr_coeff < 1, "radio.corr_coeff must be in [0, 1)");
    for (double v : {area_side_km, b_hz, f_c_mhz, p_pilot_w, noise_figure_ap_db, noise_figure_sat_db, gain_ap_dbi,
                     gain_user_dbi, gain_sat_dbi, rician_factor_db, sat_position_km[0], sat_position_km[1],
                     sat_position_km[2]})
        require(std::isfinite(v), "all numeric fields must be finite");
    require(ao.epsilon_mbps > 0, "ao.epsilon_mbps must be > 0");
    require(ao.max_iter >= 1, "ao.max_iter must be >= 1");
    require(ao.init == "full" || ao.init == "random", "ao.init must be \"full\" or \"random\"");
    require(ao.schedule_threshold >= 0 && ao.schedule_threshold < 1, "ao.schedule_threshold must be in [0, 1)");
}

json to_json(const SystemConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["scenario"] = {{"m", c.m},
                     {"k", c.k},
                     {"n_v", c.n_v},
                     {"n_h", c.n_h},
                     {"area_side_km", c.area_side_km},
                     {"sat_position_km", c.sat_position_km},
                     {"ap_height_m", c.ap_height_m},
                     {"user_height_m", c.user_height_m}};
    j["waveform"] = {{"b_hz", c.b_hz}, {"f_c_mhz", c.f_c_mhz}, {"tau_c", c.tau_c}, {"tau_p", c.tau_p}};
    j["power"] = {{"p_pilot_w", c.p_pilot_w}};
    if (c.p_max_w.size() == 1)
        j["power"]["p_max_w"] = c.p_max_w.front();
    else
        j["power"]["p_max_w"] = c.p_max_w;
    j["radio"] = {{"noise_figure_ap_db", c.noise_figure_ap_db},
                  {"noise_figure_sat_db", c.noise_figure_sat_db},
                  {"gain_ap_dbi", c.gain_ap_dbi},
                  {"gain_user_dbi", c.gain_user_dbi},
                  {"gain_sat_dbi", c.gain_sat_dbi},
                  {"shadow_std_ap_db", c.shadow_std_ap_db},
                  {"shadow_std_sat_db", c.shadow_std_sat_db},
                  {"rician_factor_db", c.rician_factor_db},
                  {"corr_coeff", c.corr_coeff}};
    j["ao"] = {{"epsilon_mbps", c.ao.epsilon_mbps},
               {"max_iter", c.ao.max_iter},
               {"init", c.ao.init},
               {"schedule_threshold", c.ao.schedule_threshold}};
    return j;
}

SystemConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("invalid config: top level must be an object");
    SystemConfig c;
    const json known = to_json(c);
    reject_unknown(j, known, "");
    read_key(j, "seed", c.seed, "");

    auto section = [&](const char* name) -> const json* {
        auto it = j.find(name);
        if (it == j.end()) return nullptr;
        if (!it->is_object()) throw ConfigError(std::string("invalid config: section ") + name + " must be an object");
        reject_unknown(*it, known[name], name);
        return &*it;
    };

    if (const json* s = section("scenario")) {
        read_key(*s, "m", c.m, "scenario");
        read_key(*s, "k", c.k, "scenario");
        read_key(*s, "n_v", c.n_v, "scenario");
        read_key(*s, "n_h", c.n_h, "scenario");
        read_key(*s, "area_side_km", c.area_side_km, "scenario");
        read_key(*s, "sat_position_km", c.sat_position_km, "scenario");
        read_key(*s, "ap_height_m", c.ap_height_m, "scenario");
        read_key(*s, "user_height_m", c.user_height_m, "scenario");
    }
    if (const json* s = section("waveform")) {
        read_key(*s, "b_hz", c.b_hz, "waveform");
        read_key(*s, "f_c_mhz", c.f_c_mhz, "waveform");
        read_key(*s, "tau_c", c.tau_c, "waveform");
        read_key(*s, "tau_p", c.tau_p, "waveform");
    }
    if (const json* s = section("power")) {
        read_key(*s, "p_pilot_w", c.p_pilot_w, "power");
        if (auto it = s->find("p_max_w"); it != s->end()) {
            if (it->is_number())
                c.p_max_w = {it->get<double>()};
            else
                read_key(*s, "p_max_w", c.p_max_w, "power");
        }
    }
    if (const json* s = section("radio")) {
        read_key(*s, "noise_figure_ap_db", c.noise_figure_ap_db, "radio");
        read_key(*s, "noise_figure_sat_db", c.noise_figure_sat_db, "radio");
        read_key(*s, "gain_ap_dbi", c.gain_ap_dbi, "radio");
        read_key(*s, "gain_user_dbi", c.gain_user_dbi, "radio");
        read_key(*s, "gain_sat_dbi", c.gain_sat_dbi, "radio");
        read_key(*s, "shadow_std_ap_db", c.shadow_std_ap_db, "radio");
        read_key(*s, "shadow_std_sat_db", c.shadow_std_sat_db, "radio");
        read_key(*s, "rician_factor_db", c.rician_factor_db, "radio");
        read_key(*s, "corr_coeff", c.corr_coeff, "radio");
    }
    if (const json* s = section("ao")) {
        read_key(*s, "epsilon_mbps", c.ao.epsilon_mbps, "ao");
        read_key(*s, "max_iter", c.ao.max_iter, "ao");
        read_key(*s, "init", c.ao.init, "ao");
        read_key(*s, "schedule_threshold", c.ao.schedule_threshold, "ao");
    }
    c.validate();
    return c;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse config file " + path + ": " + e.what());
    }
    j.erase("experiment");
    return config_from_json(j);
}

void apply_override(SystemConfig& cfg, const std::string& dotted_key, const std::string& value) {
    json j = to_json(cfg);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos) {
        if (!j.contains(dotted_key) || j[dotted_key].is_object())
            throw ConfigError("unknown override key " + dotted_key);
        j[dotted_key] = parsed;
    } else {
        const std::string section = dotted_key.substr(0, dot);
        const std::string key = dotted_key.substr(dot + 1);
        if (!j.contains(section) || !j[section].is_object() || !j[section].contains(key))
            throw ConfigError("unknown override key " + dotted_key);
        j[section][key] = parsed;
    }
    cfg = config_from_json(j);
}

std::vector<std::string> override_keys() {
    std::vector<std::string> out;
    const json j = to_json(SystemConfig{});
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it->is_object()) continue;
        for (auto jt = it->begin(); jt != it->end(); ++jt) out.push_back(it.key() + "." + jt.key());
    }
    return out;
}

}  // namespace orbitcf
