#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "orbitcf/config.hpp"
#include "orbitcf/errors.hpp"

using namespace orbitcf;

namespace {

std::string message_of(const SystemConfig& cfg) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Config, DefaultsAreValid) {
    SystemConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.n(), 25);
    EXPECT_DOUBLE_EQ(cfg.pilot_energy(), 1.0);
}

TEST(Config, NoisePowerMatchesThermalFloor) {
    // -174 dBm/Hz over 20 MHz plus the noise figure, evaluated by hand.
    EXPECT_NEAR(noise_power_w(20e6, 1.2) / 1.0496149204995426e-13, 1.0, 1e-12);
    EXPECT_NEAR(noise_power_w(20e6, 4.0) / 2.0000000000000003e-13, 1.0, 1e-12);
}

TEST(Config, ValidateNamesTheViolatedBound) {
    SystemConfig cfg;
    cfg.tau_p = 0;
    EXPECT_NE(message_of(cfg).find("waveform.tau_p"), std::string::npos);

    cfg = SystemConfig{};
    cfg.tau_p = 20;
    cfg.tau_c = 10;
    EXPECT_NE(message_of(cfg).find("tau_c"), std::string::npos);

    cfg = SystemConfig{};
    cfg.corr_coeff = 1.0;
    EXPECT_NE(message_of(cfg).find("radio.corr_coeff"), std::string::npos);

    cfg = SystemConfig{};
    cfg.p_max_w = {0.1, 0.2};
    EXPECT_NE(message_of(cfg).find("p_max_w"), std::string::npos);

    cfg = SystemConfig{};
    cfg.m = 0;
    EXPECT_NE(message_of(cfg).find("scenario.m"), std::string::npos);

    cfg = SystemConfig{};
    cfg.shadow_std_ap_db = -1;
    EXPECT_NE(message_of(cfg).find("shadow_std_ap_db"), std::string::npos);
}

TEST(Config, PerUserPowerBudget) {
    SystemConfig cfg;
    cfg.k = 3;
    cfg.p_max_w = {0.1, 0.2, 0.3};
    cfg.validate();
    EXPECT_DOUBLE_EQ(cfg.p_max(2), 0.3);
    cfg.p_max_w = {0.5};
    EXPECT_EQ(cfg.p_max_vector(), (std::vector<double>{0.5, 0.5, 0.5}));
}

TEST(Config, JsonRoundTrip) {
    SystemConfig cfg;
    cfg.m = 7;
    cfg.seed = 99;
    cfg.ao.init = "random";
    cfg.sat_position_km = {1.0, 2.0, 500.0};
    const SystemConfig back = config_from_json(to_json(cfg));
    EXPECT_EQ(to_json(back).dump(), to_json(cfg).dump());
}

TEST(Config, PartialJsonKeepsDefaults) {
    const auto j = nlohmann::json::parse(R"({"seed": 5, "scenario": {"k": 4}, "power": {"p_max_w": 0.2}})");
    const SystemConfig cfg = config_from_json(j);
    EXPECT_EQ(cfg.seed, 5u);
    EXPECT_EQ(cfg.k, 4);
    EXPECT_EQ(cfg.m, 40);
    EXPECT_EQ(cfg.p_max_w, std::vector<double>{0.2});
}

TEST(Config, UnknownKeysRejected) {
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"scenario": {"mm": 4}})")), ConfigError);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"extra": 1})")), ConfigError);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"scenario": {"k": "four"}})")), ConfigError);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"waveform": {"tau_p": 0}})")), ConfigError);
}

TEST(Config, OverridesParseJsonOrString) {
    SystemConfig cfg;
    apply_override(cfg, "waveform.tau_p", "4");
    EXPECT_EQ(cfg.tau_p, 4);
    apply_override(cfg, "ao.init", "random");
    EXPECT_EQ(cfg.ao.init, "random");
    apply_override(cfg, "seed", "12");
    EXPECT_EQ(cfg.seed, 12u);
    apply_override(cfg, "power.p_max_w", "[0.05]");
    EXPECT_EQ(cfg.p_max_w, std::vector<double>{0.05});
    EXPECT_THROW(apply_override(cfg, "waveform.nope", "1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "scenario", "1"), ConfigError);
    EXPECT_THROW(apply_override(cfg, "waveform.tau_p", "0"), ConfigError);
}

TEST(Config, OverrideKeysCoverEverySection) {
    const auto keys = override_keys();
    for (const char* expected : {"scenario.m", "waveform.tau_p", "power.p_max_w", "radio.corr_coeff", "ao.epsilon_mbps"})
        EXPECT_NE(std::find(keys.begin(), keys.end(), expected), keys.end()) << expected;
}

TEST(Config, LoadIgnoresExperimentSection) {
    const std::string path = ::testing::TempDir() + "orbitcf_cfg.json";
    {
        std::ofstream out(path);
        out << R"({"seed": 3, "scenario": {"m": 5}, "experiment": {"drops": 2}})";
    }
    const SystemConfig cfg = load_config(path);
    EXPECT_EQ(cfg.m, 5);
    EXPECT_EQ(cfg.seed, 3u);
    std::remove(path.c_str());
    EXPECT_THROW(load_config(path), ConfigError);
}
