// Command-line driver: orbitcf <experiment> --config <file> [options]

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitcf/config.hpp"
#include "orbitcf/errors.hpp"
#include "orbitcf/harness.hpp"

namespace {

// Optional "experiment" section of the config file.
void read_experiment_section(const nlohmann::json& j, orbitcf::ExperimentSpec& spec) {
    auto it = j.find("experiment");
    if (it == j.end()) return;
    const auto& e = *it;
    for (auto kv = e.begin(); kv != e.end(); ++kv) {
        const std::string& key = kv.key();
        if (key == "drops")
            spec.drops = kv->get<int>();
        else if (key == "mc_trials")
            spec.mc_trials = kv->get<std::int64_t>();
        else if (key == "tau_p_list")
            spec.tau_p_list = kv->get<std::vector<int>>();
        else if (key == "tau_c_list")
            spec.tau_c_list = kv->get<std::vector<int>>();
        else if (key == "k_list")
            spec.k_list = kv->get<std::vector<int>>();
        else if (key == "data_power")
            spec.data_power = kv->get<std::string>();
        else if (key == "workers")
            spec.workers = kv->get<int>();
        else
            throw orbitcf::ConfigError("invalid config: unknown key experiment." + key);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integrated satellite-terrestrial cell-free uplink simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    int drops = 0;
    std::int64_t mc_trials = 0;
    std::string out_dir = "out";
    int workers = 0;
    std::vector<int> tau_p_list, tau_c_list, k_list;
    std::string data_power;
    std::map<std::string, std::string> overrides;

    const char* kinds[] = {"validate", "cdf", "sweep-pilots", "optimize", "schedule-stats", "export-gnn-dataset"};
    for (const char* kind : kinds) {
        CLI::App* sub = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
        sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "base RNG seed (overrides the config seed)");
        sub->add_option("--drops", drops, "number of network drops");
        sub->add_option("--mc-trials", mc_trials, "Monte Carlo trials per drop (validate)");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--workers", workers, "worker threads (results do not depend on it)");
        sub->add_option("--tau-p-list", tau_p_list, "pilot lengths for sweep-pilots")->delimiter(',');
        sub->add_option("--tau-c-list", tau_c_list, "coherence lengths for sweep-pilots")->delimiter(',');
        sub->add_option("--k-list", k_list, "user counts for schedule-stats")->delimiter(',');
        sub->add_option("--data-power", data_power, "validate/cdf data powers: full, zero or random");
        for (const std::string& key : orbitcf::override_keys())
            sub->add_option_function<std::string>(
                "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
                "override " + key);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        orbitcf::ExperimentSpec spec;
        spec.kind = orbitcf::parse_kind(app.get_subcommands().front()->get_name());
        if (!config_path.empty()) {
            spec.config = orbitcf::load_config(config_path);
            std::ifstream in(config_path);
            read_experiment_section(nlohmann::json::parse(in), spec);
        }
        for (const auto& [key, value] : overrides) orbitcf::apply_override(spec.config, key, value);
        if (app.get_subcommands().front()->count("--seed")) spec.config.seed = seed;
        if (drops) spec.drops = drops;
        if (mc_trials) spec.mc_trials = mc_trials;
        if (workers) spec.workers = workers;
        if (!tau_p_list.empty()) spec.tau_p_list = tau_p_list;
        if (!tau_c_list.empty()) spec.tau_c_list = tau_c_list;
        if (!k_list.empty()) spec.k_list = k_list;
        if (!data_power.empty()) spec.data_power = data_power;
        spec.output_path = out_dir;

        const orbitcf::ExperimentReport report = orbitcf::run_experiment(spec);
        orbitcf::write_outputs(report, out_dir);
        std::cout << report.report["aggregates"].dump(2) << "\n";
        std::cerr << "wrote " << out_dir << "\n";
    } catch (const orbitcf::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
