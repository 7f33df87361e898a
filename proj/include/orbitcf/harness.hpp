#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitcf/config.hpp"

namespace orbitcf {

enum class ExperimentKind { validate, cdf, optimize, sweep_pilots, schedule_stats, export_gnn_dataset };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::cdf;
    int drops = 0;  ///< 0 selects the per-kind default
    SystemConfig config;
    std::int64_t mc_trials = 100000;
    std::string output_path;
    std::vector<int> tau_p_list;  ///< sweep-pilots; empty means 1..2K
    std::vector<int> tau_c_list{200, 10000, 100000};
    std::vector<int> k_list{20, 30, 40, 50};  ///< schedule-stats
    std::string data_power = "full";          ///< validate and cdf: full | zero | random
    int workers = 1;                          ///< execution only, never serialized
};

/// Default ensemble size: 100 drops for cdf, 50 for optimize, sweeps and
/// schedule statistics, 10 for validate and export.
int default_drops(ExperimentKind kind);

/// Fills defaults and checks kind-specific parameters; throws ConfigError.
ExperimentSpec resolve_spec(ExperimentSpec spec);

nlohmann::json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);

struct CsvTable {
    std::string name;  ///< file name inside the output directory
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

struct ExperimentReport {
    nlohmann::json report;  ///< spec echo, seed, per-drop records, aggregates
    std::vector<CsvTable> tables;
    nlohmann::json timing;                   ///< wall-clock seconds; kept out of report
    std::vector<std::string> dataset_lines;  ///< export-gnn-dataset only

    std::string dump() const { return report.dump(2); }
};

ExperimentReport run_validate(const ExperimentSpec& spec);
ExperimentReport run_cdf(const ExperimentSpec& spec);
ExperimentReport run_sweep_pilots(const ExperimentSpec& spec);
ExperimentReport run_optimize(const ExperimentSpec& spec);
ExperimentReport run_schedule_stats(const ExperimentSpec& spec);
ExperimentReport export_gnn_dataset(const ExperimentSpec& spec);

ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Writes report.json, timing.json, the CSV tables and dataset.jsonl (if any)
/// into the directory, creating it when needed.
void write_outputs(const ExperimentReport& report, const std::string& dir);

/// Re-runs the spec embedded in a report.
ExperimentReport rerun_report(const nlohmann::json& report, int workers = 1);

/// Seed of drop d under a base seed.
std::uint64_t drop_seed(std::uint64_t base, int drop);

}  // namespace orbitcf
