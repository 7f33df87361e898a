#include "orbitcf/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "orbitcf/dataset.hpp"
#include "orbitcf/errors.hpp"
#include "orbitcf/estimation.hpp"
#include "orbitcf/optimizer.hpp"
#include "orbitcf/parallel.hpp"
#include "orbitcf/scenario.hpp"
#include "orbitcf/stats.hpp"
#include "orbitcf/throughput.hpp"

namespace orbitcf {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMonteCarloStream = 1;
constexpr std::uint64_t kRandomPowerStream = 2;
constexpr std::uint64_t kAoInitStream = 3;
constexpr std::array<LinkMode, 3> kModes{LinkMode::both, LinkMode::ground, LinkMode::space};
constexpr std::array<const char*, 3> kModeKeys{"space_ground", "ground", "space"};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const arma::vec& v) { return json(arma::conv_to<std::vector<double>>::from(v)); }

json summary_json(const std::vector<double>& samples) {
    const Summary s = summarize(samples);
    return {{"mean", s.mean}, {"median", s.median}, {"p5", s.p5}, {"min", s.min}, {"max", s.max}};
}

json cdf_json(const std::vector<double>& samples) {
    const EmpiricalCdf cdf = empirical_cdf(samples);
    return {{"x", cdf.x}, {"p", cdf.p}};
}

// Everything a drop contributes; collected by index so aggregation order
// never depends on scheduling.
struct DropOutput {
    json record;
    std::vector<std::vector<std::string>> rows;
    double seconds = 0.0;
    std::vector<double> values;  // kind-specific numbers used by the aggregates
    std::string line;            // dataset export
};

template <typename Fn>
std::vector<DropOutput> run_drops(int drops, int workers, Fn&& fn) {
    std::vector<DropOutput> out(static_cast<std::size_t>(drops));
    parallel_for(out.size(), workers, [&](std::size_t d) {
        const auto t0 = Clock::now();
        out[d] = fn(static_cast<int>(d));
        out[d].seconds = seconds_since(t0);
    });
    return out;
}

ExperimentReport start_report(const ExperimentSpec& spec) {
    ExperimentReport r;
    r.report["spec"] = spec_to_json(spec);
    r.report["seed"] = spec.config.seed;
    r.report["kind"] = to_string(spec.kind);
    return r;
}

void collect(ExperimentReport& rep, std::vector<DropOutput>& outs, CsvTable& table) {
    json drops = json::array();
    json timing = json::array();
    for (auto& o : outs) {
        drops.push_back(std::move(o.record));
        timing.push_back(o.seconds);
        for (auto& row : o.rows) table.rows.push_back(std::move(row));
    }
    rep.report["drops"] = std::move(drops);
    rep.timing["drop_seconds"] = std::move(timing);
}

arma::vec data_powers(const ExperimentSpec& spec, std::uint64_t seed) {
    const arma::vec p_max(spec.config.p_max_vector());
    if (spec.data_power == "zero") return arma::zeros<arma::vec>(p_max.n_elem);
    if (spec.data_power == "random") return random_powers(p_max, derive_seed(seed, kRandomPowerStream));
    return p_max;
}

double relative_gap(double reference, double estimate) {
    if (reference == 0.0) return estimate == 0.0 ? 0.0 : std::abs(estimate);
    return std::abs(reference - estimate) / reference;
}

}  // namespace

std::uint64_t drop_seed(std::uint64_t base, int drop) { return derive_seed(base, static_cast<std::uint64_t>(drop)); }

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::validate: return "validate";
        case ExperimentKind::cdf: return "cdf";
        case ExperimentKind::optimize: return "optimize";
        case ExperimentKind::sweep_pilots: return "sweep-pilots";
        case ExperimentKind::schedule_stats: return "schedule-stats";
        case ExperimentKind::export_gnn_dataset: return "export-gnn-dataset";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (auto k : {ExperimentKind::validate, ExperimentKind::cdf, ExperimentKind::optimize,
                   ExperimentKind::sweep_pilots, ExperimentKind::schedule_stats, ExperimentKind::export_gnn_dataset})
        if (name == to_string(k)) return k;
    throw ConfigError("unknown experiment kind " + name);
}

int default_drops(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::cdf: return 100;
        case ExperimentKind::optimize:
        case ExperimentKind::sweep_pilots:
        case ExperimentKind::schedule_stats: return 50;
        case ExperimentKind::validate:
        case ExperimentKind::export_gnn_dataset: return 10;
    }
    return 10;
}

ExperimentSpec resolve_spec(ExperimentSpec spec) {
    if (spec.drops == 0) spec.drops = default_drops(spec.kind);
    if (spec.drops < 1) throw ConfigError("invalid experiment: drops must be >= 1");
    if (spec.mc_trials < 1) throw ConfigError("invalid experiment: mc_trials must be >= 1");
    if (spec.data_power != "full" && spec.data_power != "zero" && spec.data_power != "random")
        throw ConfigError("invalid experiment: data_power must be full, zero or random");
    spec.config.validate();
    if (spec.kind == ExperimentKind::sweep_pilots) {
        if (spec.tau_p_list.empty())
            for (int t = 1; t <= 2 * spec.config.k; ++t) spec.tau_p_list.push_back(t);
        if (spec.tau_c_list.empty()) throw ConfigError("invalid experiment: tau_c_list is empty");
        for (int tp : spec.tau_p_list) {
            if (tp < 1) throw ConfigError("invalid experiment: tau_p entries must be >= 1");
            for (int tc : spec.tau_c_list)
                if (tp >= tc)
                    throw ConfigError("invalid experiment: tau_p " + std::to_string(tp) + " is not below tau_c " +
                                      std::to_string(tc));
        }
    }
    if (spec.kind == ExperimentKind::schedule_stats) {
        if (spec.k_list.empty()) throw ConfigError("invalid experiment: k_list is empty");
        if (spec.config.p_max_w.size() != 1)
            throw ConfigError("invalid experiment: schedule-stats needs a scalar power.p_max_w");
        for (int k : spec.k_list)
            if (k < 1) throw ConfigError("invalid experiment: k_list entries must be >= 1");
    }
    if (spec.kind != ExperimentKind::sweep_pilots && spec.kind != ExperimentKind::export_gnn_dataset &&
        spec.config.tau_p >= spec.config.tau_c)
        throw ConfigError("invalid config: tau_p must be < tau_c");
    return spec;
}

json spec_to_json(const ExperimentSpec& spec) {
    return {{"kind", to_string(spec.kind)},
            {"drops", spec.drops},
            {"config", to_json(spec.config)},
            {"mc_trials", spec.mc_trials},
            {"tau_p_list", spec.tau_p_list},
            {"tau_c_list", spec.tau_c_list},
            {"k_list", spec.k_list},
            {"data_power", spec.data_power}};
}

ExperimentSpec spec_from_json(const json& j) {
    ExperimentSpec s;
    try {
        s.kind = parse_kind(j.at("kind").get<std::string>());
        s.drops = j.at("drops").get<int>();
        s.config = config_from_json(j.at("config"));
        s.mc_trials = j.at("mc_trials").get<std::int64_t>();
        s.tau_p_list = j.at("tau_p_list").get<std::vector<int>>();
        s.tau_c_list = j.at("tau_c_list").get<std::vector<int>>();
        s.k_list = j.at("k_list").get<std::vector<int>>();
        s.data_power = j.at("data_power").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid embedded spec: ") + e.what());
    }
    return s;
}

std::string CsvTable::to_string() const {
    std::string out;
    auto put_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    };
    put_row(header);
    for (const auto& r : rows) put_row(r);
    return out;
}

ExperimentReport run_validate(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    const SystemConfig& cfg = spec.config;
    ExperimentReport rep = start_report(spec);
    CsvTable table{"validate.csv",
                   {"drop_id", "k", "sinr_cf_space_ground", "sinr_mc_space_ground", "gap_space_ground", "sinr_cf_ground",
                    "sinr_mc_ground", "gap_ground", "sinr_cf_space", "sinr_mc_space", "gap_space"},
                   {}};

    auto outs = run_drops(spec.drops, spec.workers, [&](int d) {
        const std::uint64_t seed = drop_seed(cfg.seed, d);
        const NetworkRealization net = build_scenario(cfg, seed);
        const EstimationStatistics stats = compute_estimation_statistics(net, cfg);
        const arma::vec rho = data_powers(spec, seed);
        const MonteCarloSinr mc =
            monte_carlo_sinr_all(net, stats, rho, spec.mc_trials, derive_seed(seed, kMonteCarloStream));
        DropOutput o;
        o.record["drop_id"] = d;
        o.record["rho_w"] = to_json(rho);
        std::array<arma::vec, 3> cf;
        for (std::size_t i = 0; i < kModes.size(); ++i) {
            cf[i] = sinr_values(sinr_coefficients(stats, net, kModes[i]), rho);
            o.record[kModeKeys[i]] = {{"sinr_cf", to_json(cf[i])}, {"sinr_mc", to_json(mc[kModes[i]])}};
        }
        o.values.assign(3, 0.0);
        for (int k = 0; k < net.k(); ++k) {
            std::vector<std::string> row{std::to_string(d), std::to_string(k)};
            for (std::size_t i = 0; i < kModes.size(); ++i) {
                const double gap = relative_gap(cf[i](k), mc[kModes[i]](k));
                o.values[i] = std::max(o.values[i], gap);
                row.push_back(num(cf[i](k)));
                row.push_back(num(mc[kModes[i]](k)));
                row.push_back(num(gap));
            }
            o.rows.push_back(std::move(row));
        }
        return o;
    });

    json agg;
    double worst = 0.0;
    for (std::size_t i = 0; i < kModes.size(); ++i) {
        double m = 0.0;
        for (const auto& o : outs) m = std::max(m, o.values[i]);
        agg["max_rel_gap"][kModeKeys[i]] = m;
        worst = std::max(worst, m);
    }
    agg["max_rel_gap_all"] = worst;
    agg["users_compared"] = spec.drops * cfg.k;
    rep.report["aggregates"] = agg;
    collect(rep, outs, table);
    rep.tables.push_back(std::move(table));
    return rep;
}

ExperimentReport run_cdf(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    const SystemConfig& cfg = spec.config;
    ExperimentReport rep = start_report(spec);
    CsvTable table{"cdf.csv", {"drop_id", "k", "mbps_space_ground", "mbps_ground", "mbps_space"}, {}};

    auto outs = run_drops(spec.drops, spec.workers, [&](int d) {
        const std::uint64_t seed = drop_seed(cfg.seed, d);
        const NetworkRealization net = build_scenario(cfg, seed);
        const EstimationStatistics stats = compute_estimation_statistics(net, cfg);
        const arma::vec rho = data_powers(spec, seed);
        DropOutput o;
        o.record["drop_id"] = d;
        std::array<ThroughputReport, 3> tr;
        for (std::size_t i = 0; i < kModes.size(); ++i) {
            tr[i] = make_report(sinr_values(sinr_coefficients(stats, net, kModes[i]), rho), cfg, kModeKeys[i]);
            o.record[kModeKeys[i]] = {{"per_user_mbps", to_json(tr[i].per_user_mbps)}, {"sum_mbps", tr[i].sum_mbps}};
        }
        for (int k = 0; k < net.k(); ++k)
            o.rows.push_back({std::to_string(d), std::to_string(k), num(tr[0].per_user_mbps(k)),
                              num(tr[1].per_user_mbps(k)), num(tr[2].per_user_mbps(k))});
        return o;
    });

    json agg;
    for (std::size_t i = 0; i < kModes.size(); ++i) {
        std::vector<double> per_user;
        std::vector<double> sums;
        for (const auto& o : outs) {
            const auto& rec = o.record[kModeKeys[i]];
            for (double x : rec["per_user_mbps"]) per_user.push_back(x);
            sums.push_back(rec["sum_mbps"].get<double>());
        }
        agg[kModeKeys[i]] = {{"per_user", summary_json(per_user)},
                             {"sum", summary_json(sums)},
                             {"per_user_cdf", cdf_json(per_user)},
                             {"sum_cdf", cdf_json(sums)}};
    }
    rep.report["aggregates"] = agg;
    collect(rep, outs, table);
    rep.tables.push_back(std::move(table));
    return rep;
}

ExperimentReport run_sweep_pilots(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    const SystemConfig& cfg = spec.config;
    ExperimentReport rep = start_report(spec);
    CsvTable table{"sweep_pilots.csv",
                   {"drop_id", "k", "tau_p", "tau_c", "mbps_space_ground", "mbps_ground", "mbps_space"},
                   {}};
    const std::size_t n_tp = spec.tau_p_list.size();
    const std::size_t n_tc = spec.tau_c_list.size();

    // values layout: [tc][tp][mode] sum throughput
    auto outs = run_drops(spec.drops, spec.workers, [&](int d) {
        const std::uint64_t seed = drop_seed(cfg.seed, d);
        NetworkRealization net = build_scenario(cfg, seed);
        const arma::vec rho(cfg.p_max_vector());
        DropOutput o;
        o.record["drop_id"] = d;
        o.values.assign(n_tc * n_tp * kModes.size(), 0.0);
        for (std::size_t ip = 0; ip < n_tp; ++ip) {
            const int tp = spec.tau_p_list[ip];
            assign_pilots(net, tp);
            const EstimationStatistics stats = compute_estimation_statistics(net, training_params(cfg, tp));
            std::array<arma::vec, 3> sinr;
            for (std::size_t i = 0; i < kModes.size(); ++i)
                sinr[i] = sinr_values(sinr_coefficients(stats, net, kModes[i]), rho);
            for (std::size_t ic = 0; ic < n_tc; ++ic) {
                const int tc = spec.tau_c_list[ic];
                std::array<std::vector<double>, 3> mbps;
                for (std::size_t i = 0; i < kModes.size(); ++i) {
                    double total = 0.0;
                    for (double s : sinr[i]) {
                        mbps[i].push_back(throughput_from_sinr(s, cfg.b_hz, tp, tc));
                        total += mbps[i].back();
                    }
                    o.values[(ic * n_tp + ip) * kModes.size() + i] = total;
                }
                for (int k = 0; k < net.k(); ++k)
                    o.rows.push_back({std::to_string(d), std::to_string(k), std::to_string(tp), std::to_string(tc),
                                      num(mbps[0][k]), num(mbps[1][k]), num(mbps[2][k])});
            }
        }
        json sums = json::object();
        for (std::size_t ic = 0; ic < n_tc; ++ic)
            for (std::size_t i = 0; i < kModes.size(); ++i) {
                std::vector<double> row;
                for (std::size_t ip = 0; ip < n_tp; ++ip) row.push_back(o.values[(ic * n_tp + ip) * kModes.size() + i]);
                sums[std::to_string(spec.tau_c_list[ic])][kModeKeys[i]] = row;
            }
        o.record["sum_mbps"] = sums;
        return o;
    });

    json agg;
    for (std::size_t ic = 0; ic < n_tc; ++ic) {
        json entry;
        entry["tau_p"] = spec.tau_p_list;
        for (std::size_t i = 0; i < kModes.size(); ++i) {
            std::vector<double> mean_sum;
            for (std::size_t ip = 0; ip < n_tp; ++ip) {
                std::vector<double> samples;
                for (const auto& o : outs) samples.push_back(o.values[(ic * n_tp + ip) * kModes.size() + i]);
                mean_sum.push_back(mean(samples));
            }
            const auto best = std::max_element(mean_sum.begin(), mean_sum.end()) - mean_sum.begin();
            std::vector<double> per_user;
            for (double s : mean_sum) per_user.push_back(s / cfg.k);
            entry[kModeKeys[i]] = {{"mean_sum_mbps", mean_sum},
                                   {"mean_per_user_mbps", per_user},
                                   {"peak_tau_p", spec.tau_p_list[static_cast<std::size_t>(best)]}};
        }
        agg[std::to_string(spec.tau_c_list[ic])] = entry;
    }
    rep.report["aggregates"] = agg;
    collect(rep, outs, table);
    rep.tables.push_back(std::move(table));
    return rep;
}

namespace {

// AO, both baselines and traces for one drop; values = {ao, full, random,
// scheduled, users, iterations, converged, max objective increase, AO seconds}.
DropOutput optimize_drop(const SystemConfig& cfg, std::uint64_t seed, int d, const std::string& prefix) {
    const NetworkRealization net = build_scenario(cfg, seed);
    const EstimationStatistics stats = compute_estimation_statistics(net, cfg);
    const SinrCoefficients coeffs = sinr_coefficients(stats, net, LinkMode::both);
    const RateParams rate = rate_params(cfg, net);
    const arma::vec p_max(cfg.p_max_vector());
    const arma::vec init = cfg.ao.init == "random" ? random_powers(p_max, derive_seed(seed, kAoInitStream)) : p_max;

    const auto t0 = Clock::now();
    const AoResult ao = ao_solve(coeffs, rate, p_max, init, cfg.ao.epsilon_mbps, cfg.ao.max_iter,
                                 cfg.ao.schedule_threshold);
    const double ao_seconds = seconds_since(t0);
    const PowerSolution full = baseline_full_power(coeffs, rate, p_max);
    const PowerSolution rnd = baseline_random_power(coeffs, rate, p_max, derive_seed(seed, kRandomPowerStream));

    double max_increase = 0.0;
    const auto& obj = ao.state.objective_trace;
    for (std::size_t i = 1; i < obj.size(); ++i) max_increase = std::max(max_increase, obj[i] - obj[i - 1]);

    DropOutput o;
    o.record = {{"drop_id", d},
                {"ao_sum_mbps", ao.solution.final_sum_mbps},
                {"full_sum_mbps", full.final_sum_mbps},
                {"random_sum_mbps", rnd.final_sum_mbps},
                {"rho_ao_w", to_json(ao.solution.rho)},
                {"scheduled", ao.solution.scheduled},
                {"unscheduled", ao.solution.unscheduled},
                {"iterations", ao.solution.iterations_used},
                {"converged", ao.solution.converged},
                {"objective_trace", obj},
                {"sum_rate_trace", ao.state.sum_rate_trace}};
    o.values = {ao.solution.final_sum_mbps,
                full.final_sum_mbps,
                rnd.final_sum_mbps,
                static_cast<double>(ao.solution.scheduled.size()),
                static_cast<double>(net.k()),
                static_cast<double>(ao.solution.iterations_used),
                ao.solution.converged ? 1.0 : 0.0,
                max_increase,
                ao_seconds};
    const auto on = [&](int k) {
        return std::find(ao.solution.scheduled.begin(), ao.solution.scheduled.end(), k) != ao.solution.scheduled.end();
    };
    const arma::vec ao_mbps = make_report(sinr_values(coeffs, ao.solution.rho), cfg, "ao").per_user_mbps;
    const arma::vec full_mbps = make_report(sinr_values(coeffs, full.rho), cfg, "full").per_user_mbps;
    const arma::vec rnd_mbps = make_report(sinr_values(coeffs, rnd.rho), cfg, "random").per_user_mbps;
    for (int k = 0; k < net.k(); ++k) {
        std::vector<std::string> row;
        if (!prefix.empty()) row.push_back(prefix);
        for (auto& s : std::vector<std::string>{std::to_string(d), std::to_string(k), num(ao.solution.rho(k)),
                                                num(rnd.rho(k)), on(k) ? "1" : "0", num(ao_mbps(k)),
                                                num(full_mbps(k)), num(rnd_mbps(k))})
            row.push_back(s);
        o.rows.push_back(std::move(row));
    }
    return o;
}

json optimize_aggregates(const std::vector<DropOutput>& outs) {
    std::vector<double> ao, full, rnd, iters;
    double scheduled = 0.0, users = 0.0, converged = 0.0, max_increase = 0.0;
    int with_unscheduled = 0;
    bool strict = true;
    for (const auto& o : outs) {
        const auto& v = o.values;
        ao.push_back(v[0]);
        full.push_back(v[1]);
        rnd.push_back(v[2]);
        scheduled += v[3];
        users += v[4];
        iters.push_back(v[5]);
        converged += v[6];
        max_increase = std::max(max_increase, v[7]);
        if (v[3] < v[4]) {
            ++with_unscheduled;
            if (!(v[0] > v[1])) strict = false;
        }
    }
    const double n = static_cast<double>(outs.size());
    return {{"mean_sum_mbps", {{"ao", mean(ao)}, {"full", mean(full)}, {"random", mean(rnd)}}},
            {"sum_mbps_ao", summary_json(ao)},
            {"improvement_over_full", mean(ao) / mean(full) - 1.0},
            {"scheduled_fraction", scheduled / users},
            {"mean_iterations", mean(iters)},
            {"max_iterations", *std::max_element(iters.begin(), iters.end())},
            {"converged_fraction", converged / n},
            {"max_objective_increase", max_increase},
            {"drops_with_unscheduled", with_unscheduled},
            {"strict_improvement_when_unscheduled", strict}};
}

}  // namespace

ExperimentReport run_optimize(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    const SystemConfig& cfg = spec.config;
    ExperimentReport rep = start_report(spec);
    CsvTable table{"optimize.csv",
                   {"drop_id", "k", "rho_ao_w", "rho_random_w", "scheduled", "mbps_ao", "mbps_full", "mbps_random"},
                   {}};
    auto outs = run_drops(spec.drops, spec.workers,
                          [&](int d) { return optimize_drop(cfg, drop_seed(cfg.seed, d), d, ""); });
    rep.report["aggregates"] = optimize_aggregates(outs);
    json ao_seconds = json::array();
    for (const auto& o : outs) ao_seconds.push_back(o.values[8]);
    rep.timing["ao_seconds"] = ao_seconds;
    collect(rep, outs, table);
    rep.tables.push_back(std::move(table));
    return rep;
}

ExperimentReport run_schedule_stats(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    ExperimentReport rep = start_report(spec);
    CsvTable table{"schedule_stats.csv",
                   {"k_users", "drop_id", "k", "rho_ao_w", "rho_random_w", "scheduled", "mbps_ao", "mbps_full",
                    "mbps_random"},
                   {}};
    json agg = json::object();
    json drops = json::object();
    for (int k_users : spec.k_list) {
        SystemConfig cfg = spec.config;
        cfg.k = k_users;
        cfg.tau_p = std::max(1, k_users / 2);
        cfg.validate();
        const std::uint64_t base = derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(k_users));
        auto outs = run_drops(spec.drops, spec.workers, [&](int d) {
            return optimize_drop(cfg, drop_seed(base, d), d, std::to_string(k_users));
        });
        const std::string key = std::to_string(k_users);
        agg[key] = optimize_aggregates(outs);
        json recs = json::array();
        json secs = json::array();
        for (auto& o : outs) {
            recs.push_back(std::move(o.record));
            secs.push_back(o.values[8]);
            for (auto& row : o.rows) table.rows.push_back(std::move(row));
        }
        drops[key] = std::move(recs);
        rep.timing["ao_seconds"][key] = secs;
    }
    rep.report["aggregates"] = agg;
    rep.report["drops"] = drops;
    rep.tables.push_back(std::move(table));
    return rep;
}

ExperimentReport export_gnn_dataset(const ExperimentSpec& in) {
    const ExperimentSpec spec = resolve_spec(in);
    const SystemConfig& cfg = spec.config;
    ExperimentReport rep = start_report(spec);
    auto outs = run_drops(spec.drops, spec.workers, [&](int d) {
        const std::uint64_t seed = drop_seed(cfg.seed, d);
        const NetworkRealization net = build_scenario(cfg, seed);
        const EstimationStatistics stats = compute_estimation_statistics(net, cfg);
        DropOutput o;
        o.line = serialize_record(make_record(net, stats, cfg, d, seed));
        o.record = {{"drop_id", d}, {"seed", seed}};
        return o;
    });
    json timing = json::array();
    json drops = json::array();
    for (auto& o : outs) {
        rep.dataset_lines.push_back(std::move(o.line));
        drops.push_back(std::move(o.record));
        timing.push_back(o.seconds);
    }
    rep.report["drops"] = drops;
    rep.report["aggregates"] = {{"record_count", rep.dataset_lines.size()}};
    rep.timing["drop_seconds"] = timing;
    return rep;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::validate: return run_validate(spec);
        case ExperimentKind::cdf: return run_cdf(spec);
        case ExperimentKind::optimize: return run_optimize(spec);
        case ExperimentKind::sweep_pilots: return run_sweep_pilots(spec);
        case ExperimentKind::schedule_stats: return run_schedule_stats(spec);
        case ExperimentKind::export_gnn_dataset: return export_gnn_dataset(spec);
    }
    throw ConfigError("unknown experiment kind");
}

ExperimentReport rerun_report(const json& report, int workers) {
    ExperimentSpec spec = spec_from_json(report.at("spec"));
    spec.workers = workers;
    return run_experiment(spec);
}

void write_outputs(const ExperimentReport& rep, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& body) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << body;
        if (!out) throw std::runtime_error("cannot write " + path.string());
    };
    write("report.json", rep.dump() + "\n");
    write("timing.json", rep.timing.dump(2) + "\n");
    for (const auto& t : rep.tables) write(t.name, t.to_string());
    if (!rep.dataset_lines.empty()) {
        std::string body;
        for (const auto& line : rep.dataset_lines) body += line + "\n";
        write("dataset.jsonl", body);
    }
}

}  // namespace orbitcf
