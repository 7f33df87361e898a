#pragma once

#include <cstdint>
#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"
#include "orbitcf/estimation.hpp"
#include "orbitcf/scenario.hpp"
#include "orbitcf/throughput.hpp"

namespace orbitcf {

/// Variables of the MSE reformulation. rho_tilde holds amplitudes (sqrt of W).
struct AOState {
    arma::vec rho_tilde;
    arma::vec v;
    arma::vec alpha;
    arma::vec delta;
    int iteration = 0;
    std::vector<double> objective_trace;  ///< sum_k alpha_k e_k - ln alpha_k after each iteration
    std::vector<double> sum_rate_trace;   ///< Mbps; entry 0 is the initial point
};

struct PowerSolution {
    arma::vec rho;  ///< W
    std::vector<int> scheduled;
    std::vector<int> unscheduled;
    int iterations_used = 0;
    bool converged = false;
    double final_sum_mbps = 0.0;
};

struct AoResult {
    PowerSolution solution;
    AOState state;
};

/// Rate-side constants needed by the solver.
struct RateParams {
    double b_hz;
    int tau_p;
    int tau_c;
};

RateParams rate_params(const SystemConfig& cfg, const NetworkRealization& net);

/// delta_k = sum_k' rho~_k'^2 I(k,k') + NO_k at the given amplitudes.
arma::vec compute_delta(const SinrCoefficients& coeffs, const arma::vec& rho_tilde);

/// Scalar MSE e_k = (rho~_k v_k A_k - 1)^2 + v_k^2 delta_k(rho~).
arma::vec mse(const SinrCoefficients& coeffs, const arma::vec& rho_tilde, const arma::vec& v);

/// sum_k alpha_k e_k - ln alpha_k
double surrogate_objective(const SinrCoefficients& coeffs, const arma::vec& rho_tilde, const arma::vec& v,
                           const arma::vec& alpha);

/// v_k = rho~_k A_k / (rho~_k^2 A_k^2 + delta_k) with delta from state.rho_tilde.
arma::vec update_v(const AOState& state, const SinrCoefficients& coeffs);

/// alpha_k = 1 / e_k; throws NumericalError if some e_k <= 0.
arma::vec update_alpha(const arma::vec& e);

/// rho~_k = min(alpha_k v_k A_k / t_k, sqrt(P_max,k)) using state.v and state.alpha.
arma::vec update_rho(const AOState& state, const SinrCoefficients& coeffs, const arma::vec& p_max);

/// Q* = {k : rho_k > threshold_frac P_max,k}; returns (scheduled, unscheduled).
std::pair<std::vector<int>, std::vector<int>> extract_schedule(const arma::vec& rho, const arma::vec& p_max,
                                                               double threshold_frac);

AoResult ao_solve(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                  const arma::vec& init_rho, double epsilon_mbps, int max_iter, double schedule_threshold = 1e-6);

/// Builds the coefficients from (stats, net) and uses cfg.ao for tolerances.
AoResult ao_solve(const EstimationStatistics& stats, const NetworkRealization& net, const SystemConfig& cfg,
                  const arma::vec& init_rho);

PowerSolution make_solution(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& rho,
                            const arma::vec& p_max, double schedule_threshold);

PowerSolution baseline_full_power(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max);
PowerSolution baseline_random_power(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                                    std::uint64_t seed);

/// Uniform draw in [0, P_max,k] per user.
arma::vec random_powers(const arma::vec& p_max, std::uint64_t seed);

struct GridResult {
    arma::vec rho;
    double sum_mbps = 0.0;
};

/// Exhaustive search over grid_points^K uniform power levels in [0, P_max,k].
/// Refuses K > 3.
GridResult grid_search_oracle(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                              int grid_points);

}  // namespace orbitcf
