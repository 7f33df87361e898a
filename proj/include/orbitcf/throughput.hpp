#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"
#include "orbitcf/estimation.hpp"
#include "orbitcf/scenario.hpp"

namespace orbitcf {

enum class LinkMode { both, ground, space };

const char* to_string(LinkMode mode);

/// Power-independent pieces of the closed-form SINR. For user k:
///   sinr_k = rho_k signal_k^2 / (sum_k' rho_k' (coherent(k,k') + noncoherent(k,k')) + noise_k)
/// where coherent is non-zero only for co-pilots k' != k.
struct SinrCoefficients {
    LinkMode mode = LinkMode::both;
    arma::vec signal;       ///< A_k, the mean of the effective gain
    arma::mat coherent;     ///< K x K
    arma::mat noncoherent;  ///< K x K, includes k' = k
    arma::vec noise;        ///< NO_k

    int k() const { return static_cast<int>(signal.n_elem); }
    arma::mat interference() const { return coherent + noncoherent; }
};

SinrCoefficients sinr_coefficients(const EstimationStatistics& stats, const NetworkRealization& net,
                                   LinkMode mode = LinkMode::both);

struct SinrBreakdown {
    double signal = 0.0;  ///< A_k^2, without rho_k
    double mi_coherent = 0.0;
    double mi_noncoherent = 0.0;
    double noise = 0.0;
    double sinr = 0.0;
};

/// Users with rho_k = 0 are outside the active set: no interference, sinr 0.
std::vector<SinrBreakdown> evaluate_sinr(const SinrCoefficients& coeffs, const arma::vec& rho);
arma::vec sinr_values(const SinrCoefficients& coeffs, const arma::vec& rho);

std::vector<SinrBreakdown> closed_form_sinr(const EstimationStatistics& stats, const NetworkRealization& net,
                                            const arma::vec& rho);
arma::vec ground_only_sinr(const EstimationStatistics& stats, const NetworkRealization& net, const arma::vec& rho);
arma::vec space_only_sinr(const EstimationStatistics& stats, const NetworkRealization& net, const arma::vec& rho);

/// B (1 - tau_p / tau_c) log2(1 + sinr) in Mbps. Throws ConfigError when tau_p >= tau_c.
double throughput_from_sinr(double sinr, const SystemConfig& cfg);
double throughput_from_sinr(double sinr, double b_hz, int tau_p, int tau_c);

struct ThroughputReport {
    std::string mode;  ///< closed-form | monte-carlo | ground-only | space-only
    arma::vec per_user_sinr;
    arma::vec per_user_mbps;
    double sum_mbps = 0.0;
};

ThroughputReport make_report(const arma::vec& sinr, const SystemConfig& cfg, const std::string& mode);

/// Closed-form sum throughput in Mbps at the given powers.
double sum_rate_mbps(const SinrCoefficients& coeffs, const arma::vec& rho, double b_hz, int tau_p, int tau_c);

// --- Monte Carlo oracle ----------------------------------------------------

struct MonteCarloSinr {
    arma::vec both;
    arma::vec ground;
    arma::vec space;

    const arma::vec& operator[](LinkMode mode) const;
};

/// Empirical use-and-forget SINR with MRC for all three link modes from one set
/// of samples. Trials are grouped in fixed blocks, each with its own derived
/// seed, so the result does not depend on the worker count.
MonteCarloSinr monte_carlo_sinr_all(const NetworkRealization& net, const EstimationStatistics& stats,
                                    const arma::vec& rho, std::int64_t trials, std::uint64_t seed, int workers = 1);

arma::vec monte_carlo_sinr(const NetworkRealization& net, const EstimationStatistics& stats, const arma::vec& rho,
                           std::int64_t trials, std::uint64_t seed, LinkMode link_mask, int workers = 1);

}  // namespace orbitcf
