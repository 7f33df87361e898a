#pragma once

#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"
#include "orbitcf/linalg.hpp"
#include "orbitcf/scenario.hpp"

namespace orbitcf {

/// MMSE byproducts for one drop. Per-user matrices are indexed by user,
/// Phi by pilot class (0-based).
struct EstimationStatistics {
    arma::mat c;      ///< M x K
    arma::mat gamma;  ///< M x K, variance of the ground estimate
    std::vector<arma::cx_mat> phi;     ///< tau_p entries
    std::vector<arma::cx_mat> q_sat;   ///< p tau_p R_k Phi_k R_k
    std::vector<arma::cx_mat> c_err;   ///< R_k - q_sat[k]
    std::vector<arma::cx_mat> filter;  ///< sqrt(p tau_p) R_k Phi_k, applied to the centred projection
    std::vector<arma::cx_vec> y_bar;   ///< mean of the satellite projection, sqrt(p tau_p) sum of co-pilot g_bar
    double sigma2_ap = 0.0;
    double sigma2_sat = 0.0;
    double pilot_energy = 0.0;  ///< p tau_p

    const arma::cx_mat& phi_of(const NetworkRealization& net, int user) const {
        return phi[static_cast<std::size_t>(net.pilot_class(user))];
    }
};

/// Pilot energy and receiver noise used by the training simulation.
struct TrainingParams {
    double pilot_energy;
    double sigma2_ap;
    double sigma2_sat;
};

TrainingParams training_params(const SystemConfig& cfg, int tau_p);

EstimationStatistics compute_estimation_statistics(const NetworkRealization& net, const TrainingParams& tp);
EstimationStatistics compute_estimation_statistics(const NetworkRealization& net, const SystemConfig& cfg);

/// Rebuilds Q, C_err and the filters from c, gamma and Phi (used after import).
void complete_statistics(EstimationStatistics& stats, const NetworkRealization& net);

struct ChannelSample {
    arma::cx_mat g_ground;             ///< M x K
    std::vector<arma::cx_vec> g_sat;   ///< K vectors of length N
};

/// Per-user projected pilot observations; co-pilot users hold identical values.
struct PilotProjections {
    arma::cx_mat y_ground;            ///< M x K
    std::vector<arma::cx_vec> y_sat;  ///< K vectors of length N
};

struct ChannelEstimates {
    arma::cx_mat ghat_ground;
    std::vector<arma::cx_vec> ghat_sat;
};

/// Draws channels with g_k = g_bar_k + R_k^{1/2} m. Square roots are computed once.
class ChannelSampler {
public:
    explicit ChannelSampler(const NetworkRealization& net);
    void draw(ChannelSample& out, Rng& rng) const;
    ChannelSample draw(Rng& rng) const;

private:
    const NetworkRealization& net_;
    arma::mat beta_sqrt_;
    std::vector<arma::cx_mat> r_sqrt_;
};

ChannelSample sample_channels(const NetworkRealization& net, Rng& rng);

void simulate_pilot_training(const ChannelSample& sample, const NetworkRealization& net, const TrainingParams& tp,
                             Rng& rng, PilotProjections& out);
PilotProjections simulate_pilot_training(const ChannelSample& sample, const NetworkRealization& net,
                                         const SystemConfig& cfg, Rng& rng);

void mmse_estimate(const PilotProjections& proj, const EstimationStatistics& stats, const NetworkRealization& net,
                   ChannelEstimates& out);
ChannelEstimates mmse_estimate(const PilotProjections& proj, const EstimationStatistics& stats,
                               const NetworkRealization& net);

}  // namespace orbitcf
