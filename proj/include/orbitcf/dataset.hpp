#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <armadillo>

#include "orbitcf/config.hpp"
#include "orbitcf/estimation.hpp"
#include "orbitcf/scenario.hpp"

namespace orbitcf {

/// One line of the GNN dataset: everything needed to evaluate the closed-form
/// SINR outside this library.
struct GnnRecord {
    int drop_id = 0;
    std::uint64_t seed = 0;
    arma::mat beta;                    ///< M x K
    std::vector<arma::cx_vec> gbar;    ///< K x N
    std::vector<arma::cx_mat> r;       ///< K x N x N
    std::vector<arma::cx_mat> phi;     ///< tau_p x N x N
    arma::mat gamma;                   ///< M x K
    arma::mat c;                       ///< M x K
    arma::vec p_max;                   ///< K
    double sigma2_ap = 0.0;
    double sigma2_sat = 0.0;
    double p_pilot = 0.0;
    int tau_p = 1;
    int tau_c = 1;
    double b_hz = 0.0;
    std::vector<int> pilot_of_user;    ///< 1-based
};

GnnRecord make_record(const NetworkRealization& net, const EstimationStatistics& stats, const SystemConfig& cfg,
                      int drop_id, std::uint64_t seed);

/// Single-line JSON object, numbers printed with 17 significant digits, no trailing newline.
std::string serialize_record(const GnnRecord& rec);

/// Throws InputError naming the missing or malformed key.
GnnRecord parse_record(const std::string& line);

/// Rebuilds the inputs of the closed-form SINR from a record.
std::pair<NetworkRealization, EstimationStatistics> record_to_inputs(const GnnRecord& rec);

}  // namespace orbitcf
