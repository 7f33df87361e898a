#include "orbitcf/throughput.hpp"

#include <cmath>

#include "orbitcf/errors.hpp"

namespace orbitcf {

const char* to_string(LinkMode mode) {
    switch (mode) {
        case LinkMode::both: return "space-ground";
        case LinkMode::ground: return "ground";
        case LinkMode::space: return "space";
    }
    return "unknown";
}

SinrCoefficients sinr_coefficients(const EstimationStatistics& stats, const NetworkRealization& net, LinkMode mode) {
    const bool sat = mode != LinkMode::ground;
    const bool gnd = mode != LinkMode::space;
    const int k_count = net.k();
    const int m_count = net.m();

    SinrCoefficients out;
    out.mode = mode;
    out.signal.zeros(k_count);
    out.coherent.zeros(k_count, k_count);
    out.noncoherent.zeros(k_count, k_count);
    out.noise.zeros(k_count);

    for (int k = 0; k < k_count; ++k) {
        const auto ik = static_cast<std::size_t>(k);
        const arma::cx_vec& gk = net.g_bar_sat[ik];
        const arma::cx_mat& qk = stats.q_sat[ik];
        const arma::cx_mat phi_r = stats.phi_of(net, k) * net.R_sat[ik];

        double sig_sat = 0.0;
        double sig_gnd = 0.0;
        if (sat) sig_sat = std::real(arma::cdot(gk, gk)) + std::real(arma::trace(qk));
        if (gnd) sig_gnd = arma::accu(stats.gamma.col(k));
        out.signal(k) = sig_sat + sig_gnd;
        out.noise(k) = (sat ? stats.sigma2_sat * sig_sat : 0.0) + (gnd ? stats.sigma2_ap * sig_gnd : 0.0);

        for (int kp = 0; kp < k_count; ++kp) {
            const auto ikp = static_cast<std::size_t>(kp);
            const arma::cx_vec& gkp = net.g_bar_sat[ikp];
            const arma::cx_mat& rkp = net.R_sat[ikp];

            double nc_sat = 0.0;
            double nc_gnd = 0.0;
            if (sat)
                nc_sat = quad_form(gkp, qk) + quad_form(gk, rkp) + std::real(trace_product(rkp, qk));
            if (gnd)
                for (int m = 0; m < m_count; ++m) nc_gnd += stats.gamma(m, k) * net.beta_ground(m, kp);
            out.noncoherent(k, kp) = nc_sat + nc_gnd;

            const cx los = sat ? arma::cdot(gk, gkp) : cx(0.0);
            if (!net.copilots(k, kp)) {
                out.noncoherent(k, kp) += std::norm(los);
            } else if (kp != k) {
                cx co_sat = los;
                if (sat) co_sat += stats.pilot_energy * trace_product(rkp, phi_r);
                double co_gnd = 0.0;
                if (gnd)
                    for (int m = 0; m < m_count; ++m)
                        if (stats.c(m, k) != 0.0) co_gnd += stats.c(m, kp) / stats.c(m, k) * stats.gamma(m, k);
                out.coherent(k, kp) = std::norm(co_sat + co_gnd);
            }
        }
    }
    return out;
}

std::vector<SinrBreakdown> evaluate_sinr(const SinrCoefficients& coeffs, const arma::vec& rho) {
    const int k_count = coeffs.k();
    if (static_cast<int>(rho.n_elem) != k_count) throw InputError("evaluate_sinr: power vector has wrong length");
    std::vector<SinrBreakdown> out(static_cast<std::size_t>(k_count));
    for (int k = 0; k < k_count; ++k) {
        if (rho(k) < 0.0) throw InputError("evaluate_sinr: powers must be >= 0");
        auto& b = out[static_cast<std::size_t>(k)];
        b.signal = coeffs.signal(k) * coeffs.signal(k);
        b.noise = coeffs.noise(k);
        for (int kp = 0; kp < k_count; ++kp) {
            if (rho(kp) <= 0.0) continue;
            b.mi_coherent += rho(kp) * coeffs.coherent(k, kp);
            b.mi_noncoherent += rho(kp) * coeffs.noncoherent(k, kp);
        }
        if (rho(k) > 0.0) b.sinr = rho(k) * b.signal / (b.mi_coherent + b.mi_noncoherent + b.noise);
    }
    return out;
}

arma::vec sinr_values(const SinrCoefficients& coeffs, const arma::vec& rho) {
    const auto b = evaluate_sinr(coeffs, rho);
    arma::vec out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out(i) = b[i].sinr;
    return out;
}

std::vector<SinrBreakdown> closed_form_sinr(const EstimationStatistics& stats, const NetworkRealization& net,
                                            const arma::vec& rho) {
    return evaluate_sinr(sinr_coefficients(stats, net, LinkMode::both), rho);
}

arma::vec ground_only_sinr(const EstimationStatistics& stats, const NetworkRealization& net, const arma::vec& rho) {
    return sinr_values(sinr_coefficients(stats, net, LinkMode::ground), rho);
}

arma::vec space_only_sinr(const EstimationStatistics& stats, const NetworkRealization& net, const arma::vec& rho) {
    return sinr_values(sinr_coefficients(stats, net, LinkMode::space), rho);
}

double throughput_from_sinr(double sinr, double b_hz, int tau_p, int tau_c) {
    if (tau_p >= tau_c) throw ConfigError("invalid config: tau_p must be < tau_c for a positive prelog");
    if (sinr < 0.0) throw InputError("throughput_from_sinr: sinr must be >= 0");
    const double prelog = 1.0 - static_cast<double>(tau_p) / static_cast<double>(tau_c);
    return b_hz * prelog * std::log2(1.0 + sinr) / 1e6;
}

double throughput_from_sinr(double sinr, const SystemConfig& cfg) {
    return throughput_from_sinr(sinr, cfg.b_hz, cfg.tau_p, cfg.tau_c);
}

ThroughputReport make_report(const arma::vec& sinr, const SystemConfig& cfg, const std::string& mode) {
    ThroughputReport r;
    r.mode = mode;
    r.per_user_sinr = sinr;
    r.per_user_mbps.set_size(sinr.n_elem);
    for (arma::uword k = 0; k < sinr.n_elem; ++k) r.per_user_mbps(k) = throughput_from_sinr(sinr(k), cfg);
    r.sum_mbps = arma::accu(r.per_user_mbps);
    return r;
}

double sum_rate_mbps(const SinrCoefficients& coeffs, const arma::vec& rho, double b_hz, int tau_p, int tau_c) {
    const arma::vec s = sinr_values(coeffs, rho);
    double total = 0.0;
    for (double v : s) total += throughput_from_sinr(v, b_hz, tau_p, tau_c);
    return total;
}

}  // namespace orbitcf
