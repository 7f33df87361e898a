#include "orbitcf/estimation.hpp"

#include <cmath>

#include "orbitcf/errors.hpp"

namespace orbitcf {

TrainingParams training_params(const SystemConfig& cfg, int tau_p) {
    return {cfg.p_pilot_w * tau_p, cfg.sigma2_ap(), cfg.sigma2_sat()};
}

EstimationStatistics compute_estimation_statistics(const NetworkRealization& net, const SystemConfig& cfg) {
    return compute_estimation_statistics(net, training_params(cfg, net.tau_p));
}

EstimationStatistics compute_estimation_statistics(const NetworkRealization& net, const TrainingParams& tp) {
    if (!(tp.pilot_energy > 0.0) || !(tp.sigma2_ap > 0.0) || !(tp.sigma2_sat > 0.0))
        throw InputError("estimation: pilot energy and noise powers must be > 0");
    const int m_count = net.m();
    const int k_count = net.k();
    const int n = net.n();

    EstimationStatistics st;
    st.sigma2_ap = tp.sigma2_ap;
    st.sigma2_sat = tp.sigma2_sat;
    st.pilot_energy = tp.pilot_energy;
    st.c.set_size(m_count, k_count);
    st.gamma.set_size(m_count, k_count);

    const double amp = std::sqrt(tp.pilot_energy);
    for (int k = 0; k < k_count; ++k) {
        const auto& pk = net.copilot_sets[static_cast<std::size_t>(k)];
        for (int m = 0; m < m_count; ++m) {
            double denom = tp.sigma2_ap;
            for (int kp : pk) denom += tp.pilot_energy * net.beta_ground(m, kp);
            const double beta = net.beta_ground(m, k);
            st.c(m, k) = amp * beta / denom;
            st.gamma(m, k) = tp.pilot_energy * beta * beta / denom;
        }
    }

    st.phi.assign(static_cast<std::size_t>(net.tau_p), {});
    for (int t = 0; t < net.tau_p; ++t) {
        arma::cx_mat a = tp.sigma2_sat * arma::eye<arma::cx_mat>(n, n);
        for (int k = 0; k < k_count; ++k)
            if (net.pilot_class(k) == t) a += tp.pilot_energy * net.R_sat[static_cast<std::size_t>(k)];
        st.phi[static_cast<std::size_t>(t)] = hpd_inverse(a);
    }

    complete_statistics(st, net);
    return st;
}

void complete_statistics(EstimationStatistics& st, const NetworkRealization& net) {
    const int k_count = net.k();
    const double amp = std::sqrt(st.pilot_energy);
    st.q_sat.assign(static_cast<std::size_t>(k_count), {});
    st.c_err.assign(static_cast<std::size_t>(k_count), {});
    st.filter.assign(static_cast<std::size_t>(k_count), {});
    st.y_bar.assign(static_cast<std::size_t>(k_count), {});
    for (int k = 0; k < k_count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const arma::cx_mat& r = net.R_sat[idx];
        const arma::cx_mat r_phi = r * st.phi_of(net, k);
        st.q_sat[idx] = hermitian_part(st.pilot_energy * r_phi * r);
        st.c_err[idx] = hermitian_part(r - st.q_sat[idx]);
        st.filter[idx] = amp * r_phi;
        arma::cx_vec yb(net.n(), arma::fill::zeros);
        for (int kp : net.copilot_sets[idx]) yb += net.g_bar_sat[static_cast<std::size_t>(kp)];
        st.y_bar[idx] = amp * yb;
    }
}

ChannelSampler::ChannelSampler(const NetworkRealization& net) : net_(net), beta_sqrt_(arma::sqrt(net.beta_ground)) {
    for (const auto& r : net.R_sat) r_sqrt_.push_back(psd_sqrt(r));
}

void ChannelSampler::draw(ChannelSample& out, Rng& rng) const {
    ComplexNormal cn;
    const int m_count = net_.m();
    const int k_count = net_.k();
    const int n = net_.n();
    out.g_ground.set_size(m_count, k_count);
    for (int k = 0; k < k_count; ++k)
        for (int m = 0; m < m_count; ++m) out.g_ground(m, k) = beta_sqrt_(m, k) * cn(rng);
    out.g_sat.resize(static_cast<std::size_t>(k_count));
    arma::cx_vec w(n);
    for (int k = 0; k < k_count; ++k) {
        for (int i = 0; i < n; ++i) w(i) = cn(rng);
        const auto idx = static_cast<std::size_t>(k);
        out.g_sat[idx] = net_.g_bar_sat[idx] + r_sqrt_[idx] * w;
    }
}

ChannelSample ChannelSampler::draw(Rng& rng) const {
    ChannelSample s;
    draw(s, rng);
    return s;
}

ChannelSample sample_channels(const NetworkRealization& net, Rng& rng) { return ChannelSampler(net).draw(rng); }

void simulate_pilot_training(const ChannelSample& sample, const NetworkRealization& net, const TrainingParams& tp,
                             Rng& rng, PilotProjections& out) {
    ComplexNormal cn;
    const int m_count = net.m();
    const int k_count = net.k();
    const int n = net.n();
    const double amp = std::sqrt(tp.pilot_energy);
    const double sa = std::sqrt(tp.sigma2_ap);
    const double ss = std::sqrt(tp.sigma2_sat);
    const int classes = std::min(net.tau_p, k_count);  // round-robin leaves the rest empty

    // Received projection per pilot class, then copied to each member.
    arma::cx_mat yg(m_count, classes, arma::fill::zeros);
    std::vector<arma::cx_vec> ys(static_cast<std::size_t>(classes), arma::cx_vec(n, arma::fill::zeros));
    for (int k = 0; k < k_count; ++k) {
        const int t = net.pilot_class(k);
        yg.col(t) += amp * sample.g_ground.col(k);
        ys[static_cast<std::size_t>(t)] += amp * sample.g_sat[static_cast<std::size_t>(k)];
    }
    for (int t = 0; t < classes; ++t) {
        for (int m = 0; m < m_count; ++m) yg(m, t) += sa * cn(rng);
        auto& y = ys[static_cast<std::size_t>(t)];
        for (int i = 0; i < n; ++i) y(i) += ss * cn(rng);
    }

    out.y_ground.set_size(m_count, k_count);
    out.y_sat.resize(static_cast<std::size_t>(k_count));
    for (int k = 0; k < k_count; ++k) {
        const int t = net.pilot_class(k);
        out.y_ground.col(k) = yg.col(t);
        out.y_sat[static_cast<std::size_t>(k)] = ys[static_cast<std::size_t>(t)];
    }
}

PilotProjections simulate_pilot_training(const ChannelSample& sample, const NetworkRealization& net,
                                         const SystemConfig& cfg, Rng& rng) {
    PilotProjections p;
    simulate_pilot_training(sample, net, training_params(cfg, net.tau_p), rng, p);
    return p;
}

void mmse_estimate(const PilotProjections& proj, const EstimationStatistics& stats, const NetworkRealization& net,
                   ChannelEstimates& out) {
    const int k_count = net.k();
    out.ghat_ground = stats.c % proj.y_ground;
    out.ghat_sat.resize(static_cast<std::size_t>(k_count));
    for (int k = 0; k < k_count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        out.ghat_sat[idx] = net.g_bar_sat[idx] + stats.filter[idx] * (proj.y_sat[idx] - stats.y_bar[idx]);
    }
}

ChannelEstimates mmse_estimate(const PilotProjections& proj, const EstimationStatistics& stats,
                               const NetworkRealization& net) {
    ChannelEstimates e;
    mmse_estimate(proj, stats, net, e);
    return e;
}

}  // namespace orbitcf
