#include <array>
#include <cmath>

#include "orbitcf/errors.hpp"
#include "orbitcf/parallel.hpp"
#include "orbitcf/throughput.hpp"

namespace orbitcf {

namespace {

constexpr std::int64_t kBlockTrials = 1000;
constexpr std::uint64_t kMonteCarloStream = 0x3C0;
constexpr std::array<LinkMode, 3> kModes{LinkMode::both, LinkMode::ground, LinkMode::space};

// Running moments of one block (or a merge of blocks) for a single link mode.
struct ModeMoments {
    arma::cx_vec mean_self;  // mean of z_kk
    arma::vec m2_self;       // sum of |z_kk - mean|^2
    arma::mat sum_abs2;      // sum of |z_kk'|^2
    arma::vec sum_noise;     // sum of combined-noise power
};

struct BlockMoments {
    double n = 0.0;
    std::array<ModeMoments, 3> modes;
};

BlockMoments merge(const BlockMoments& a, const BlockMoments& b) {
    BlockMoments out;
    out.n = a.n + b.n;
    for (std::size_t i = 0; i < kModes.size(); ++i) {
        const ModeMoments& x = a.modes[i];
        const ModeMoments& y = b.modes[i];
        ModeMoments& z = out.modes[i];
        const arma::cx_vec delta = y.mean_self - x.mean_self;
        z.mean_self = x.mean_self + delta * (b.n / out.n);
        z.m2_self = x.m2_self + y.m2_self + arma::square(arma::abs(delta)) * (a.n * b.n / out.n);
        z.sum_abs2 = x.sum_abs2 + y.sum_abs2;
        z.sum_noise = x.sum_noise + y.sum_noise;
    }
    return out;
}

BlockMoments run_block(const NetworkRealization& net, const EstimationStatistics& stats, const ChannelSampler& sampler,
                       std::int64_t trials, std::uint64_t seed) {
    const int k_count = net.k();
    const int m_count = net.m();
    const int n = net.n();
    const TrainingParams tp{stats.pilot_energy, stats.sigma2_ap, stats.sigma2_sat};
    const double sa = std::sqrt(stats.sigma2_ap);
    const double ss = std::sqrt(stats.sigma2_sat);

    Rng rng(seed);
    ComplexNormal cn;
    ChannelSample sample;
    PilotProjections proj;
    ChannelEstimates est;
    arma::cx_vec w_sat(n);
    arma::cx_vec w_gnd(m_count);

    BlockMoments out;
    out.n = static_cast<double>(trials);
    std::array<arma::cx_mat, 3> self;  // z_kk per trial, K x trials
    for (std::size_t i = 0; i < kModes.size(); ++i) {
        self[i].set_size(k_count, trials);
        out.modes[i].sum_abs2.zeros(k_count, k_count);
        out.modes[i].sum_noise.zeros(k_count);
    }
    arma::cx_mat zs(k_count, k_count);

    for (std::int64_t t = 0; t < trials; ++t) {
        sampler.draw(sample, rng);
        simulate_pilot_training(sample, net, tp, rng, proj);
        mmse_estimate(proj, stats, net, est);
        for (int i = 0; i < n; ++i) w_sat(i) = ss * cn(rng);
        for (int m = 0; m < m_count; ++m) w_gnd(m) = sa * cn(rng);

        const arma::cx_mat zg = est.ghat_ground.t() * sample.g_ground;
        for (int k = 0; k < k_count; ++k)
            for (int kp = 0; kp < k_count; ++kp)
                zs(k, kp) = arma::cdot(est.ghat_sat[static_cast<std::size_t>(k)], sample.g_sat[static_cast<std::size_t>(kp)]);

        for (int k = 0; k < k_count; ++k) {
            const double noise_sat = std::norm(arma::cdot(est.ghat_sat[static_cast<std::size_t>(k)], w_sat));
            const double noise_gnd = std::norm(arma::cdot(est.ghat_ground.col(k), w_gnd));
            out.modes[0].sum_noise(k) += noise_sat + noise_gnd;
            out.modes[1].sum_noise(k) += noise_gnd;
            out.modes[2].sum_noise(k) += noise_sat;
            for (int kp = 0; kp < k_count; ++kp) {
                const cx s = zs(k, kp);
                const cx g = zg(k, kp);
                out.modes[0].sum_abs2(k, kp) += std::norm(s + g);
                out.modes[1].sum_abs2(k, kp) += std::norm(g);
                out.modes[2].sum_abs2(k, kp) += std::norm(s);
            }
            self[0](k, t) = zs(k, k) + zg(k, k);
            self[1](k, t) = zg(k, k);
            self[2](k, t) = zs(k, k);
        }
    }

    for (std::size_t i = 0; i < kModes.size(); ++i) {
        ModeMoments& mm = out.modes[i];
        mm.mean_self = arma::mean(self[i], 1);
        const arma::cx_mat centred = self[i].each_col() - mm.mean_self;
        mm.m2_self = arma::sum(arma::square(arma::abs(centred)), 1);
    }
    return out;
}

arma::vec finish(const ModeMoments& mm, double n, const arma::vec& rho) {
    const int k_count = static_cast<int>(rho.n_elem);
    arma::vec sinr(k_count, arma::fill::zeros);
    for (int k = 0; k < k_count; ++k) {
        if (rho(k) <= 0.0) continue;
        const double var = n > 1.0 ? mm.m2_self(k) / (n - 1.0) : 0.0;
        // Bias-corrected |E z_kk|^2.
        const double signal = std::norm(mm.mean_self(k)) - var / n;
        double denom = rho(k) * var + mm.sum_noise(k) / n;
        for (int kp = 0; kp < k_count; ++kp)
            if (kp != k && rho(kp) > 0.0) denom += rho(kp) * mm.sum_abs2(k, kp) / n;
        sinr(k) = signal > 0.0 ? rho(k) * signal / denom : 0.0;
    }
    return sinr;
}

}  // namespace

const arma::vec& MonteCarloSinr::operator[](LinkMode mode) const {
    switch (mode) {
        case LinkMode::both: return both;
        case LinkMode::ground: return ground;
        case LinkMode::space: return space;
    }
    return both;
}

MonteCarloSinr monte_carlo_sinr_all(const NetworkRealization& net, const EstimationStatistics& stats,
                                    const arma::vec& rho, std::int64_t trials, std::uint64_t seed, int workers) {
    if (trials < 1) throw InputError("monte_carlo_sinr: trials must be >= 1");
    if (static_cast<int>(rho.n_elem) != net.k()) throw InputError("monte_carlo_sinr: power vector has wrong length");
    const ChannelSampler sampler(net);
    const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<BlockMoments> parts(static_cast<std::size_t>(blocks));
    parallel_for(parts.size(), workers, [&](std::size_t b) {
        const std::int64_t begin = static_cast<std::int64_t>(b) * kBlockTrials;
        const std::int64_t len = std::min(kBlockTrials, trials - begin);
        parts[b] = run_block(net, stats, sampler, len, derive_seed(derive_seed(seed, kMonteCarloStream), b));
    });
    const BlockMoments total = pairwise_reduce(std::move(parts), merge);
    return {finish(total.modes[0], total.n, rho), finish(total.modes[1], total.n, rho),
            finish(total.modes[2], total.n, rho)};
}

arma::vec monte_carlo_sinr(const NetworkRealization& net, const EstimationStatistics& stats, const arma::vec& rho,
                           std::int64_t trials, std::uint64_t seed, LinkMode link_mask, int workers) {
    return monte_carlo_sinr_all(net, stats, rho, trials, seed, workers)[link_mask];
}

}  // namespace orbitcf
