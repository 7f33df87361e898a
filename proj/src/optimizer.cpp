#include "orbitcf/optimizer.hpp"

#include <cmath>
#include <random>
#include <string>
#include <tuple>

#include "orbitcf/errors.hpp"
#include "orbitcf/linalg.hpp"

namespace orbitcf {

namespace {

void check_finite(const arma::vec& x, const char* what, int iteration) {
    if (!x.is_finite())
        throw NumericalError(std::string("ao_solve: non-finite ") + what + " at iteration " + std::to_string(iteration));
}

}  // namespace

RateParams rate_params(const SystemConfig& cfg, const NetworkRealization& net) {
    return {cfg.b_hz, net.tau_p, cfg.tau_c};
}

arma::vec compute_delta(const SinrCoefficients& coeffs, const arma::vec& rho_tilde) {
    return coeffs.interference() * arma::square(rho_tilde) + coeffs.noise;
}

arma::vec mse(const SinrCoefficients& coeffs, const arma::vec& rho_tilde, const arma::vec& v) {
    const arma::vec delta = compute_delta(coeffs, rho_tilde);
    return arma::square(rho_tilde % v % coeffs.signal - 1.0) + arma::square(v) % delta;
}

double surrogate_objective(const SinrCoefficients& coeffs, const arma::vec& rho_tilde, const arma::vec& v,
                           const arma::vec& alpha) {
    const arma::vec e = mse(coeffs, rho_tilde, v);
    return arma::accu(alpha % e - arma::log(alpha));
}

arma::vec update_v(const AOState& state, const SinrCoefficients& coeffs) {
    const arma::vec delta = compute_delta(coeffs, state.rho_tilde);
    const arma::vec ra = state.rho_tilde % coeffs.signal;
    return ra / (arma::square(ra) + delta);
}

arma::vec update_alpha(const arma::vec& e) {
    for (double x : e)
        if (!(x > 0.0)) throw NumericalError("update_alpha: mean-square error must be > 0");
    return 1.0 / e;
}

arma::vec update_rho(const AOState& state, const SinrCoefficients& coeffs, const arma::vec& p_max) {
    const arma::vec& v = state.v;
    const arma::vec& alpha = state.alpha;
    const arma::vec& a = coeffs.signal;
    // Column k of I^T (alpha v^2) collects sum_k'' alpha_k'' v_k''^2 I(k'', k).
    const arma::vec cross = coeffs.interference().t() * (alpha % arma::square(v));
    arma::vec out(v.n_elem);
    for (arma::uword k = 0; k < v.n_elem; ++k) {
        const double num = alpha(k) * v(k) * a(k);
        if (num == 0.0) {
            out(k) = 0.0;
            continue;
        }
        const double t = alpha(k) * v(k) * v(k) * a(k) * a(k) + cross(k);
        if (!(t > 0.0)) throw NumericalError("update_rho: t_k must be > 0");
        out(k) = std::min(num / t, std::sqrt(p_max(k)));
    }
    return out;
}

std::pair<std::vector<int>, std::vector<int>> extract_schedule(const arma::vec& rho, const arma::vec& p_max,
                                                               double threshold_frac) {
    std::vector<int> on;
    std::vector<int> off;
    for (arma::uword k = 0; k < rho.n_elem; ++k) {
        if (rho(k) > threshold_frac * p_max(k))
            on.push_back(static_cast<int>(k));
        else
            off.push_back(static_cast<int>(k));
    }
    return {on, off};
}

PowerSolution make_solution(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& rho,
                            const arma::vec& p_max, double schedule_threshold) {
    PowerSolution s;
    s.rho = rho;
    std::tie(s.scheduled, s.unscheduled) = extract_schedule(rho, p_max, schedule_threshold);
    s.final_sum_mbps = sum_rate_mbps(coeffs, rho, rate.b_hz, rate.tau_p, rate.tau_c);
    return s;
}

AoResult ao_solve(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                  const arma::vec& init_rho, double epsilon_mbps, int max_iter, double schedule_threshold) {
    const arma::uword k_count = coeffs.signal.n_elem;
    if (init_rho.n_elem != k_count || p_max.n_elem != k_count) throw InputError("ao_solve: vector length mismatch");
    for (arma::uword k = 0; k < k_count; ++k)
        if (!(init_rho(k) >= 0.0 && init_rho(k) <= p_max(k)))
            throw InputError("ao_solve: initial power of user " + std::to_string(k) + " outside [0, P_max]");
    if (!(epsilon_mbps > 0.0)) throw InputError("ao_solve: epsilon must be > 0");
    if (max_iter < 1) throw InputError("ao_solve: max_iter must be >= 1");

    AoResult res;
    AOState& st = res.state;
    st.rho_tilde = arma::sqrt(init_rho);
    st.v.zeros(k_count);
    st.alpha.ones(k_count);
    st.delta = compute_delta(coeffs, st.rho_tilde);
    double prev = sum_rate_mbps(coeffs, init_rho, rate.b_hz, rate.tau_p, rate.tau_c);
    st.sum_rate_trace.push_back(prev);

    bool converged = false;
    for (int n = 1; n <= max_iter; ++n) {
        st.iteration = n;
        st.v = update_v(st, coeffs);
        check_finite(st.v, "v", n);
        st.alpha = update_alpha(mse(coeffs, st.rho_tilde, st.v));
        check_finite(st.alpha, "alpha", n);
        st.rho_tilde = update_rho(st, coeffs, p_max);
        check_finite(st.rho_tilde, "rho", n);
        st.delta = compute_delta(coeffs, st.rho_tilde);

        st.objective_trace.push_back(surrogate_objective(coeffs, st.rho_tilde, st.v, st.alpha));
        const double now = sum_rate_mbps(coeffs, arma::square(st.rho_tilde), rate.b_hz, rate.tau_p, rate.tau_c);
        st.sum_rate_trace.push_back(now);
        if (std::abs(now - prev) <= epsilon_mbps) {
            converged = true;
            break;
        }
        prev = now;
    }

    // Users on the power cap get P_max itself; squaring its square root can be off by an ulp.
    arma::vec rho = arma::square(st.rho_tilde);
    for (arma::uword k = 0; k < k_count; ++k)
        if (st.rho_tilde(k) == std::sqrt(p_max(k))) rho(k) = p_max(k);
    res.solution = make_solution(coeffs, rate, rho, p_max, schedule_threshold);
    res.solution.iterations_used = st.iteration;
    res.solution.converged = converged;
    return res;
}

AoResult ao_solve(const EstimationStatistics& stats, const NetworkRealization& net, const SystemConfig& cfg,
                  const arma::vec& init_rho) {
    const SinrCoefficients coeffs = sinr_coefficients(stats, net, LinkMode::both);
    const arma::vec p_max(cfg.p_max_vector());
    return ao_solve(coeffs, rate_params(cfg, net), p_max, init_rho, cfg.ao.epsilon_mbps, cfg.ao.max_iter,
                    cfg.ao.schedule_threshold);
}

PowerSolution baseline_full_power(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max) {
    return make_solution(coeffs, rate, p_max, p_max, 0.0);
}

arma::vec random_powers(const arma::vec& p_max, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    arma::vec rho(p_max.n_elem);
    for (arma::uword k = 0; k < p_max.n_elem; ++k) rho(k) = u(rng) * p_max(k);
    return rho;
}

PowerSolution baseline_random_power(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                                    std::uint64_t seed) {
    PowerSolution s = make_solution(coeffs, rate, random_powers(p_max, seed), p_max, 0.0);
    // Every user transmits under this baseline.
    s.unscheduled.clear();
    s.scheduled.clear();
    for (arma::uword k = 0; k < p_max.n_elem; ++k) s.scheduled.push_back(static_cast<int>(k));
    return s;
}

GridResult grid_search_oracle(const SinrCoefficients& coeffs, const RateParams& rate, const arma::vec& p_max,
                              int grid_points) {
    const int k_count = coeffs.k();
    if (k_count > 3) throw InputError("grid_search_oracle: refusing K > 3");
    if (grid_points < 2) throw InputError("grid_search_oracle: need at least 2 grid points");
    GridResult best;
    best.sum_mbps = -1.0;
    std::vector<int> idx(static_cast<std::size_t>(k_count), 0);
    arma::vec rho(k_count);
    while (true) {
        for (int k = 0; k < k_count; ++k)
            rho(k) = p_max(k) * static_cast<double>(idx[static_cast<std::size_t>(k)]) / (grid_points - 1);
        const double r = sum_rate_mbps(coeffs, rho, rate.b_hz, rate.tau_p, rate.tau_c);
        if (r > best.sum_mbps) {
            best.sum_mbps = r;
            best.rho = rho;
        }
        int k = 0;
        while (k < k_count && ++idx[static_cast<std::size_t>(k)] == grid_points) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == k_count) break;
    }
    return best;
}

}  // namespace orbitcf
