#include "orbitcf/stats.hpp"

#include <algorithm>
#include <cmath>

#include "orbitcf/errors.hpp"

namespace orbitcf {

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) throw InputError("percentile: no samples");
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("percentile: q must be in [0, 1]");
    std::sort(samples.begin(), samples.end());
    const double h = (static_cast<double>(samples.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

double mean(const std::vector<double>& samples) {
    if (samples.empty()) throw InputError("mean: no samples");
    // Sorting first makes the sum independent of the input order.
    std::vector<double> s(samples);
    std::sort(s.begin(), s.end());
    double total = 0.0;
    for (double x : s) total += x;
    return total / static_cast<double>(s.size());
}

double median(const std::vector<double>& samples) { return percentile(samples, 0.5); }

double EmpiricalCdf::operator()(double value) const {
    const auto it = std::upper_bound(x.begin(), x.end(), value);
    const auto count = static_cast<std::size_t>(it - x.begin());
    return count == 0 ? 0.0 : p[count - 1];
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) {
    if (samples.empty()) throw InputError("empirical_cdf: no samples");
    std::sort(samples.begin(), samples.end());
    EmpiricalCdf cdf;
    const double n = static_cast<double>(samples.size());
    cdf.p.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) cdf.p[i] = static_cast<double>(i + 1) / n;
    // Ties share the probability of their last occurrence.
    for (std::size_t i = samples.size() - 1; i-- > 0;)
        if (samples[i] == samples[i + 1]) cdf.p[i] = cdf.p[i + 1];
    cdf.x = std::move(samples);
    return cdf;
}

Summary summarize(const std::vector<double>& samples) {
    Summary s;
    s.mean = mean(samples);
    s.median = median(samples);
    s.p5 = percentile(samples, 0.05);
    s.min = *std::min_element(samples.begin(), samples.end());
    s.max = *std::max_element(samples.begin(), samples.end());
    return s;
}

}  // namespace orbitcf
