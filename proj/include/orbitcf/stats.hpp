#pragma once

#include <vector>

namespace orbitcf {

/// Percentile with linear interpolation between order statistics:
/// position h = (n - 1) q on the sorted samples, q in [0, 1].
double percentile(std::vector<double> samples, double q);

double mean(const std::vector<double>& samples);
double median(const std::vector<double>& samples);

/// Empirical CDF as a right-continuous step function: F(x) = #{s <= x} / n.
struct EmpiricalCdf {
    std::vector<double> x;  ///< sorted samples
    std::vector<double> p;  ///< (i + 1) / n

    double operator()(double value) const;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// Order-independent summary used in reports.
struct Summary {
    double mean = 0.0;
    double median = 0.0;
    double p5 = 0.0;  ///< the "95%-likely" value
    double min = 0.0;
    double max = 0.0;
};

Summary summarize(const std::vector<double>& samples);

}  // namespace orbitcf
