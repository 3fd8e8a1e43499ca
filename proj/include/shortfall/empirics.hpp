// empirics.hpp
//
// Sample statistics, empirical tail probabilities, histogramming,
// Gaussian / Student-t fitting, and Kolmogorov-Smirnov testing over
// simulated cost samples.

#pragma once

#include <iosfwd>
#include <span>

#include "shortfall/stochastic.hpp"

namespace shortfall {

/// First four sample moments. `std` is the unbiased standard deviation;
/// skewness and kurtosis are the standardized population moments, kurtosis
/// non-excess (Gaussian = 3).
struct MomentReport {
    double mean{0.0};
    double std{0.0};
    double skewness{0.0};
    double kurtosis{0.0};
    std::size_t count{0};
};

/// A fitted distribution with its attained log-likelihood.
struct FitResult {
    DistributionSpec dist;
    double log_likelihood{0.0};
    bool converged{false};
};

struct KsReport {
    double statistic{0.0};
    double p_value{1.0};
    bool rejected_at_1pct{false};
};

struct Histogram {
    std::vector<double> edges;        // size counts.size() + 1
    std::vector<std::size_t> counts;  // sum equals the sample size
};

/// Histogram bin rule. The default is Freedman-Diaconis
/// (width = 2 * IQR * n^(-1/3)).
struct BinRule {
    enum class Kind { FreedmanDiaconis, FixedWidth, FixedCount };
    Kind kind{Kind::FreedmanDiaconis};
    double width{1.0};  // FixedWidth: bins anchored at multiples of the width
    int count{10};      // FixedCount

    static BinRule freedman_diaconis() { return BinRule{}; }
    static BinRule fixed_width(double width);
    static BinRule fixed_count(int count);
};

/// Requires at least 4 observations.
MomentReport moments(std::span<const double> sample);

/// Empirical CDF at c_tilde: fraction of entries <= c_tilde.
double tail_probability(std::span<const double> sample, double c_tilde);

/// Fraction with |c| <= |c_tilde| and its complement (both tails). The two
/// sum to one up to entries lying exactly on the boundary.
double body_probability(std::span<const double> sample, double c_tilde);
double two_tail_probability(std::span<const double> sample, double c_tilde);

Histogram histogram(std::span<const double> sample, const BinRule& rule = BinRule{});

/// Closed-form Gaussian fit (sample mean and unbiased standard deviation);
/// a constant sample is a degenerate input and throws.
FitResult fit_gaussian(std::span<const double> sample);

/// Student-t maximum likelihood over (mu, sigma, nu), nu continuous, by
/// Nelder-Mead initialized from moment matching. Non-convergence returns
/// the best point found with converged = false. Requires >= 50 observations.
FitResult fit_student_t(std::span<const double> sample);

/// One-sample two-sided KS test of the sample against `dist`; p-value from
/// the asymptotic Kolmogorov series at sqrt(n) * D. Requires >= 35
/// observations.
KsReport ks_test(std::span<const double> sample, const DistributionSpec& dist);

/// Smallest root of cdf_a - cdf_b inside [lo, hi], located by bisection to
/// 1e-10. The CDFs must differ in sign at the bracket ends.
double cdf_intersection(const DistributionSpec& a, const DistributionSpec& b, double lo,
                        double hi);

/// CSV serialization: histogram as `bin_left,bin_right,count` rows, moments
/// as `name,value` rows.
void write_histogram_csv(std::ostream& out, const Histogram& hist);
void write_moments_csv(std::ostream& out, const MomentReport& report);

}  // namespace shortfall
