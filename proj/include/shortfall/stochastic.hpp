// stochastic.hpp
//
// Random and quasi-random number generation plus the probability densities
// and CDFs used by simulation, fitting and testing.
//
// Streams are counter-based: every draw is a pure function of
// (master_seed, stream_index, counter), so parallel simulations are
// bit-reproducible for any worker count.

#pragma once

#include <cstdint>
#include <vector>

#include "shortfall/core.hpp"

namespace shortfall {

/// A reproducible variate stream. Copying is cheap; each worker owns its
/// substream and no state is shared.
struct SeededStream {
    std::uint64_t master_seed{0};
    std::uint64_t stream_index{0};
    std::uint64_t counter{0};

    /// Uniform draw in [0, 1) (53-bit resolution).
    double next_uniform();
    /// Standard normal draw via Box-Muller (consumes two uniforms).
    double next_normal();
    /// Standard Student-t draw: normal over sqrt(chi-square(nu)/nu).
    double next_student_t(double nu);
};

/// Derives stream `index` of a master seed. Distinct indices give
/// statistically independent sequences.
SeededStream substream(std::uint64_t master_seed, std::uint64_t index);

/// Gaussian or Student-t location/scale family. For the Student-t, `sigma`
/// is the scale parameter of the density, not the standard deviation: the
/// standard deviation is sigma * sqrt(nu / (nu - 2)).
struct DistributionSpec {
    enum class Kind { Gaussian, StudentT };
    Kind kind{Kind::Gaussian};
    double mu{0.0};
    double sigma{1.0};
    double nu{0.0};  // StudentT only

    static DistributionSpec gaussian(double mu, double sigma);
    static DistributionSpec student_t(double mu, double sigma, double nu);

    void check() const;
    /// Standard deviation implied by the parameters.
    double stddev() const;
};

/// `count` i.i.d. draws from `dist`, consuming `stream`.
std::vector<double> sample(const DistributionSpec& dist, std::size_t count, SeededStream stream);

double pdf(const DistributionSpec& dist, double x);
double cdf(const DistributionSpec& dist, double x);

/// First `count` points of the Halton sequence over the first `dim` primes,
/// zero-skipped and unscrambled; row-major count x dim, coordinates in [0,1).
/// Deterministic: the same (dim, count) always returns the same points.
/// dim is limited to 16, mirroring the dimensionality range the candidate
/// sampler supports.
std::vector<double> low_discrepancy_points(int dim, std::size_t count);

/// Regularized incomplete beta function I_x(a, b); exposed because both the
/// Student-t CDF and its tests need it.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace shortfall
