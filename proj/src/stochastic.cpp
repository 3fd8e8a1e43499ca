#include "shortfall/stochastic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace shortfall {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;  // splitmix64 increment

// splitmix64 output function (bijective mix).
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Key of a (master_seed, stream_index) pair. Two mixing rounds decorrelate
// streams whose indices differ in few bits.
std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t a = mix64(master_seed + kGamma);
    std::uint64_t b = mix64(index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    return mix64(a ^ (b + kGamma));
}

}  // namespace

double SeededStream::next_uniform() {
    std::uint64_t key = stream_key(master_seed, stream_index);
    std::uint64_t bits = mix64(key + (++counter) * kGamma);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double SeededStream::next_normal() {
    // Box-Muller; 1 - u1 lies in (0, 1] so the log stays finite.
    double u1 = next_uniform();
    double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SeededStream::next_student_t(double nu) {
    double z = next_normal();
    // chi-square(nu) = 2 * Gamma(nu/2, 1), sampled with Marsaglia-Tsang.
    double alpha = 0.5 * nu;
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    double g;
    for (;;) {
        double x = next_normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = next_uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            g = d * v;
            break;
        }
    }
    double chi_sq = 2.0 * g;
    return z / std::sqrt(chi_sq / nu);
}

SeededStream substream(std::uint64_t master_seed, std::uint64_t index) {
    return SeededStream{master_seed, index, 0};
}

DistributionSpec DistributionSpec::gaussian(double mu, double sigma) {
    DistributionSpec d;
    d.kind = Kind::Gaussian;
    d.mu = mu;
    d.sigma = sigma;
    d.check();
    return d;
}

DistributionSpec DistributionSpec::student_t(double mu, double sigma, double nu) {
    DistributionSpec d;
    d.kind = Kind::StudentT;
    d.mu = mu;
    d.sigma = sigma;
    d.nu = nu;
    d.check();
    return d;
}

void DistributionSpec::check() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0)
        throw ValidationError("distribution: sigma must be positive and parameters finite");
    if (kind == Kind::StudentT && (!std::isfinite(nu) || nu < 3.0))
        throw ValidationError("distribution: StudentT requires nu >= 3");
}

double DistributionSpec::stddev() const {
    if (kind == Kind::Gaussian) return sigma;
    return sigma * std::sqrt(nu / (nu - 2.0));
}

std::vector<double> sample(const DistributionSpec& dist, std::size_t count, SeededStream stream) {
    dist.check();
    if (count == 0) throw ValidationError("sample: count must be >= 1");
    std::vector<double> draws(count);
    if (dist.kind == DistributionSpec::Kind::Gaussian) {
        for (auto& x : draws) x = dist.mu + dist.sigma * stream.next_normal();
    } else {
        for (auto& x : draws) x = dist.mu + dist.sigma * stream.next_student_t(dist.nu);
    }
    return draws;
}

double pdf(const DistributionSpec& dist, double x) {
    double z = (x - dist.mu) / dist.sigma;
    if (dist.kind == DistributionSpec::Kind::Gaussian) {
        return std::exp(-0.5 * z * z) / (dist.sigma * std::sqrt(2.0 * std::numbers::pi));
    }
    double nu = dist.nu;
    double log_norm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                      0.5 * std::log(nu * std::numbers::pi) - std::log(dist.sigma);
    return std::exp(log_norm - 0.5 * (nu + 1.0) * std::log1p(z * z / nu));
}

double cdf(const DistributionSpec& dist, double x) {
    double z = (x - dist.mu) / dist.sigma;
    if (dist.kind == DistributionSpec::Kind::Gaussian)
        return 0.5 * std::erfc(-z / std::numbers::sqrt2);
    double nu = dist.nu;
    double tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, nu / (nu + z * z));
    return z <= 0.0 ? tail : 1.0 - tail;
}

std::vector<double> low_discrepancy_points(int dim, std::size_t count) {
    static constexpr int kPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                        23, 29, 31, 37, 41, 43, 47, 53};
    if (dim < 1 || dim > 16)
        throw ValidationError("low_discrepancy_points: dim must lie in [1, 16]");
    if (count == 0) throw ValidationError("low_discrepancy_points: count must be >= 1");

    std::vector<double> points(count * static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < count; ++i) {
        for (int d = 0; d < dim; ++d) {
            // Radical inverse of index i+1 in base kPrimes[d] (index 0 skipped).
            std::size_t index = i + 1;
            int base = kPrimes[d];
            double digit_value = 1.0;
            double r = 0.0;
            while (index > 0) {
                digit_value /= base;
                r += digit_value * static_cast<double>(index % base);
                index /= static_cast<std::size_t>(base);
            }
            points[i * dim + d] = r;
        }
    }
    return points;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    // Continued fraction (modified Lentz), using the symmetry that keeps the
    // fraction in its fast-converging region.
    auto cont_frac = [](double a, double b, double x) {
        constexpr int kMaxIter = 300;
        constexpr double kEps = std::numeric_limits<double>::epsilon();
        constexpr double kTiny = 1e-300;
        double qab = a + b, qap = a + 1.0, qam = a - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * x / qap;
        if (std::abs(d) < kTiny) d = kTiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= kMaxIter; ++m) {
            double m2 = 2.0 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < kTiny) d = kTiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < kTiny) c = kTiny;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < kTiny) d = kTiny;
            c = 1.0 + aa / c;
            if (std::abs(c) < kTiny) c = kTiny;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < kEps) break;
        }
        return h;
    };

    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * cont_frac(a, b, x) / a;
    return 1.0 - front * cont_frac(b, a, 1.0 - x) / b;
}

}  // namespace shortfall
