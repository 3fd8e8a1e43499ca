// core.hpp
//
// Domain types shared across the library: the order being scheduled, the
// market parameters of the impact models, execution strategies on the
// share simplex, utility and scenario descriptors, plus validation and
// basic strategy arithmetic.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shortfall {

/// Thrown when a domain object violates one of its invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Side { Buy, Sell };

/// Sign convention used in every cost formula: -1 for a buy, +1 for a sell.
inline double side_sign(Side side) { return side == Side::Buy ? -1.0 : 1.0; }

inline const char* to_string(Side side) { return side == Side::Buy ? "buy" : "sell"; }

/// The order being scheduled: side, size, horizon and its subdivision into
/// equal trading intervals.
struct OrderSpec {
    Side side{Side::Sell};
    double total_shares{1.0};  // N
    double horizon{1.0};       // T
    int intervals{1};          // K
    double dt{1.0};            // interval length, K * dt == T

    /// Builds an order with dt derived from horizon / intervals.
    static OrderSpec make(Side side, double total_shares, double horizon, int intervals);

    /// Throws ValidationError on any violated invariant.
    void check() const;
};

/// Calibration parameters of the price/impact models. `gamma` is the
/// permanent (or propagator) impact coefficient, `eta` the temporary impact
/// coefficient, `epsilon` a spread-like constant cost, `rho` the decay rate
/// of the propagator kernels.
struct MarketParams {
    double p0{1.0};
    double sigma{1.0};
    double gamma{1.0};
    double eta{1.0};
    double epsilon{0.0};
    double rho{0.5};

    void check() const;
};

/// Shares executed per interval. Valid strategies are nonnegative and sum
/// to the order size.
struct ExecutionStrategy {
    std::vector<double> shares;

    std::size_t intervals() const { return shares.size(); }
};

enum class UtilityKind { AcAnalytic, AcNumeric, Dm, TwoTail, Body };

const char* to_string(UtilityKind kind);

/// Utility selector: mean-variance (analytic or simulated), tail-probability,
/// or the two-tail / body variants. `c_tilde` is ignored by the Ac kinds.
struct UtilitySpec {
    UtilityKind kind{UtilityKind::AcAnalytic};
    double lambda{0.3};
    double c_tilde{-1.0};

    void check() const;
};

enum class Dynamics { ArithmeticAC, GeometricPropagator };
enum class ImpactKind { AcLinear, LinExp, LinPow, Sqrt };

const char* to_string(Dynamics d);
const char* to_string(ImpactKind k);

/// Distribution of the per-interval return innovations.
struct ReturnsSpec {
    enum class Kind { Gaussian, StudentT };
    Kind kind{Kind::Gaussian};
    int nu{5};          // StudentT degrees of freedom, >= 3
    double scale{1.0};  // StudentT scale parameter (not the standard deviation)

    static ReturnsSpec gaussian() { return ReturnsSpec{}; }
    static ReturnsSpec student_t(int nu, double scale);
};

/// A complete market scenario: price dynamics, impact model, return
/// distribution and parameters. Arithmetic dynamics pair only with the
/// linear AC impact; geometric dynamics with the propagator kernels.
struct ScenarioSpec {
    Dynamics dynamics{Dynamics::ArithmeticAC};
    ImpactKind impact{ImpactKind::AcLinear};
    ReturnsSpec returns{};
    MarketParams params{};

    void check() const;
    std::string fingerprint() const;
};

/// Shares not yet executed at the end of each interval:
/// x_k = total - sum of the first k allocations. The last entry must be zero.
std::vector<double> remaining_shares(const ExecutionStrategy& strategy, double total_shares);

/// Uniform schedule: total/K shares in every interval.
ExecutionStrategy twap_strategy(const OrderSpec& order);

/// Collects every invariant violation across order, strategy and scenario
/// into human-readable messages. Empty result means valid. NaN or infinite
/// inputs are reported, never propagated.
std::vector<std::string> validate(const OrderSpec& order, const ExecutionStrategy& strategy,
                                  const ScenarioSpec& scenario);

/// Runs fn(begin, end) over [0, count) split into contiguous chunks, one per
/// worker. Results written by index stay deterministic for any worker count.
/// workers == 0 picks the hardware concurrency.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace shortfall
