// impact.hpp
//
// Impact functions and price-path simulation for both dynamics families:
// arithmetic dynamics with linear permanent/temporary impact, and geometric
// dynamics driven by a propagator impact kernel.

#pragma once

#include <span>

#include "shortfall/core.hpp"

namespace shortfall {

/// A simulated price path over the order's intervals, together with the
/// noise vector that generated it. Geometric paths that cross zero are
/// flagged degenerate rather than clipped.
struct PricePath {
    std::vector<double> prices;
    std::vector<double> noise;
    bool degenerate{false};
};

/// Permanent impact g(x) = sign * gamma * x of the trading rate x.
double perm_impact(const MarketParams& params, Side side, double trading_rate);

/// Temporary impact h(x) = sign * (epsilon + eta * x) of the trading rate x.
double temp_impact(const MarketParams& params, Side side, double trading_rate);

/// Propagator impact of executing `shares` in interval k (1-based):
///   LinExp: -sign * gamma * shares * exp(-rho * k * dt)
///   LinPow: -sign * gamma * shares * (k * dt)^(-rho)
///   Sqrt:   -sign * gamma * sqrt(shares)
/// LinPow requires k * dt > 0.
double propagator_impact(ImpactKind kind, const MarketParams& params, Side side, double shares,
                         int interval, double dt);

/// Arithmetic price path: each interval's price carries the accumulated
/// noise and permanent impact of all earlier intervals plus the temporary
/// impact of its own execution. Negative prices are legitimate under these
/// dynamics and returned as-is.
PricePath simulate_path_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                           const MarketParams& params, std::span<const double> noise);

/// Geometric price path p_k = p_{k-1} * (1 + impact + sigma*sqrt(dt)*noise_k).
/// A factor <= 0 marks the path degenerate; the path is still returned.
PricePath simulate_path_geometric(const OrderSpec& order, const ExecutionStrategy& strategy,
                                  const ScenarioSpec& scenario, std::span<const double> noise);

}  // namespace shortfall
