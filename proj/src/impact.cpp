#include "shortfall/impact.hpp"

#include <cmath>

namespace shortfall {

double perm_impact(const MarketParams& params, Side side, double trading_rate) {
    return side_sign(side) * params.gamma * trading_rate;
}

double temp_impact(const MarketParams& params, Side side, double trading_rate) {
    return side_sign(side) * (params.epsilon + params.eta * trading_rate);
}

double propagator_impact(ImpactKind kind, const MarketParams& params, Side side, double shares,
                         int interval, double dt) {
    if (shares < 0.0) throw ValidationError("propagator_impact: shares must be nonnegative");
    if (interval < 1) throw ValidationError("propagator_impact: interval index starts at 1");
    double sign = side_sign(side);
    switch (kind) {
        case ImpactKind::LinExp:
            return -sign * params.gamma * shares * std::exp(-params.rho * interval * dt);
        case ImpactKind::LinPow: {
            double t = interval * dt;
            if (t <= 0.0)
                throw std::domain_error("propagator_impact: LinPow requires k * dt > 0");
            return -sign * params.gamma * shares * std::pow(t, -params.rho);
        }
        case ImpactKind::Sqrt:
            return -sign * params.gamma * std::sqrt(shares);
        case ImpactKind::AcLinear:
            break;
    }
    throw ValidationError("propagator_impact: AcLinear is not a propagator kind");
}

PricePath simulate_path_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                           const MarketParams& params, std::span<const double> noise) {
    const std::size_t intervals = strategy.shares.size();
    if (noise.size() != intervals)
        throw ValidationError("simulate_path_ac: noise length must equal the interval count");

    PricePath path;
    path.noise.assign(noise.begin(), noise.end());
    path.prices.resize(intervals);

    const double vol_step = params.sigma * std::sqrt(order.dt);
    double drift = 0.0;  // accumulated noise and permanent impact of intervals before k
    for (std::size_t k = 0; k < intervals; ++k) {
        double rate = strategy.shares[k] / order.dt;
        path.prices[k] = params.p0 + drift - temp_impact(params, order.side, rate);
        drift += vol_step * noise[k] - order.dt * perm_impact(params, order.side, rate);
    }
    return path;
}

PricePath simulate_path_geometric(const OrderSpec& order, const ExecutionStrategy& strategy,
                                  const ScenarioSpec& scenario, std::span<const double> noise) {
    const std::size_t intervals = strategy.shares.size();
    if (noise.size() != intervals)
        throw ValidationError("simulate_path_geometric: noise length must equal the interval count");
    if (scenario.impact == ImpactKind::AcLinear)
        throw ValidationError("simulate_path_geometric: requires a propagator impact kind");

    PricePath path;
    path.noise.assign(noise.begin(), noise.end());
    path.prices.resize(intervals);

    const MarketParams& p = scenario.params;
    const double vol_step = p.sigma * std::sqrt(order.dt);
    double price = p.p0;
    for (std::size_t k = 0; k < intervals; ++k) {
        double impact = propagator_impact(scenario.impact, p, order.side, strategy.shares[k],
                                          static_cast<int>(k) + 1, order.dt);
        double factor = 1.0 + impact + vol_step * noise[k];
        if (factor <= 0.0) path.degenerate = true;
        price *= factor;
        path.prices[k] = price;
    }
    return path;
}

}  // namespace shortfall
