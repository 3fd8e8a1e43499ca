#include "shortfall/core.hpp"

#include <cmath>
#include <sstream>
#include <thread>

namespace shortfall {

namespace {

bool finite(double x) { return std::isfinite(x); }

constexpr double kHorizonRelTol = 1e-12;
constexpr double kSumRelTol = 1e-9;

}  // namespace

OrderSpec OrderSpec::make(Side side, double total_shares, double horizon, int intervals) {
    OrderSpec order;
    order.side = side;
    order.total_shares = total_shares;
    order.horizon = horizon;
    order.intervals = intervals;
    order.dt = intervals > 0 ? horizon / intervals : 0.0;
    order.check();
    return order;
}

void OrderSpec::check() const {
    if (!finite(total_shares) || total_shares <= 0.0)
        throw ValidationError("order: total_shares must be positive and finite");
    if (!finite(horizon) || horizon <= 0.0)
        throw ValidationError("order: horizon must be positive and finite");
    if (intervals < 1) throw ValidationError("order: intervals must be >= 1");
    if (!finite(dt) || dt <= 0.0) throw ValidationError("order: dt must be positive and finite");
    if (std::abs(intervals * dt - horizon) > kHorizonRelTol * horizon)
        throw ValidationError("order: intervals * dt must equal horizon");
}

void MarketParams::check() const {
    for (double v : {p0, sigma, gamma, eta, epsilon, rho})
        if (!finite(v)) throw ValidationError("market params: non-finite value");
    if (p0 <= 0.0) throw ValidationError("market params: p0 must be positive");
    if (sigma < 0.0) throw ValidationError("market params: sigma must be nonnegative");
    if (epsilon < 0.0) throw ValidationError("market params: epsilon must be nonnegative");
    if (rho < 0.0) throw ValidationError("market params: rho must be nonnegative");
}

const char* to_string(UtilityKind kind) {
    switch (kind) {
        case UtilityKind::AcAnalytic: return "ac_analytic";
        case UtilityKind::AcNumeric: return "ac_numeric";
        case UtilityKind::Dm: return "dm";
        case UtilityKind::TwoTail: return "two_tail";
        case UtilityKind::Body: return "body";
    }
    return "?";
}

void UtilitySpec::check() const {
    if (!finite(lambda) || lambda < 0.0 || lambda > 1.0)
        throw ValidationError("utility: lambda must lie in [0, 1]");
    if (kind != UtilityKind::AcAnalytic && kind != UtilityKind::AcNumeric && !finite(c_tilde))
        throw ValidationError("utility: c_tilde must be finite");
}

const char* to_string(Dynamics d) {
    return d == Dynamics::ArithmeticAC ? "arithmetic_ac" : "geometric_propagator";
}

const char* to_string(ImpactKind k) {
    switch (k) {
        case ImpactKind::AcLinear: return "ac_linear";
        case ImpactKind::LinExp: return "lin_exp";
        case ImpactKind::LinPow: return "lin_pow";
        case ImpactKind::Sqrt: return "sqrt";
    }
    return "?";
}

ReturnsSpec ReturnsSpec::student_t(int nu, double scale) {
    if (nu < 3) throw ValidationError("returns: StudentT requires nu >= 3");
    if (!finite(scale) || scale <= 0.0)
        throw ValidationError("returns: StudentT scale must be positive");
    ReturnsSpec r;
    r.kind = Kind::StudentT;
    r.nu = nu;
    r.scale = scale;
    return r;
}

void ScenarioSpec::check() const {
    params.check();
    if (dynamics == Dynamics::ArithmeticAC && impact != ImpactKind::AcLinear)
        throw ValidationError("scenario: arithmetic dynamics pair only with the linear AC impact");
    if (dynamics == Dynamics::GeometricPropagator && impact == ImpactKind::AcLinear)
        throw ValidationError("scenario: geometric dynamics require a propagator impact kind");
    if (returns.kind == ReturnsSpec::Kind::StudentT) {
        if (returns.nu < 3) throw ValidationError("scenario: StudentT returns require nu >= 3");
        if (!finite(returns.scale) || returns.scale <= 0.0)
            throw ValidationError("scenario: StudentT scale must be positive");
    }
}

std::string ScenarioSpec::fingerprint() const {
    std::ostringstream out;
    out << to_string(dynamics) << '|' << to_string(impact) << '|';
    if (returns.kind == ReturnsSpec::Kind::Gaussian)
        out << "gaussian";
    else
        out << "student_t(nu=" << returns.nu << ",scale=" << returns.scale << ')';
    out << "|p0=" << params.p0 << ",sigma=" << params.sigma << ",gamma=" << params.gamma
        << ",eta=" << params.eta << ",epsilon=" << params.epsilon << ",rho=" << params.rho;
    return out.str();
}

std::vector<double> remaining_shares(const ExecutionStrategy& strategy, double total_shares) {
    if (strategy.shares.empty()) throw ValidationError("strategy: empty share vector");
    double sum = 0.0;
    for (double n : strategy.shares) {
        if (!finite(n) || n < 0.0)
            throw ValidationError("strategy: allocations must be nonnegative and finite");
        sum += n;
    }
    if (std::abs(sum - total_shares) > kSumRelTol * total_shares)
        throw ValidationError("strategy: allocations do not sum to the order size");

    std::vector<double> remaining(strategy.shares.size());
    double executed = 0.0;
    for (std::size_t k = 0; k < strategy.shares.size(); ++k) {
        executed += strategy.shares[k];
        remaining[k] = total_shares - executed;
    }
    remaining.back() = 0.0;  // x_K is identically zero for a valid strategy
    return remaining;
}

ExecutionStrategy twap_strategy(const OrderSpec& order) {
    order.check();
    ExecutionStrategy s;
    s.shares.assign(static_cast<std::size_t>(order.intervals),
                    order.total_shares / order.intervals);
    return s;
}

std::vector<std::string> validate(const OrderSpec& order, const ExecutionStrategy& strategy,
                                  const ScenarioSpec& scenario) {
    std::vector<std::string> errors;
    auto collect = [&errors](const auto& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            errors.emplace_back(e.what());
        }
    };
    collect([&] { order.check(); });
    collect([&] { scenario.check(); });

    if (strategy.shares.size() != static_cast<std::size_t>(order.intervals))
        errors.push_back("strategy: expected " + std::to_string(order.intervals) +
                         " allocations, got " + std::to_string(strategy.shares.size()));

    double sum = 0.0;
    bool numeric_ok = true;
    for (std::size_t k = 0; k < strategy.shares.size(); ++k) {
        double n = strategy.shares[k];
        if (!finite(n)) {
            errors.push_back("strategy: non-finite allocation at interval " + std::to_string(k + 1));
            numeric_ok = false;
            continue;
        }
        if (n < 0.0) {
            errors.push_back("strategy: negative allocation at interval " + std::to_string(k + 1));
            numeric_ok = false;
        }
        sum += n;
    }
    if (numeric_ok && !strategy.shares.empty()) {
        double gap = sum - order.total_shares;
        if (gap > kSumRelTol * order.total_shares)
            errors.push_back("strategy: allocation sum exceeds the order size");
        else if (gap < -kSumRelTol * order.total_shares)
            errors.push_back("strategy: allocation sum falls short of the order size");
    }
    return errors;
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, count));
    if (n <= 1) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::size_t chunk = (count + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace shortfall
