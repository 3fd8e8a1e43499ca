#include "shortfall/costs.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

#include "shortfall/impact.hpp"
#include "shortfall/stochastic.hpp"

namespace shortfall {

double MarketTape::total_volume() const {
    double v = 0.0;
    for (const auto& bin : bins) v += bin.volume;
    return v;
}

void MarketTape::check() const {
    if (bins.empty()) throw ValidationError("tape: at least one bin required");
    for (const auto& bin : bins) {
        if (!std::isfinite(bin.price) || !std::isfinite(bin.volume))
            throw ValidationError("tape: non-finite bin entry");
        if (bin.volume < 0.0) throw ValidationError("tape: negative volume");
    }
}

BenchmarkKind benchmark_kind_from_string(const std::string& name) {
    if (name == "twap") return BenchmarkKind::Twap;
    if (name == "vwap") return BenchmarkKind::Vwap;
    if (name == "pwp") return BenchmarkKind::Pwp;
    if (name == "mo") return BenchmarkKind::MarketOpen;
    if (name == "mc") return BenchmarkKind::MarketClose;
    if (name == "is") return BenchmarkKind::Is;
    throw ValidationError("unknown benchmark kind: " + name);
}

const char* to_string(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::Twap: return "twap";
        case BenchmarkKind::Vwap: return "vwap";
        case BenchmarkKind::Pwp: return "pwp";
        case BenchmarkKind::MarketOpen: return "mo";
        case BenchmarkKind::MarketClose: return "mc";
        case BenchmarkKind::Is: return "is";
    }
    return "?";
}

double cost_is(const FillSequence& fills, double p0, Side side, double total_shares) {
    if (total_shares <= 0.0) throw ValidationError("cost_is: total_shares must be positive");
    double notional = 0.0;
    for (const auto& fill : fills.fills) notional += fill.shares * fill.price;
    return side_sign(side) * (notional / total_shares - p0);
}

double cost_ac_closed(const OrderSpec& order, const ExecutionStrategy& strategy,
                      const MarketParams& params, std::span<const double> noise) {
    const std::size_t intervals = strategy.shares.size();
    if (noise.size() != intervals)
        throw ValidationError("cost_ac_closed: noise length must equal the interval count");

    const double vol_step = params.sigma * std::sqrt(order.dt);
    const double total = order.total_shares;
    std::vector<double> remaining = remaining_shares(strategy, total);

    double acc = 0.0;
    for (std::size_t k = 0; k < intervals; ++k) {
        double rate = strategy.shares[k] / order.dt;
        acc += (vol_step * noise[k] - order.dt * perm_impact(params, order.side, rate)) *
               remaining[k];
        acc -= strategy.shares[k] * temp_impact(params, order.side, rate);
    }
    return side_sign(order.side) / total * acc;
}

double cost_geometric(const OrderSpec& order, const ExecutionStrategy& strategy,
                      const ScenarioSpec& scenario, std::span<const double> noise,
                      bool* degenerate) {
    const std::size_t intervals = strategy.shares.size();
    if (noise.size() != intervals)
        throw ValidationError("cost_geometric: noise length must equal the interval count");
    if (scenario.dynamics != Dynamics::GeometricPropagator)
        throw ValidationError("cost_geometric: requires geometric dynamics");

    const MarketParams& p = scenario.params;
    const double vol_step = p.sigma * std::sqrt(order.dt);
    bool crossed_zero = false;
    double cumulative = 1.0;  // running product of the per-interval factors
    double weighted = 0.0;
    for (std::size_t k = 0; k < intervals; ++k) {
        double impact = propagator_impact(scenario.impact, p, order.side, strategy.shares[k],
                                          static_cast<int>(k) + 1, order.dt);
        double factor = 1.0 + impact + vol_step * noise[k];
        if (factor <= 0.0) crossed_zero = true;
        cumulative *= factor;
        weighted += strategy.shares[k] * cumulative;
    }
    if (degenerate) *degenerate = crossed_zero;
    return side_sign(order.side) * p.p0 * (weighted / order.total_shares - 1.0);
}

double expected_cost_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                        const MarketParams& params) {
    const double total = order.total_shares;
    std::vector<double> remaining = remaining_shares(strategy, total);
    double acc = 0.0;
    for (std::size_t k = 0; k < strategy.shares.size(); ++k) {
        double rate = strategy.shares[k] / order.dt;
        acc += remaining[k] * order.dt * perm_impact(params, order.side, rate);
        acc += strategy.shares[k] * temp_impact(params, order.side, rate);
    }
    return -side_sign(order.side) / total * acc;
}

double variance_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                   const MarketParams& params) {
    const double total = order.total_shares;
    std::vector<double> remaining = remaining_shares(strategy, total);
    double sum_sq = 0.0;
    for (double x : remaining) sum_sq += x * x;
    return params.sigma * params.sigma * order.dt / (total * total) * sum_sq;
}

namespace {

// PWP fills total_shares at `rate` of market volume, bin by bin from the
// start of the tape, clipping the last bin so the weights sum to the order.
std::vector<double> pwp_weights(const MarketTape& tape, double rate, double total_shares) {
    if (rate <= 0.0 || rate > 1.0)
        throw ValidationError("pwp: participation rate must lie in (0, 1]");
    if (total_shares <= 0.0) throw ValidationError("pwp: total_shares must be positive");
    std::vector<double> weights(tape.bins.size(), 0.0);
    double left = total_shares;
    for (std::size_t i = 0; i < tape.bins.size() && left > 0.0; ++i) {
        double w = std::min(rate * tape.bins[i].volume, left);
        weights[i] = w;
        left -= w;
    }
    if (left > 1e-9 * total_shares)
        throw ValidationError("pwp: tape volume cannot fill the order at this participation rate");
    return weights;
}

}  // namespace

double benchmark_price(BenchmarkKind kind, const MarketTape& tape, double participation_rate,
                       double total_shares) {
    tape.check();
    switch (kind) {
        case BenchmarkKind::Twap: {
            double sum = 0.0;
            for (const auto& bin : tape.bins) sum += bin.price;
            return sum / static_cast<double>(tape.bins.size());
        }
        case BenchmarkKind::Vwap: {
            double volume = tape.total_volume();
            if (volume <= 0.0) throw ValidationError("vwap: total volume must be positive");
            double notional = 0.0;
            for (const auto& bin : tape.bins) notional += bin.volume * bin.price;
            return notional / volume;
        }
        case BenchmarkKind::Pwp: {
            if (tape.total_volume() <= 0.0)
                throw ValidationError("pwp: total volume must be positive");
            std::vector<double> weights = pwp_weights(tape, participation_rate, total_shares);
            double notional = 0.0;
            for (std::size_t i = 0; i < weights.size(); ++i)
                notional += weights[i] * tape.bins[i].price;
            return notional / total_shares;
        }
        case BenchmarkKind::MarketOpen: return tape.open_price;
        case BenchmarkKind::MarketClose: return tape.close_price;
        case BenchmarkKind::Is: return tape.start_price;
    }
    throw ValidationError("benchmark_price: unknown kind");
}

double cost_vs_benchmark(const FillSequence& fills, const MarketTape& tape, BenchmarkKind kind,
                         Side side, double total_shares, double participation_rate) {
    tape.check();
    if (total_shares <= 0.0)
        throw ValidationError("cost_vs_benchmark: total_shares must be positive");

    double executed_notional = 0.0;
    for (const auto& fill : fills.fills) executed_notional += fill.shares * fill.price;

    double benchmark_notional = 0.0;
    switch (kind) {
        case BenchmarkKind::Twap: {
            double per_bin = total_shares / static_cast<double>(tape.bins.size());
            for (const auto& bin : tape.bins) benchmark_notional += per_bin * bin.price;
            break;
        }
        case BenchmarkKind::Vwap: {
            double volume = tape.total_volume();
            if (volume <= 0.0) throw ValidationError("vwap: total volume must be positive");
            for (const auto& bin : tape.bins)
                benchmark_notional += bin.volume / volume * total_shares * bin.price;
            break;
        }
        case BenchmarkKind::Pwp: {
            std::vector<double> weights = pwp_weights(tape, participation_rate, total_shares);
            for (std::size_t i = 0; i < weights.size(); ++i)
                benchmark_notional += weights[i] * tape.bins[i].price;
            break;
        }
        case BenchmarkKind::MarketOpen:
        case BenchmarkKind::MarketClose:
        case BenchmarkKind::Is: {
            // The benchmark executes the same shares as the fills, all at the
            // single reference price.
            double price = benchmark_price(kind, tape);
            double executed = 0.0;
            for (const auto& fill : fills.fills) executed += fill.shares;
            benchmark_notional = executed * price;
            break;
        }
    }
    return side_sign(side) / total_shares * (executed_notional - benchmark_notional);
}

std::vector<double> draw_noise_matrix(const ReturnsSpec& returns, std::size_t path_count,
                                      std::size_t intervals, std::uint64_t master_seed,
                                      std::uint64_t stream_offset, int workers) {
    std::vector<double> noise(path_count * intervals);
    parallel_for(path_count, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SeededStream stream = substream(master_seed, stream_offset + i);
            double* row = noise.data() + i * intervals;
            if (returns.kind == ReturnsSpec::Kind::Gaussian) {
                for (std::size_t k = 0; k < intervals; ++k) row[k] = stream.next_normal();
            } else {
                for (std::size_t k = 0; k < intervals; ++k)
                    row[k] = returns.scale * stream.next_student_t(returns.nu);
            }
        }
    });
    return noise;
}

CostSample simulate_cost_sample(const OrderSpec& order, const ExecutionStrategy& strategy,
                                const ScenarioSpec& scenario, std::size_t path_count,
                                std::uint64_t master_seed, int workers) {
    if (path_count == 0) throw ValidationError("simulate_cost_sample: path_count must be >= 1");
    order.check();
    scenario.check();
    const std::size_t intervals = strategy.shares.size();

    std::vector<double> noise =
        draw_noise_matrix(scenario.returns, path_count, intervals, master_seed, 0, workers);

    CostSample sample;
    sample.costs.resize(path_count);
    sample.path_count = path_count;
    sample.master_seed = master_seed;
    sample.scenario_fingerprint = scenario.fingerprint();

    std::atomic<std::size_t> degenerate{0};
    parallel_for(path_count, workers, [&](std::size_t begin, std::size_t end) {
        std::size_t local_degenerate = 0;
        for (std::size_t i = begin; i < end; ++i) {
            std::span<const double> row(noise.data() + i * intervals, intervals);
            if (scenario.dynamics == Dynamics::ArithmeticAC) {
                sample.costs[i] = cost_ac_closed(order, strategy, scenario.params, row);
            } else {
                bool flag = false;
                sample.costs[i] = cost_geometric(order, strategy, scenario, row, &flag);
                if (flag) ++local_degenerate;
            }
        }
        degenerate += local_degenerate;
    });
    sample.degenerate_paths = degenerate.load();
    return sample;
}

namespace {

std::vector<std::array<double, 3>> read_csv_rows(std::istream& in, const std::string& header) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("csv: empty input");
    // Tolerate a UTF-8 BOM and surrounding whitespace in the header.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != header)
        throw ValidationError("csv: expected header '" + header + "', got '" + strip(line) + "'");

    std::vector<std::array<double, 3>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        std::istringstream cells(line);
        std::array<double, 3> row{};
        std::string cell;
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(cells, cell, ','))
                throw ValidationError("csv: line " + std::to_string(line_no) + ": expected 3 columns");
            try {
                row[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw ValidationError("csv: line " + std::to_string(line_no) +
                                      ": cannot parse '" + cell + "'");
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw ValidationError("csv: no data rows");
    return rows;
}

}  // namespace

MarketTape read_market_tape_csv(std::istream& in) {
    MarketTape tape;
    for (const auto& row : read_csv_rows(in, "k,price,volume"))
        tape.bins.push_back({static_cast<int>(row[0]), row[1], row[2]});
    tape.open_price = tape.bins.front().price;
    tape.start_price = tape.bins.front().price;
    tape.close_price = tape.bins.back().price;
    tape.check();
    return tape;
}

FillSequence read_fill_sequence_csv(std::istream& in) {
    FillSequence fills;
    for (const auto& row : read_csv_rows(in, "k,shares,price"))
        fills.fills.push_back({static_cast<int>(row[0]), row[1], row[2]});
    return fills;
}

MarketTape read_market_tape_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open tape file: " + path);
    return read_market_tape_csv(in);
}

FillSequence read_fill_sequence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open fills file: " + path);
    return read_fill_sequence_csv(in);
}

}  // namespace shortfall
