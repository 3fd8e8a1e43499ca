// costs.hpp
//
// Transaction-cost formulas for both dynamics families, the closed-form
// mean/variance of the arithmetic model, Monte Carlo cost sampling, and the
// benchmark costs (TWAP/VWAP/PWP/MO/MC/IS) computed from a market tape.
//
// Sign convention throughout: positive cost = outperformance of the
// benchmark, negative = underperformance.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "shortfall/core.hpp"

namespace shortfall {

/// Executed fills: shares and average execution price per time bin.
struct FillSequence {
    struct Fill {
        int interval{0};
        double shares{0.0};
        double price{0.0};
    };
    std::vector<Fill> fills;
};

/// Market activity per time bin plus the reference prices used by the
/// MO/MC/IS benchmarks.
struct MarketTape {
    struct Bin {
        int interval{0};
        double price{0.0};
        double volume{0.0};
    };
    std::vector<Bin> bins;
    double open_price{0.0};
    double close_price{0.0};
    double start_price{0.0};

    double total_volume() const;
    void check() const;
};

enum class BenchmarkKind { Twap, Vwap, Pwp, MarketOpen, MarketClose, Is };

BenchmarkKind benchmark_kind_from_string(const std::string& name);
const char* to_string(BenchmarkKind kind);

/// A vector of simulated per-share transaction costs with its provenance.
struct CostSample {
    std::vector<double> costs;
    std::size_t path_count{0};
    std::uint64_t master_seed{0};
    std::string scenario_fingerprint;
    std::size_t degenerate_paths{0};  // geometric paths that crossed zero (kept in the sample)
};

/// Implementation-shortfall cost of a fill sequence against the order-start
/// price: sign * (average fill price - p0) per share.
double cost_is(const FillSequence& fills, double p0, Side side, double total_shares);

/// Closed-form arithmetic-dynamics cost of a strategy for one noise vector.
/// Equals cost_is applied to the simulated arithmetic path.
double cost_ac_closed(const OrderSpec& order, const ExecutionStrategy& strategy,
                      const MarketParams& params, std::span<const double> noise);

/// Geometric-dynamics cost of a strategy for one noise vector. Equals
/// cost_is applied to the simulated geometric path. `degenerate`, when
/// non-null, reports whether the underlying path crossed zero.
double cost_geometric(const OrderSpec& order, const ExecutionStrategy& strategy,
                      const ScenarioSpec& scenario, std::span<const double> noise,
                      bool* degenerate = nullptr);

/// Expected cost and cost variance of the arithmetic model in closed form.
double expected_cost_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                        const MarketParams& params);
double variance_ac(const OrderSpec& order, const ExecutionStrategy& strategy,
                   const MarketParams& params);

/// Benchmark price over a tape. `participation_rate` applies to PWP only:
/// the benchmark fills total_shares at that fraction of market volume, bin
/// by bin from the start of the tape. VWAP and PWP require positive volume.
double benchmark_price(BenchmarkKind kind, const MarketTape& tape,
                       double participation_rate = 0.0, double total_shares = 0.0);

/// Signed per-share cost of the fills against the chosen benchmark.
double cost_vs_benchmark(const FillSequence& fills, const MarketTape& tape, BenchmarkKind kind,
                         Side side, double total_shares, double participation_rate = 0.0);

/// Simulates `path_count` cost realizations of a strategy under a scenario.
/// Path i draws its noise from substream(master_seed, i), so the sample is
/// bit-identical for any worker count.
CostSample simulate_cost_sample(const OrderSpec& order, const ExecutionStrategy& strategy,
                                const ScenarioSpec& scenario, std::size_t path_count,
                                std::uint64_t master_seed, int workers = 0);

/// Noise matrix used by the cost simulators: row i holds the K innovations
/// of path i, drawn from substream(master_seed, stream_offset + i).
std::vector<double> draw_noise_matrix(const ReturnsSpec& returns, std::size_t path_count,
                                      std::size_t intervals, std::uint64_t master_seed,
                                      std::uint64_t stream_offset = 0, int workers = 0);

/// CSV ingest. Tapes use columns `k,price,volume`, fills `k,shares,price`;
/// a header row is required. Tape reference prices default to the first bin
/// (open, start) and last bin (close).
MarketTape read_market_tape_csv(std::istream& in);
FillSequence read_fill_sequence_csv(std::istream& in);
MarketTape read_market_tape_csv(const std::string& path);
FillSequence read_fill_sequence_csv(const std::string& path);

}  // namespace shortfall
