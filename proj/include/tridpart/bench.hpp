#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tridpart/errors.hpp"
#include "tridpart/observations.hpp"
#include "tridpart/partition.hpp"
#include "tridpart/policy.hpp"
#include "tridpart/tridiagonal.hpp"

namespace tridpart {

/// Residual gate applied to every timed solve.
inline constexpr double kBenchResidualTol = 1e-8;

/// Timing seam. Implementations must invoke the workload exactly once
/// and report its duration in milliseconds.
class Clock {
public:
    virtual ~Clock() = default;
    virtual double time_ms(const std::function<void()>& work) = 0;
    virtual std::string name() const = 0;
};

class SteadyClock final : public Clock {
public:
    double time_ms(const std::function<void()>& work) override {
        const auto t0 = std::chrono::steady_clock::now();
        work();
        const auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    std::string name() const override { return "steady"; }
};

/// Replays a scripted trace of durations; the workload still runs so
/// correctness gating stays in force. Wraps around when exhausted.
class TraceClock final : public Clock {
public:
    explicit TraceClock(std::vector<double> trace_ms) : trace_(std::move(trace_ms)) {
        if (trace_.empty()) throw InvalidSizeError("empty clock trace");
    }
    double time_ms(const std::function<void()>& work) override {
        work();
        const double t = trace_[next_ % trace_.size()];
        ++next_;
        return t;
    }
    std::string name() const override { return "trace"; }

private:
    std::vector<double> trace_;
    std::size_t next_ = 0;
};

/// Random strictly diagonally dominant test system. Off-diagonals are
/// uniform in [-1, 1], the diagonal is delta*(|a|+|c|)+1, the right-hand
/// side uniform in [-1, 1], and each whole row keeps or flips its sign
/// (which preserves dominance). Deterministic per seed.
inline Tridiagonal generate_system(std::size_t n, std::uint64_t seed, double delta = 1.5) {
    if (n < 2) throw InvalidSizeError("system size must be >= 2");
    if (!(delta > 1.0)) throw InvalidSizeError("dominance factor must be > 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution flip(0.5);

    Tridiagonal sys;
    sys.sub.resize(n);
    sys.diag.resize(n);
    sys.super.resize(n);
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sys.sub[i] = (i == 0) ? 0.0 : unit(rng);
        sys.super[i] = (i + 1 == n) ? 0.0 : unit(rng);
        sys.diag[i] = delta * (std::abs(sys.sub[i]) + std::abs(sys.super[i])) + 1.0;
        sys.rhs[i] = unit(rng);
        if (flip(rng)) {
            sys.sub[i] = -sys.sub[i];
            sys.diag[i] = -sys.diag[i];
            sys.super[i] = -sys.super[i];
            sys.rhs[i] = -sys.rhs[i];
        }
    }
    return sys;
}

struct TimingStats {
    double median_ms = 0;
    double min_ms = 0;
    double max_ms = 0;
    int runs = 0;
};

/// 1 warmup + r timed solves; every solve (warmup included) must pass
/// the residual gate before its timing is accepted.
inline TimingStats time_solve(const Tridiagonal& sys, const RecursionPolicy& policy, int runs,
                              Clock& clock) {
    if (runs < 1) throw InvalidSizeError("runs must be >= 1");
    auto gated_solve = [&] {
        const auto x = solve_partition(sys, policy);
        const double res = residual_inf(sys, x);
        if (!(res <= kBenchResidualTol))
            throw SolveFailedError("residual " + std::to_string(res) + " above gate");
    };
    gated_solve();  // warmup

    std::vector<double> times(runs);
    for (int r = 0; r < runs; ++r) times[r] = clock.time_ms(gated_solve);

    std::vector<double> ordered = times;
    std::sort(ordered.begin(), ordered.end());
    TimingStats stats;
    stats.runs = runs;
    stats.min_ms = ordered.front();
    stats.max_ms = ordered.back();
    stats.median_ms = (runs % 2) ? ordered[runs / 2]
                                 : 0.5 * (ordered[runs / 2 - 1] + ordered[runs / 2]);
    return stats;
}

struct SweepEntry {
    int candidate = 0;  // m, or R for depth sweeps
    TimingStats stats;
};

struct SweepResult {
    std::int64_t n = 0;
    std::vector<SweepEntry> entries;
    int argmin = 0;
    int runs = 0;
    std::string clock_name;
    bool depth_sweep = false;

    /// Lossless (N, times, argmin) conversion for the dataset pipeline.
    Observation to_observation(std::string device = "host",
                               std::string precision = "fp64", int streams = 1) const {
        Observation obs;
        obs.n = n;
        obs.label = argmin;
        obs.device = std::move(device);
        obs.precision = std::move(precision);
        obs.streams = streams;
        obs.depth_label = depth_sweep;
        for (const auto& e : entries) obs.times[e.candidate] = e.stats.median_ms;
        return obs;
    }
};

namespace detail {
inline void record_argmin(SweepResult& result) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : result.entries) {
        if (e.stats.median_ms < best) {
            best = e.stats.median_ms;
            result.argmin = e.candidate;
        }
    }
}
}  // namespace detail

/// Times the non-recursive method over candidate sub-system sizes.
/// Candidates run sequentially so timings do not interfere.
inline SweepResult sweep_m(std::size_t n, const std::vector<int>& candidates, int runs,
                           Clock& clock, std::uint64_t seed = 1) {
    if (candidates.empty()) throw InvalidSizeError("no sweep candidates");
    for (int m : candidates)
        if (m < 2) throw InvalidSizeError("candidate m must be >= 2");

    const Tridiagonal sys = generate_system(n, seed);
    SweepResult result;
    result.n = static_cast<std::int64_t>(n);
    result.runs = runs;
    result.clock_name = clock.name();
    for (int m : candidates) {
        RecursionPolicy policy{{static_cast<std::size_t>(m)}};
        result.entries.push_back({m, time_solve(sys, policy, runs, clock)});
    }
    detail::record_argmin(result);
    return result;
}

/// Times the recursive method for R = 0 .. max_r, with per-level sizes
/// derived from the fitted size model.
inline SweepResult sweep_r(std::size_t n, int max_r, const HeuristicModel& size_model,
                           int runs, Clock& clock, std::uint64_t seed = 1) {
    if (max_r < 0 || max_r > kMaxRecursionDepth)
        throw DepthOutOfRangeError("max recursion depth must be in [0, 4]");

    const Tridiagonal sys = generate_system(n, seed);
    SweepResult result;
    result.n = static_cast<std::int64_t>(n);
    result.runs = runs;
    result.clock_name = clock.name();
    result.depth_sweep = true;
    for (int r = 0; r <= max_r; ++r) {
        const auto policy = recursion_sizes(static_cast<std::int64_t>(n), r, size_model);
        result.entries.push_back({r, time_solve(sys, policy, runs, clock)});
    }
    detail::record_argmin(result);
    return result;
}

}  // namespace tridpart
