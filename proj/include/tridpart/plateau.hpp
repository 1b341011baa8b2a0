#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <vector>

#include "tridpart/errors.hpp"
#include "tridpart/observations.hpp"

namespace tridpart {

/// Replaces noisy per-row optima with a piecewise-constant labeling.
///
/// Per row i (rows ordered by N), the candidate set is
///   C_i = { m : time_i(m) <= (1 + tolerance) * min_m time_i(m) }.
/// A dynamic program segments the rows into the fewest contiguous runs
/// such that each run's rows share a common candidate; the run label is
/// drawn from that intersection, preferring non-decreasing labels across
/// runs and then smaller labels. The result for each row always lies in
/// its own C_i.
///
/// Returns corrected labels aligned with the rows of `sweeps` sorted by N.
inline std::vector<int> plateau_correct(const ObservationSet& sweeps, double tolerance = 0.04) {
    ObservationSet sorted = sweeps;
    sorted.sort_by_n();
    const std::size_t n = sorted.size();
    if (n == 0) return {};

    std::vector<std::set<int>> cand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& times = sorted.rows[i].times;
        if (times.empty())
            throw MissingTimesError("row N=" + std::to_string(sorted.rows[i].n) +
                                    " has no per-candidate times");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [m, t] : times) best = std::min(best, t);
        for (const auto& [m, t] : times)
            if (t <= (1.0 + tolerance) * best) cand[i].insert(m);
    }

    // suffix_runs[i] = fewest runs covering rows i..n-1.
    const std::size_t kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> suffix_runs(n + 1, kInf);
    suffix_runs[n] = 0;
    // run_cands[i][j] filled lazily below via incremental intersection.
    for (std::size_t i = n; i-- > 0;) {
        std::set<int> inter = cand[i];
        for (std::size_t j = i + 1; j <= n; ++j) {
            if (inter.empty()) break;
            if (suffix_runs[j] != kInf)
                suffix_runs[i] = std::min(suffix_runs[i], 1 + suffix_runs[j]);
            if (j < n) {
                std::set<int> next;
                std::set_intersection(inter.begin(), inter.end(), cand[j].begin(),
                                      cand[j].end(), std::inserter(next, next.begin()));
                inter = std::move(next);
            }
        }
    }

    // Left-to-right reconstruction: make each run maximal while keeping
    // the total optimal, then label it.
    std::vector<int> out(n);
    std::size_t i = 0;
    int prev_label = std::numeric_limits<int>::min();
    while (i < n) {
        std::set<int> inter = cand[i];
        std::size_t end = i + 1;     // chosen run is [i, end)
        std::set<int> chosen = inter;
        for (std::size_t j = i + 1; j <= n; ++j) {
            if (inter.empty()) break;
            if (1 + suffix_runs[j] == suffix_runs[i]) {
                end = j;
                chosen = inter;
            }
            if (j < n) {
                std::set<int> next;
                std::set_intersection(inter.begin(), inter.end(), cand[j].begin(),
                                      cand[j].end(), std::inserter(next, next.begin()));
                inter = std::move(next);
            }
        }
        // Smallest candidate not below the previous run's label, else the
        // smallest overall.
        int label = *chosen.begin();
        for (int c : chosen) {
            if (c >= prev_label) {
                label = c;
                break;
            }
        }
        for (std::size_t r = i; r < end; ++r) out[r] = label;
        prev_label = label;
        i = end;
    }
    return out;
}

/// Convenience wrapper: same set with `corrected` filled in.
inline ObservationSet apply_plateau_correction(const ObservationSet& sweeps,
                                               double tolerance = 0.04) {
    ObservationSet out = sweeps;
    out.sort_by_n();
    const auto labels = plateau_correct(out, tolerance);
    for (std::size_t i = 0; i < out.size(); ++i) out.rows[i].corrected = labels[i];
    return out;
}

}  // namespace tridpart
