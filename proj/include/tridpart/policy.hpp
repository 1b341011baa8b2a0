#pragma once

#include <cstdint>

#include "tridpart/errors.hpp"
#include "tridpart/knn.hpp"
#include "tridpart/partition.hpp"

namespace tridpart {

inline constexpr int kMaxRecursionDepth = 4;

/// 1-NN (by default) model over (N -> optimum recursion depth R).
inline HeuristicModel fit_depth_model(const ObservationSet& data, int k = 1) {
    return fit_knn(data, k);
}

/// Derives the per-level sub-system sizes for an R-level recursive solve.
///
/// m_0 comes from the size model at N. Each next level solves the
/// interface system of the previous one, whose size is twice the block
/// count: N_{l+1} = 2 * K_l. With a single recursion m_1 is predicted
/// for N_1; with two or more, m_1 is fixed to 10. Deeper levels are
/// predicted for their interface sizes.
inline RecursionPolicy recursion_sizes(std::int64_t n, int depth,
                                       const HeuristicModel& size_model) {
    if (depth < 0 || depth > kMaxRecursionDepth)
        throw DepthOutOfRangeError("recursion depth must be in [0, 4]");

    RecursionPolicy policy;
    std::int64_t level_n = n;
    for (int level = 0; level <= depth; ++level) {
        std::size_t m;
        if (level == 1 && depth >= 2) {
            m = 10;
        } else {
            m = static_cast<std::size_t>(predict(size_model, level_n));
        }
        policy.sizes.push_back(m);
        if (level == depth) break;
        const auto plan = make_plan(static_cast<std::size_t>(level_n), m);
        level_n = static_cast<std::int64_t>(2 * plan.blocks.size());
    }
    return policy;
}

}  // namespace tridpart
