#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tridpart/errors.hpp"
#include "tridpart/parallel.hpp"
#include "tridpart/tridiagonal.hpp"

namespace tridpart {

/// Half-open index range of one sub-system.
struct Block {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t length() const noexcept { return end - start; }
    bool operator==(const Block&) const = default;
};

/// Contiguous decomposition of [0, n) into blocks of requested size m.
/// Every block except the last has length m; the last has length in
/// [2, m+1] (a remainder of 1 is folded into the final block).
struct PartitionPlan {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<Block> blocks;
};

inline PartitionPlan make_plan(std::size_t n, std::size_t m) {
    if (n < 2) throw InvalidSizeError("system size must be >= 2");
    if (m < 2) throw InvalidSizeError("sub-system size must be >= 2");
    PartitionPlan plan{n, m, {}};
    if (m >= n) {
        plan.blocks.push_back({0, n});
        return plan;
    }
    // Blocks of exactly m, then a final block of length in [2, m+1]:
    // a remainder >= 2 stands alone, a remainder of 1 is folded into
    // the final block, no remainder means the last full block is final.
    std::size_t leading = n / m;
    if (n % m <= 1) --leading;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < leading; ++b, pos += m) {
        plan.blocks.push_back({pos, pos + m});
    }
    plan.blocks.push_back({pos, n});
    return plan;
}

/// Per-block output of Stage 1: the two interface equations plus the
/// eliminated interior coefficients needed by Stage 3.
///
/// eq1:  alpha1·x_{s-1} + beta1·x_s + gamma1·x_e = delta1
/// eq2:  alpha2·x_s     + beta2·x_e + gamma2·x_{e+1} = delta2
///
/// Interior row i (s < i < e) after the up-sweep reads
///   a_i·x_{i-1} + beta_i·x_i + gamma_i·x_e = delta_i,
/// which back-substitution resolves left to right once x_s and x_e
/// are known.
template <class Real>
struct ReducedBlock {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive

    Real alpha1, beta1, gamma1, delta1;
    Real alpha2, beta2, gamma2, delta2;

    // Up-sweep coefficients, indexed by offset from `start`.
    std::vector<Real> a, beta, gamma, delta;
};

/// Stage 1 for one block: an up-sweep eliminating the super-diagonal
/// toward row s (yielding eq1 and the interior coefficients) and a
/// down-sweep eliminating the sub-diagonal toward row e (yielding eq2).
/// A length-2 block passes its two rows through verbatim.
template <class Real>
ReducedBlock<Real> reduce_block(const TridiagonalSystem<Real>& sys, Block blk) {
    const std::size_t s = blk.start, e = blk.end - 1, len = blk.length();
    if (len < 2) throw InvalidSizeError("block length must be >= 2");

    ReducedBlock<Real> out;
    out.start = blk.start;
    out.end = blk.end;
    out.a.resize(len);
    out.beta.resize(len);
    out.gamma.resize(len);
    out.delta.resize(len);

    // Up-sweep: seed at row e-1, run i = e-2 .. s.
    auto off = [s](std::size_t i) { return i - s; };
    out.a[off(e - 1)] = sys.sub[e - 1];
    out.beta[off(e - 1)] = sys.diag[e - 1];
    out.gamma[off(e - 1)] = sys.super[e - 1];
    out.delta[off(e - 1)] = sys.rhs[e - 1];
    for (std::size_t i = e - 1; i-- > s;) {
        const Real piv = out.beta[off(i + 1)];
        if (std::abs(piv) < kPivotFloor<Real>) throw ZeroPivotError(i + 1);
        const Real w = sys.super[i] / piv;
        out.a[off(i)] = sys.sub[i];
        out.beta[off(i)] = sys.diag[i] - w * sys.sub[i + 1];
        out.gamma[off(i)] = -w * out.gamma[off(i + 1)];
        out.delta[off(i)] = sys.rhs[i] - w * out.delta[off(i + 1)];
    }
    out.alpha1 = sys.sub[s];
    out.beta1 = out.beta[0];
    out.gamma1 = out.gamma[0];
    out.delta1 = out.delta[0];

    // Down-sweep: seed at row s+1, run i = s+2 .. e.
    Real phi = sys.sub[s + 1];
    Real beta_p = sys.diag[s + 1];
    Real delta_p = sys.rhs[s + 1];
    for (std::size_t i = s + 2; i <= e; ++i) {
        if (std::abs(beta_p) < kPivotFloor<Real>) throw ZeroPivotError(i - 1);
        const Real w = sys.sub[i] / beta_p;
        phi = -w * phi;
        beta_p = sys.diag[i] - w * sys.super[i - 1];
        delta_p = sys.rhs[i] - w * delta_p;
    }
    out.alpha2 = phi;
    out.beta2 = beta_p;
    out.gamma2 = sys.super[e];
    out.delta2 = delta_p;
    return out;
}

/// Stage 2 assembly: interface system of size 2K in the unknowns
/// x_{s_1}, x_{e_1}, ..., x_{s_K}, x_{e_K}. Tridiagonal because eq1 of
/// block j couples x_{e_{j-1}} and eq2 couples x_{s_{j+1}}.
template <class Real>
TridiagonalSystem<Real> assemble_interface(const std::vector<ReducedBlock<Real>>& blocks) {
    const std::size_t k = blocks.size();
    TridiagonalSystem<Real> iface;
    iface.sub.resize(2 * k);
    iface.diag.resize(2 * k);
    iface.super.resize(2 * k);
    iface.rhs.resize(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& b = blocks[j];
        iface.sub[2 * j] = b.alpha1;
        iface.diag[2 * j] = b.beta1;
        iface.super[2 * j] = b.gamma1;
        iface.rhs[2 * j] = b.delta1;
        iface.sub[2 * j + 1] = b.alpha2;
        iface.diag[2 * j + 1] = b.beta2;
        iface.super[2 * j + 1] = b.gamma2;
        iface.rhs[2 * j + 1] = b.delta2;
    }
    return iface;
}

/// Stage 3 for one block: recover x_{s+1} .. x_{e-1} from the stored
/// up-sweep coefficients given the boundary values. Empty for length-2
/// blocks.
template <class Real>
std::vector<Real> back_substitute(const ReducedBlock<Real>& blk, Real x_s, Real x_e) {
    const std::size_t len = blk.end - blk.start;
    std::vector<Real> interior;
    if (len <= 2) return interior;
    interior.resize(len - 2);
    Real prev = x_s;
    for (std::size_t off = 1; off + 1 < len; ++off) {
        if (std::abs(blk.beta[off]) < kPivotFloor<Real>)
            throw ZeroPivotError(blk.start + off);
        const Real xi =
            (blk.delta[off] - blk.a[off] * prev - blk.gamma[off] * x_e) / blk.beta[off];
        interior[off - 1] = xi;
        prev = xi;
    }
    return interior;
}

/// Per-level sub-system sizes for a recursive solve: sizes[0] is used on
/// the original system, sizes[l] on the l-th interface system.
struct RecursionPolicy {
    std::vector<std::size_t> sizes;

    std::size_t depth() const noexcept { return sizes.size() - 1; }

    bool valid() const noexcept {
        if (sizes.empty()) return false;
        for (auto m : sizes)
            if (m < 2) return false;
        return true;
    }
};

namespace detail {

template <class Real, class InterfaceObserver>
std::vector<Real> solve_partition_level(const TridiagonalSystem<Real>& sys,
                                        const RecursionPolicy& policy,
                                        std::size_t level,
                                        InterfaceObserver&& on_interface) {
    const std::size_t n = sys.size();
    if (n < 4) return thomas_solve(sys);

    const PartitionPlan plan = make_plan(n, policy.sizes[level]);
    const std::size_t k = plan.blocks.size();

    std::vector<ReducedBlock<Real>> reduced(k);
    parallel_for(k, [&](std::size_t j) { reduced[j] = reduce_block(sys, plan.blocks[j]); });

    const TridiagonalSystem<Real> iface = assemble_interface(reduced);
    on_interface(iface, level);

    const std::vector<Real> iface_x =
        (level < policy.depth())
            ? solve_partition_level(iface, policy, level + 1, on_interface)
            : thomas_solve(iface);

    std::vector<Real> x(n);
    parallel_for(k, [&](std::size_t j) {
        const auto& b = reduced[j];
        const Real x_s = iface_x[2 * j];
        const Real x_e = iface_x[2 * j + 1];
        x[b.start] = x_s;
        x[b.end - 1] = x_e;
        const auto interior = back_substitute(b, x_s, x_e);
        for (std::size_t t = 0; t < interior.size(); ++t) x[b.start + 1 + t] = interior[t];
    });
    return x;
}

}  // namespace detail

/// Full partition solve. Level l partitions with policy.sizes[l]; the
/// deepest interface system falls through to Thomas elimination, as does
/// any level too small to partition. depth() == 0 is the non-recursive
/// three-stage method.
///
/// The observer is called with every assembled interface system and its
/// level; used by diagnostics and tests.
template <class Real, class InterfaceObserver>
std::vector<Real> solve_partition(const TridiagonalSystem<Real>& sys,
                                  const RecursionPolicy& policy,
                                  InterfaceObserver&& on_interface) {
    if (!policy.valid()) throw InvalidSizeError("invalid recursion policy");
    if (sys.size() == 0) throw InvalidSizeError("empty system");
    return detail::solve_partition_level(sys, policy, 0, on_interface);
}

template <class Real>
std::vector<Real> solve_partition(const TridiagonalSystem<Real>& sys,
                                  const RecursionPolicy& policy) {
    return solve_partition(sys, policy, [](const TridiagonalSystem<Real>&, std::size_t) {});
}

}  // namespace tridpart
