#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tridpart/errors.hpp"

namespace tridpart {

/// Threshold below which a pivot is treated as degenerate.
/// Strict diagonal dominance keeps true pivots far above this.
template <class Real>
inline constexpr Real kPivotFloor = Real(1e-30);

/// Tridiagonal system A·x = d stored as three diagonals plus the
/// right-hand side. Row i reads: sub[i]·x_{i-1} + diag[i]·x_i +
/// super[i]·x_{i+1} = rhs[i], with sub[0] = super[n-1] = 0.
/// Immutable by convention once built; safe to share across threads.
template <class Real>
struct TridiagonalSystem {
    std::vector<Real> sub;
    std::vector<Real> diag;
    std::vector<Real> super;
    std::vector<Real> rhs;

    std::size_t size() const noexcept { return diag.size(); }

    bool well_formed() const noexcept {
        const std::size_t n = diag.size();
        if (n == 0) return false;
        if (sub.size() != n || super.size() != n || rhs.size() != n) return false;
        return sub.front() == Real(0) && super.back() == Real(0);
    }

    /// |b_i| > |a_i| + |c_i| for every row.
    bool strictly_dominant() const noexcept {
        for (std::size_t i = 0; i < size(); ++i) {
            if (!(std::abs(diag[i]) > std::abs(sub[i]) + std::abs(super[i])))
                return false;
        }
        return true;
    }
};

using Tridiagonal = TridiagonalSystem<double>;

/// Sequential Thomas elimination. O(n), no pivoting; requires pivots
/// bounded away from zero (guaranteed for strictly dominant systems).
template <class Real>
std::vector<Real> thomas_solve(const TridiagonalSystem<Real>& sys) {
    const std::size_t n = sys.size();
    std::vector<Real> c_mod(n), x(n);

    Real pivot = sys.diag[0];
    if (std::abs(pivot) < kPivotFloor<Real>) throw ZeroPivotError(0);
    c_mod[0] = sys.super[0] / pivot;
    x[0] = sys.rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.sub[i] * c_mod[i - 1];
        if (std::abs(pivot) < kPivotFloor<Real>) throw ZeroPivotError(i);
        c_mod[i] = sys.super[i] / pivot;
        x[i] = (sys.rhs[i] - sys.sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c_mod[i] * x[i + 1];
    }
    return x;
}

/// Relative residual ‖Ax − d‖∞ / max(1, ‖d‖∞).
template <class Real>
Real residual_inf(const TridiagonalSystem<Real>& sys, std::span<const Real> x) {
    const std::size_t n = sys.size();
    Real num = 0, den = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Real ax = sys.diag[i] * x[i];
        if (i > 0) ax += sys.sub[i] * x[i - 1];
        if (i + 1 < n) ax += sys.super[i] * x[i + 1];
        num = std::max(num, std::abs(ax - sys.rhs[i]));
        den = std::max(den, std::abs(sys.rhs[i]));
    }
    return num / den;
}

template <class Real>
Real residual_inf(const TridiagonalSystem<Real>& sys, const std::vector<Real>& x) {
    return residual_inf(sys, std::span<const Real>(x));
}

}  // namespace tridpart
