// Independent reference computations used only by tests. These stay
// deliberately naive (dense elimination, exhaustive nearest-neighbor
// scans) so they share no code path with the library under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tridpart/tridiagonal.hpp"

namespace oracle {

/// Dense Gaussian elimination with partial pivoting on the full n x n
/// matrix built from the three diagonals.
inline std::vector<double> dense_solve(const tridpart::Tridiagonal& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) a[i][i - 1] = sys.sub[i];
        a[i][i] = sys.diag[i];
        if (i + 1 < n) a[i][i + 1] = sys.super[i];
        a[i][n] = sys.rhs[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw std::runtime_error("singular oracle matrix");
        std::swap(a[col], a[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = a[i][n];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

inline double rel_inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return diff / scale;
}

/// Exhaustive 1-NN on log10(N) with the library's documented tie rules,
/// written from scratch for leave-one-out scoring.
inline int nn1_predict(const std::vector<std::pair<std::int64_t, int>>& train, std::int64_t q) {
    double best_d = 0;
    std::int64_t best_n = -1;
    int best_label = 0;
    for (const auto& [n, label] : train) {
        const double d = std::abs(std::log10(double(n)) - std::log10(double(q)));
        if (best_n < 0 || d < best_d || (d == best_d && n < best_n)) {
            best_d = d;
            best_n = n;
            best_label = label;
        }
    }
    return best_label;
}

inline double loo_accuracy(const std::vector<std::pair<std::int64_t, int>>& data) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::vector<std::pair<std::int64_t, int>> rest;
        for (std::size_t j = 0; j < data.size(); ++j)
            if (j != i) rest.push_back(data[j]);
        if (nn1_predict(rest, data[i].first) == data[i].second) ++hits;
    }
    return double(hits) / double(data.size());
}

}  // namespace oracle
