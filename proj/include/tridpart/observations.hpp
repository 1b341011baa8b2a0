#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tridpart/errors.hpp"

namespace tridpart {

/// One benchmark observation: an SLAE size, its optimum label (either a
/// sub-system size m, or a recursion depth R when `depth_label` is set),
/// an optional manually/automatically corrected label, an optional full
/// candidate -> milliseconds table, and pass-through device metadata.
struct Observation {
    std::int64_t n = 0;
    int label = 0;
    std::optional<int> corrected;
    std::map<int, double> times;  // candidate (m or R) -> time [ms]
    std::string precision = "fp64";
    std::string device;
    int streams = 0;
    bool depth_label = false;
};

struct ObservationSet {
    std::vector<Observation> rows;

    std::size_t size() const noexcept { return rows.size(); }
    bool empty() const noexcept { return rows.empty(); }

    void sort_by_n() {
        std::sort(rows.begin(), rows.end(), [](const Observation& a, const Observation& b) {
            return std::tie(a.n, a.precision, a.device) < std::tie(b.n, b.precision, b.device);
        });
    }

    /// Rows matching a device tag (used for multi-device files).
    ObservationSet filter_device(const std::string& device) const {
        ObservationSet out;
        for (const auto& r : rows)
            if (r.device == device) out.rows.push_back(r);
        return out;
    }

    /// Same observations with the corrected label promoted to `label`.
    /// Rows without a corrected label keep their observed one.
    ObservationSet with_corrected_labels() const {
        ObservationSet out = *this;
        for (auto& r : out.rows) {
            if (r.corrected) r.label = *r.corrected;
        }
        return out;
    }

    std::vector<int> unique_labels() const {
        std::vector<int> labels;
        for (const auto& r : rows) labels.push_back(r.label);
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        return labels;
    }
};

}  // namespace tridpart
