#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tridpart/errors.hpp"
#include "tridpart/knn.hpp"
#include "tridpart/observations.hpp"

namespace tridpart {

inline constexpr const char* kObservationsHeader =
    "N,precision,device,streams,m,time_ms,is_opt,corrected_m,opt_R";

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

template <class Int>
Int parse_int(const std::string& s, std::size_t line_no) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw BadNumberError(line_no, "'" + s + "'");
    return value;
}

inline double parse_double(const std::string& s, std::size_t line_no) {
    // strtod is locale-sensitive; reject anything but plain '.' decimals.
    if (s.find_first_not_of("0123456789.eE+-") != std::string::npos)
        throw BadNumberError(line_no, "'" + s + "'");
    std::size_t used = 0;
    double value;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        throw BadNumberError(line_no, "'" + s + "'");
    }
    if (used != s.size()) throw BadNumberError(line_no, "'" + s + "'");
    return value;
}

/// Canonical decimal rendering (six fixed digits, '.' separator).
inline std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

}  // namespace detail

/// Reads the long-format observations CSV. File rows sharing an
/// (N, precision, device) key fold into one Observation: the is_opt row
/// carries the label (m, or opt_R for depth rows) and the corrected
/// label; every timed row feeds the per-candidate time table.
inline ObservationSet read_observations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw MalformedHeaderError("empty file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kObservationsHeader)
        throw MalformedHeaderError("unexpected header in " + path.string());

    struct Key {
        std::int64_t n;
        std::string precision, device;
        bool operator<(const Key& o) const {
            return std::tie(n, precision, device) < std::tie(o.n, o.precision, o.device);
        }
    };
    std::map<Key, Observation> grouped;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 9)
            throw BadNumberError(line_no, "expected 9 fields, got " + std::to_string(f.size()));

        const auto n = detail::parse_int<std::int64_t>(f[0], line_no);
        const Key key{n, f[1], f[2]};
        auto& obs = grouped[key];
        obs.n = n;
        obs.precision = f[1];
        obs.device = f[2];
        obs.streams = detail::parse_int<int>(f[3], line_no);

        const std::optional<int> m =
            f[4].empty() ? std::nullopt
                         : std::optional<int>(detail::parse_int<int>(f[4], line_no));
        if (!f[5].empty() && m) obs.times[*m] = detail::parse_double(f[5], line_no);

        const bool is_opt = detail::parse_int<int>(f[6], line_no) != 0;
        if (is_opt) {
            if (!f[8].empty() && !m) {
                obs.label = detail::parse_int<int>(f[8], line_no);
                obs.depth_label = true;
            } else if (m) {
                obs.label = *m;
            } else {
                throw BadNumberError(line_no, "optimum row carries neither m nor opt_R");
            }
            if (!f[7].empty()) obs.corrected = detail::parse_int<int>(f[7], line_no);
        }
    }

    ObservationSet set;
    for (auto& [key, obs] : grouped) set.rows.push_back(std::move(obs));
    return set;
}

/// Canonical writer: rows sorted by (N, m), stable across runs, so two
/// writes of the same set are byte-identical.
inline void write_observations(const ObservationSet& set, const std::filesystem::path& path) {
    ObservationSet sorted = set;
    sorted.sort_by_n();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << kObservationsHeader << "\n";

    for (const auto& obs : sorted.rows) {
        auto emit = [&](std::optional<int> m, std::optional<double> time, bool is_opt) {
            out << obs.n << ',' << obs.precision << ',' << obs.device << ',' << obs.streams
                << ',';
            if (m) out << *m;
            out << ',';
            if (time) out << detail::format_time(*time);
            out << ',' << (is_opt ? 1 : 0) << ',';
            if (is_opt && obs.corrected) out << *obs.corrected;
            out << ',';
            if (is_opt && obs.depth_label) out << obs.label;
            out << '\n';
        };
        if (obs.depth_label) {
            emit(std::nullopt, std::nullopt, true);
            continue;
        }
        if (obs.times.empty()) {
            emit(obs.label, std::nullopt, true);
            continue;
        }
        for (const auto& [m, t] : obs.times) emit(m, t, m == obs.label);
        if (!obs.times.count(obs.label)) emit(obs.label, std::nullopt, true);
    }
}

inline void save_model(const HeuristicModel& model, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["version"] = kModelFormatVersion;
    doc["transform"] = model.transform;
    doc["k"] = model.k;
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& p : model.pairs) pairs.push_back({{"n", p.n}, {"label", p.label}});
    doc["pairs"] = std::move(pairs);
    doc["labels"] = model.labels;
    doc["metadata"] = model.metadata;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
}

inline HeuristicModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer())
        throw SchemaError("missing version");
    if (doc["version"].get<int>() != kModelFormatVersion)
        throw VersionMismatchError("unsupported model version " +
                                   doc["version"].dump());
    for (const char* field : {"transform", "k", "pairs", "labels"})
        if (!doc.contains(field)) throw SchemaError(std::string("missing field: ") + field);

    HeuristicModel model;
    try {
        model.transform = doc["transform"].get<std::string>();
        model.k = doc["k"].get<int>();
        for (const auto& p : doc["pairs"])
            model.pairs.push_back({p.at("n").get<std::int64_t>(), p.at("label").get<int>()});
        model.labels = doc["labels"].get<std::vector<int>>();
        if (doc.contains("metadata"))
            model.metadata = doc["metadata"].get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed model document: ") + e.what());
    }
    if (model.pairs.empty()) throw SchemaError("model has no training pairs");
    if (model.k < 1 || static_cast<std::size_t>(model.k) > model.pairs.size())
        throw SchemaError("k outside [1, |pairs|]");
    return model;
}

}  // namespace tridpart
