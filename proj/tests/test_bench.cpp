#include <filesystem>

#include <catch_amalgamated.hpp>

#include "tridpart/bench.hpp"
#include "tridpart/io.hpp"

using namespace tridpart;

namespace {
const std::filesystem::path kDataDir = TRIDPART_DATA_DIR;
}

TEST_CASE("generate_system is dominant and reproducible") {
    const auto a = generate_system(500, 42);
    const auto b = generate_system(500, 42);
    CHECK(a.strictly_dominant());
    CHECK(a.well_formed());
    CHECK(a.diag == b.diag);
    CHECK(a.rhs == b.rhs);

    const auto c = generate_system(500, 43);
    CHECK(a.rhs != c.rhs);

    const auto big = generate_system(10000, 1);
    CHECK(residual_inf(big, thomas_solve(big)) <= 1e-12);
}

TEST_CASE("time_solve statistics") {
    const auto sys = generate_system(100, 2);
    const RecursionPolicy policy{{8}};
    SECTION("median of a scripted 1,2,3 ms trace") {
        TraceClock clock({1.0, 2.0, 3.0});
        const auto stats = time_solve(sys, policy, 3, clock);
        CHECK(stats.median_ms == 2.0);
        CHECK(stats.min_ms == 1.0);
        CHECK(stats.max_ms == 3.0);
    }
    SECTION("r=1 collapses the statistics") {
        TraceClock clock({5.0});
        const auto stats = time_solve(sys, policy, 1, clock);
        CHECK(stats.median_ms == 5.0);
        CHECK(stats.min_ms == 5.0);
        CHECK(stats.max_ms == 5.0);
    }
    SECTION("real clock smoke run") {
        SteadyClock clock;
        const auto big = generate_system(100000, 3);
        const auto stats = time_solve(big, RecursionPolicy{{32}}, 2, clock);
        CHECK(stats.min_ms >= 0);
        CHECK(std::isfinite(stats.median_ms));
        CHECK(stats.median_ms <= stats.max_ms);
    }
}

TEST_CASE("sweep_m argmin and determinism") {
    SECTION("strictly increasing trace puts the argmin on the first candidate") {
        TraceClock clock({1, 1, 1, 2, 2, 2, 3, 3, 3});
        const auto result = sweep_m(200, {4, 8, 16}, 3, clock);
        CHECK(result.argmin == 4);
    }
    SECTION("candidates {4,8} with fake times {5,3}") {
        TraceClock clock({5.0, 3.0});
        const auto result = sweep_m(200, {4, 8}, 1, clock);
        CHECK(result.argmin == 8);
    }
    SECTION("identical traces reproduce identical sweeps") {
        const std::vector<double> trace{9, 7, 8, 3, 1, 2, 6, 5, 4, 9, 9, 9, 8, 8, 8};
        TraceClock c1(trace), c2(trace);
        const auto r1 = sweep_m(100000, {4, 8, 16, 32, 64}, 3, c1);
        const auto r2 = sweep_m(100000, {4, 8, 16, 32, 64}, 3, c2);
        CHECK(r1.argmin == r2.argmin);
        REQUIRE(r1.entries.size() == r2.entries.size());
        for (std::size_t i = 0; i < r1.entries.size(); ++i)
            CHECK(r1.entries[i].stats.median_ms == r2.entries[i].stats.median_ms);
    }
}

TEST_CASE("sweep_r over recursion depths") {
    const auto model =
        fit_knn(read_observations(kDataDir / "table1_fp64.csv").with_corrected_labels(), 1);
    SECTION("valley-shaped trace") {
        // per depth: 1 timed run each, times 5,3,4,6,7 -> argmin R=1
        TraceClock clock({5, 3, 4, 6, 7});
        const auto result = sweep_r(50000, 4, model, 1, clock);
        CHECK(result.argmin == 1);
        CHECK(result.entries.size() == 5);
    }
    SECTION("max R=0 trivially wins") {
        TraceClock clock({1.0});
        CHECK(sweep_r(1000, 0, model, 1, clock).argmin == 0);
    }
    SECTION("real clock smoke at n=1e6") {
        SteadyClock clock;
        const auto result = sweep_r(1000000, 4, model, 1, clock);
        CHECK(result.entries.size() == 5);
        for (const auto& e : result.entries) CHECK(std::isfinite(e.stats.median_ms));
    }
}

TEST_CASE("sweep to observation conversion is lossless") {
    TraceClock clock({5.0, 3.0, 4.0});
    const auto result = sweep_m(300, {4, 8, 16}, 1, clock);
    const auto obs = result.to_observation("devbox", "fp64", 1);
    CHECK(obs.n == 300);
    CHECK(obs.label == result.argmin);
    REQUIRE(obs.times.size() == 3);
    CHECK(obs.times.at(4) == 5.0);
    CHECK(obs.times.at(8) == 3.0);
    CHECK(obs.times.at(16) == 4.0);
}
