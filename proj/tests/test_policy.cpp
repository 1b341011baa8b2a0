#include <filesystem>

#include <catch_amalgamated.hpp>

#include "tridpart/io.hpp"
#include "tridpart/policy.hpp"

using namespace tridpart;

namespace {

const std::filesystem::path kDataDir = TRIDPART_DATA_DIR;

HeuristicModel size_model() {
    return fit_knn(read_observations(kDataDir / "table1_fp64.csv").with_corrected_labels(),
                   1);
}

HeuristicModel depth_model() {
    return fit_depth_model(read_observations(kDataDir / "table2_recursion.csv"));
}

}  // namespace

TEST_CASE("depth model reproduces the recursion intervals") {
    const auto model = depth_model();
    CHECK(predict(model, 100000) == 0);
    CHECK(predict(model, 5000000) == 2);
    CHECK(predict(model, 10000000) == 3);
    CHECK(predict(model, 2300000) == 1);
    CHECK(predict(model, 3000000) == 1);
}

TEST_CASE("recursion_sizes follows the interface-size recurrence") {
    const auto model = size_model();
    SECTION("depth 0 is a single predicted size") {
        const auto policy = recursion_sizes(1000000, 0, model);
        CHECK(policy.sizes == std::vector<std::size_t>{32});
    }
    SECTION("N=1e8, R=3") {
        const auto policy = recursion_sizes(100000000, 3, model);
        CHECK(policy.sizes == std::vector<std::size_t>{64, 10, 32, 16});
    }
    SECTION("N=4e6, R=1 predicts m1 for the interface size") {
        const auto policy = recursion_sizes(4000000, 1, model);
        CHECK(policy.sizes == std::vector<std::size_t>{32, 32});
    }
    SECTION("depth out of range") {
        CHECK_THROWS_AS(recursion_sizes(1000000, 5, model), DepthOutOfRangeError);
        CHECK_THROWS_AS(recursion_sizes(1000000, -1, model), DepthOutOfRangeError);
    }
}
