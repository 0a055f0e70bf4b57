#include <catch2/catch_amalgamated.hpp>

#include "property_suite.hpp"

TEST_CASE("randomized consistency suite", "[properties]") {
    auto stats = propsuite::run_suite(500, 20240817);
    CHECK(stats.data_count >= 500);
    CHECK(stats.multiply_checks > 0);
    CHECK(stats.key_checks >= 500 * 20);
    for (const auto& f : stats.failures)
        UNSCOPED_INFO(f.what << "  [" << f.datum << "]");
    CHECK(stats.failures.empty());
}
