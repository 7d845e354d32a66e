#include <doctest.h>

#include "property_suites.hpp"

TEST_CASE("randomized suites hold over at least 200 cases each") {
    auto results = rht::props::run_property_suites(0x5eed2026, 200);
    CHECK(results.size() == 7);
    for (const auto& r : results) {
        CAPTURE(r.name);
        for (const auto& note : r.notes) CAPTURE(note);
        CHECK(r.cases >= 200);
        CHECK(r.failures == 0);
    }
}

TEST_CASE("suites are seed-deterministic") {
    auto a = rht::props::run_property_suites(7, 40);
    auto b = rht::props::run_property_suites(7, 40);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cases == b[i].cases);
        CHECK(a[i].failures == b[i].failures);
    }
}
