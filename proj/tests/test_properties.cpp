#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jlb/checks.hpp"

using namespace jlb;

TEST_CASE("every library property check passes") {
    const auto results = run_property_checks(1);
    CHECK(!results.empty());
    for (const auto& c : results) {
        INFO(c.id, ": ", c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("property checks are deterministic for a fixed seed") {
    const auto a = run_property_checks(7);
    const auto b = run_property_checks(7);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].pass == b[i].pass);
        CHECK(a[i].detail == b[i].detail);
    }
}
