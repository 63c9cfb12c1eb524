#include <catch2/catch_amalgamated.hpp>

#include "finloc/extnat.hpp"

using finloc::ExtNat;

TEST_CASE("extended naturals are totally ordered with infinity on top") {
    const ExtNat inf = ExtNat::infinity();
    CHECK(ExtNat{0} < ExtNat{1});
    CHECK(ExtNat{41} < inf);
    CHECK(inf == ExtNat::infinity());
    CHECK_FALSE(inf < inf);
    CHECK(ExtNat{7} == ExtNat{7});
    CHECK(ExtNat{7} != inf);
}

TEST_CASE("min and max treat infinity as the maximum element") {
    const ExtNat inf = ExtNat::infinity();
    CHECK(min(ExtNat{3}, inf) == ExtNat{3});
    CHECK(max(ExtNat{3}, inf) == inf);
    CHECK(min(inf, inf) == inf);
    CHECK(min(ExtNat{2}, ExtNat{5}) == ExtNat{2});
    CHECK(max(ExtNat{2}, ExtNat{5}) == ExtNat{5});
}

TEST_CASE("extended naturals print as decimal or inf") {
    CHECK(finloc::to_string(ExtNat{12}) == "12");
    CHECK(finloc::to_string(ExtNat::infinity()) == "inf");
}
