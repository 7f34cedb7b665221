#include "bpa/errors.hpp"
#include "bpa/ext_nat.hpp"

#include <doctest.h>

using bpa::BigNat;
using bpa::ExtNat;

TEST_CASE("omega absorbs addition and subtraction") {
    const ExtNat w = ExtNat::omega();
    CHECK((w + ExtNat(5)).is_omega());
    CHECK((ExtNat(5) + w).is_omega());
    CHECK((w - ExtNat(5)).is_omega());
    CHECK((w + w).is_omega());
    CHECK((w - w).is_omega());
}

TEST_CASE("naturals are below omega") {
    CHECK(ExtNat(0) < ExtNat::omega());
    CHECK(ExtNat(BigNat(1) << 200) < ExtNat::omega());
    CHECK(ExtNat::omega() == ExtNat::omega());
    CHECK(bpa::min(ExtNat(3), ExtNat::omega()) == ExtNat(3));
    CHECK(bpa::max(ExtNat(3), ExtNat::omega()).is_omega());
}

TEST_CASE("finite arithmetic is exact beyond 64 bits") {
    ExtNat big(BigNat(1) << 100);
    ExtNat sum = big + big;
    CHECK(sum.value() == (BigNat(1) << 101));
    CHECK((sum - big) == big);
    CHECK_FALSE(sum.to_size().has_value());
    CHECK(ExtNat(42).to_size() == 42u);
}

TEST_CASE("subtraction below zero is rejected") {
    CHECK_THROWS_AS(ExtNat(2) - ExtNat(3), bpa::ContractViolation);
    CHECK_THROWS_AS(ExtNat(2) - ExtNat::omega(), bpa::ContractViolation);
    CHECK_THROWS_AS(ExtNat::omega().value(), bpa::ContractViolation);
}

TEST_CASE("printing") {
    CHECK(ExtNat(7).to_string() == "7");
    CHECK(ExtNat::omega().to_string() == "omega");
}
