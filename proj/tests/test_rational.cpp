#include <doctest.h>

#include "dvrp/rational.hpp"

using dvrp::Rat;

TEST_CASE("rational arithmetic stays normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(1, 2) * Rat(2, 3)) == Rat(1, 3));
    CHECK((Rat(7) / Rat(2)) == Rat(7, 2));
    CHECK((Rat(1, 2) - Rat(1, 2)).is_zero());
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(0));
}

TEST_CASE("rational parsing and printing") {
    CHECK(Rat::parse("3/2") == Rat(3, 2));
    CHECK(Rat::parse("-3/2") == Rat(-3, 2));
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(Rat(3, 2).str() == "3/2");
    CHECK(Rat(-7).str() == "-7");
    CHECK_THROWS_AS(Rat::parse("0.2"), dvrp::ContractError);
    CHECK_THROWS_AS(Rat::parse("1/0"), dvrp::ContractError);
    CHECK_THROWS_AS(Rat::parse(""), dvrp::ContractError);
    CHECK_THROWS_AS(Rat::parse("2x"), dvrp::ContractError);
}

TEST_CASE("rational decimal expansion truncates") {
    CHECK(Rat(1, 3).decimal(4) == "0.3333");
    CHECK(Rat(3, 2).decimal(2) == "1.50");
    CHECK(Rat(-1, 8).decimal(3) == "-0.125");
    CHECK(Rat(5).decimal(0) == "5");
}

TEST_CASE("rational overflow is an error, not a wrap") {
    Rat big(9'000'000'000'000'000'000ll);
    CHECK_THROWS_AS(big * big, dvrp::OverflowError);
    // 128-bit intermediates keep legitimate results exact.
    Rat a(1, 3'000'000'000ll);
    Rat b(1, 4'000'000'000ll);
    CHECK((a * Rat(3)) == Rat(1, 1'000'000'000ll));
    CHECK_THROWS_AS(a * b, dvrp::OverflowError);
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(Rat(1, 0), dvrp::ContractError);
    CHECK_THROWS_AS(Rat(1) / Rat(0), dvrp::ContractError);
}
