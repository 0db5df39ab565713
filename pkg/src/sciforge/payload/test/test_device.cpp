#define CATCH_CONFIG_MAIN
#include <catch2/catch.hpp>

#include <limits>
#include <stdexcept>

#include "bertha/device.hpp"

TEST_CASE("length is the difference between end and start", "[device]")
{
  bertha::device dev(1.5, 4.0);
  REQUIRE(dev.get_length() == Approx(2.5));
}

TEST_CASE("zero-length devices are valid", "[device]")
{
  bertha::device dev(0.0, 0.0);
  REQUIRE(dev.get_length() == 0.0);
}

TEST_CASE("construction from a length starts at the origin", "[device]")
{
  bertha::device dev(4.0);
  REQUIRE(dev.get_start() == 0.0);
  REQUIRE(dev.get_end() == 4.0);
  REQUIRE(dev.get_length() == Approx(4.0));
}

TEST_CASE("end before start is rejected", "[device]")
{
  REQUIRE_THROWS_AS(bertha::device(5.0, 2.0), std::invalid_argument);
}

TEST_CASE("negative lengths are rejected", "[device]")
{
  REQUIRE_THROWS_AS(bertha::device(-1.0), std::invalid_argument);
}

TEST_CASE("non-finite input is rejected", "[device]")
{
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  REQUIRE_THROWS_AS(bertha::device(nan, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(bertha::device(0.0, inf), std::invalid_argument);
  REQUIRE_THROWS_AS(bertha::device(inf), std::invalid_argument);
}
