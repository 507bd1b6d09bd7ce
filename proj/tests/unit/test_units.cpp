#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "mmbh/units.hpp"
#include "reference_values.hpp"

using namespace mmbh;

TEST_CASE("dBm round trip stays within 1e-9 relative") {
  for (double dbm : {-134.0, -30.0, 0.0, 10.0, 40.0, 43.5}) {
    CHECK(watts_to_dbm(dbm_to_watts(dbm)) == doctest::Approx(dbm).epsilon(1e-9));
  }
  for (double w : {1e-16, 1e-3, 1.0, 10.0}) {
    CHECK(dbm_to_watts(watts_to_dbm(w)) == doctest::Approx(w).epsilon(1e-9));
  }
}

TEST_CASE("fixed conversion points") {
  CHECK(dbm_to_watts(40.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(db_to_linear(3.0) == doctest::Approx(1.9952623149688795).epsilon(1e-15));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("noise density per MHz converts to W/Hz") {
  CHECK(dbm_per_mhz_to_watts_per_hz(-134.0) == doctest::Approx(ref::kNoisePsd).epsilon(1e-13));
  CHECK(watts_per_hz_to_dbm_per_mhz(ref::kNoisePsd) == doctest::Approx(-134.0).epsilon(1e-12));
}

TEST_CASE("degrees and radians") {
  CHECK(degrees_to_radians(180.0) == doctest::Approx(kPi));
  CHECK(radians_to_degrees(kPi / 2.0) == doctest::Approx(90.0));
}
