#include "mmbh/units.hpp"

#include <cmath>

namespace mmbh {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double dbm_per_mhz_to_watts_per_hz(double dbm_per_mhz) {
  return dbm_to_watts(dbm_per_mhz) / 1e6;
}

double watts_per_hz_to_dbm_per_mhz(double watts_per_hz) {
  return watts_to_dbm(watts_per_hz * 1e6);
}

double degrees_to_radians(double degrees) { return degrees * kPi / 180.0; }

double radians_to_degrees(double radians) { return radians * 180.0 / kPi; }

}  // namespace mmbh
