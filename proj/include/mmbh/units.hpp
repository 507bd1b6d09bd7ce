#pragma once

// Unit conversions. Everything inside the library is linear SI; dB, dBm and
// dBm/MHz only appear when reading configuration or formatting reports.

namespace mmbh {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

double db_to_linear(double db);
double linear_to_db(double linear);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Noise power spectral density given per MHz of bandwidth.
double dbm_per_mhz_to_watts_per_hz(double dbm_per_mhz);
double watts_per_hz_to_dbm_per_mhz(double watts_per_hz);

double degrees_to_radians(double degrees);
double radians_to_degrees(double radians);

}  // namespace mmbh
