#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adr/instance.hpp"

namespace adr::orbits {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSecondsPerDay = 86400.0;

/// Earth model used for every orbital quantity in the toolkit.
///
/// J2 keeps the negative sign of the source geopotential tabulation, so the
/// nodal drift formula below yields positive rates for prograde orbits.
struct PhysicalConstants {
  double mu = 3.986004418e14;       // m^3/s^2
  double r_e = 6.378e6;             // m, equatorial radius
  double j2 = -0.1082635854e-2;
  double r_p = 1.02 * 6.378e6;      // m, disposal perigee radius
};

inline constexpr PhysicalConstants kEarth{};

/// Osculating Keplerian elements at an epoch.
/// Angles in radians, `a` in metres, `epoch` in days since 2000-01-01 00:00 UTC.
struct OsculatingElements {
  double a = 0.0;
  double e = 0.0;
  double i = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double mean_anomaly = 0.0;
  double epoch = 0.0;
};

struct DebrisObject {
  int id = 0;                 // NORAD catalog number
  std::string name;           // name line if present, else the designator
  std::string designator;     // e.g. "1982-092RP"
  OsculatingElements elements;
};

/// Throws InvalidArgument if the element set breaks the type invariants.
void check_elements(const OsculatingElements& el, const PhysicalConstants& k = kEarth);

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double rad);

// Calendar helpers. All epochs are days since 2000-01-01 00:00 UTC.
double days_from_civil(int year, unsigned month, unsigned day);
double days_from_year_doy(int year, double day_of_year);
/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM[:SS]" (UTC).
double parse_date(std::string_view text);

/// Mod-10 TLE checksum of the first 68 columns ('-' counts as 1).
int tle_checksum(std::string_view line);

/// Parses one TLE record. Data lines must be 69 columns after trailing
/// whitespace is stripped and carry valid checksums.
DebrisObject parse_tle(std::optional<std::string_view> name_line, std::string_view line1,
                       std::string_view line2, const PhysicalConstants& k = kEarth);

/// Nodal regression rate under J2, rad/day.
double raan_rate(const OsculatingElements& el, const PhysicalConstants& k = kEarth);

/// RAAN at absolute time `t` (days) by linear drift from the element epoch.
double raan_at(const OsculatingElements& el, double rate_per_day, double t);

/// Days after the reference time until the nodes of j and k first coincide.
/// Equal drift rates give 0 when already aligned and `t_max + 1` otherwise.
double alignment_time(double omega_j, double omega_k, double rate_j, double rate_k, double t_max);

/// Approximate delta-v (m/s) of a RAAN-aligned transfer between two orbits.
double transfer_cost(const OsculatingElements& a, const OsculatingElements& b,
                     const PhysicalConstants& k = kEarth);

/// Delta-v (m/s) to lower a near-circular orbit to the disposal perigee.
double disposal_cost(const OsculatingElements& el, const PhysicalConstants& k = kEarth);

/// Reduces a catalog to the time/cost tables of a problem instance.
/// `t0` is the absolute reference time (days since 2000-01-01); all table
/// times are measured from it.
ProblemInstance build_instance(std::span<const DebrisObject> catalog, double t0, int n_s,
                               double t_max, double t_s, const PhysicalConstants& k = kEarth);

}  // namespace adr::orbits
