#include "adr/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "adr/errors.hpp"

namespace adr::orbits {

namespace {

constexpr double kAngleTol = 1e-12;
constexpr double kRateRelTol = 1e-12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::string_view strip_trailing(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

// 1-based inclusive column range, as TLE documentation numbers them.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  return line.substr(first - 1, last - first + 1);
}

double parse_double(std::string_view field, std::string_view what) {
  auto s = trim(field);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("cannot parse {} from '{}'", what, field));
  return v;
}

int parse_int(std::string_view field, std::string_view what) {
  const auto s = trim(field);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("cannot parse {} from '{}'", what, field));
  return v;
}

// Catalog number, including the Alpha-5 letter prefix for ids >= 100000.
int parse_catalog_number(std::string_view field) {
  const auto s = trim(field);
  if (!s.empty() && std::isalpha(static_cast<unsigned char>(s.front()))) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s.front())));
    if (c == 'I' || c == 'O') throw ParseError(fmt::format("invalid Alpha-5 catalog number '{}'", field));
    int lead = c - 'A' + 10;
    if (c > 'I') --lead;
    if (c > 'O') --lead;
    return lead * 10000 + parse_int(s.substr(1), "catalog number");
  }
  return parse_int(s, "catalog number");
}

std::string decode_designator(std::string_view field) {
  const auto s = trim(field);
  if (s.size() < 5) return std::string(s);
  const int yy = parse_int(s.substr(0, 2), "launch year");
  const int year = yy < 57 ? 2000 + yy : 1900 + yy;
  return fmt::format("{}-{}{}", year, s.substr(2, 3), s.substr(5));
}

void check_line(std::string_view line, char number) {
  if (line.size() != 69)
    throw ParseError(fmt::format("TLE line {} must be 69 characters, got {}", number, line.size()));
  if (line[0] != number) throw ParseError(fmt::format("TLE line {} must start with '{}'", number, number));
  const char digit = line[68];
  if (digit < '0' || digit > '9') throw ParseError(fmt::format("TLE line {} has no checksum digit", number));
  const int expected = tle_checksum(line);
  if (digit - '0' != expected)
    throw ParseError(fmt::format("TLE line {} checksum mismatch: expected {}, found {}", number, expected, digit));
}

}  // namespace

double normalize_angle(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void check_elements(const OsculatingElements& el, const PhysicalConstants& k) {
  if (!(el.a > k.r_e)) throw InvalidArgument(fmt::format("semimajor axis {} m is inside the Earth", el.a));
  if (!(el.e >= 0.0 && el.e < 1.0)) throw InvalidArgument(fmt::format("eccentricity {} outside [0, 1)", el.e));
  if (!(el.i >= 0.0 && el.i <= kPi)) throw InvalidArgument(fmt::format("inclination {} outside [0, pi]", el.i));
  for (double ang : {el.raan, el.argp, el.mean_anomaly})
    if (!(ang >= 0.0 && ang < kTwoPi)) throw InvalidArgument("angles must be normalized to [0, 2pi)");
}

double days_from_civil(int year, unsigned month, unsigned day) {
  // Days since 1970-01-01 (proleptic Gregorian), shifted to 2000-01-01.
  const int y = year - (month <= 2 ? 1 : 0);
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  const long unix_days = static_cast<long>(era) * 146097 + static_cast<long>(doe) - 719468;
  return static_cast<double>(unix_days - 10957);
}

double days_from_year_doy(int year, double day_of_year) {
  return days_from_civil(year, 1, 1) + day_of_year - 1.0;
}

double parse_date(std::string_view text) {
  const auto s = trim(text);
  if (s.size() < 10 || s[4] != '-' || s[7] != '-')
    throw ParseError(fmt::format("expected YYYY-MM-DD, got '{}'", text));
  const int y = parse_int(s.substr(0, 4), "year");
  const int m = parse_int(s.substr(5, 2), "month");
  const int d = parse_int(s.substr(8, 2), "day");
  if (m < 1 || m > 12 || d < 1 || d > 31) throw ParseError(fmt::format("invalid date '{}'", text));
  double days = days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
  if (s.size() > 10) {
    if (s[10] != 'T' && s[10] != ' ') throw ParseError(fmt::format("invalid date-time '{}'", text));
    auto clock = s.substr(11);
    if (!clock.empty() && clock.back() == 'Z') clock.remove_suffix(1);
    if (clock.size() < 5 || clock[2] != ':') throw ParseError(fmt::format("invalid time in '{}'", text));
    const int hh = parse_int(clock.substr(0, 2), "hour");
    const int mm = parse_int(clock.substr(3, 2), "minute");
    double ss = 0.0;
    if (clock.size() > 5) {
      if (clock[5] != ':') throw ParseError(fmt::format("invalid time in '{}'", text));
      ss = parse_double(clock.substr(6), "seconds");
    }
    days += (hh * 3600.0 + mm * 60.0 + ss) / kSecondsPerDay;
  }
  return days;
}

int tle_checksum(std::string_view line) {
  int sum = 0;
  for (std::size_t k = 0; k < 68 && k < line.size(); ++k) {
    const char ch = line[k];
    if (ch >= '0' && ch <= '9') sum += ch - '0';
    else if (ch == '-') sum += 1;
  }
  return sum % 10;
}

DebrisObject parse_tle(std::optional<std::string_view> name_line, std::string_view line1, std::string_view line2,
                       const PhysicalConstants& k) {
  line1 = strip_trailing(line1);
  line2 = strip_trailing(line2);
  check_line(line1, '1');
  check_line(line2, '2');

  DebrisObject obj;
  obj.id = parse_catalog_number(columns(line1, 3, 7));
  if (parse_catalog_number(columns(line2, 3, 7)) != obj.id)
    throw ParseError("catalog numbers of line 1 and line 2 differ");
  obj.designator = decode_designator(columns(line1, 10, 17));

  const int yy = parse_int(columns(line1, 19, 20), "epoch year");
  const int year = yy < 57 ? 2000 + yy : 1900 + yy;
  const double doy = parse_double(columns(line1, 21, 32), "epoch day");
  if (doy < 1.0 || doy >= 367.0) throw ParseError(fmt::format("epoch day {} out of range", doy));

  OsculatingElements& el = obj.elements;
  el.epoch = days_from_year_doy(year, doy);
  constexpr double deg = kPi / 180.0;
  el.i = parse_double(columns(line2, 9, 16), "inclination") * deg;
  el.raan = normalize_angle(parse_double(columns(line2, 18, 25), "RAAN") * deg);
  const auto ecc = trim(columns(line2, 27, 33));
  if (ecc.empty() || !std::all_of(ecc.begin(), ecc.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw ParseError(fmt::format("cannot parse eccentricity from '{}'", columns(line2, 27, 33)));
  el.e = parse_double(std::string("0.") + std::string(ecc), "eccentricity");
  el.argp = normalize_angle(parse_double(columns(line2, 35, 42), "argument of perigee") * deg);
  el.mean_anomaly = normalize_angle(parse_double(columns(line2, 44, 51), "mean anomaly") * deg);
  const double revs_per_day = parse_double(columns(line2, 53, 63), "mean motion");
  if (!(revs_per_day > 0.0)) throw ParseError("mean motion must be positive");
  const double n = revs_per_day * kTwoPi / kSecondsPerDay;
  el.a = std::cbrt(k.mu / (n * n));

  if (el.e >= 1.0) throw ParseError(fmt::format("eccentricity {} is not elliptic", el.e));
  if (el.i > kPi) throw ParseError(fmt::format("inclination {} rad exceeds pi", el.i));
  if (!(el.a > k.r_e)) throw ParseError(fmt::format("semimajor axis {} m is inside the Earth", el.a));

  if (name_line) {
    auto name = trim(*name_line);
    if (name.starts_with("0 ")) name = trim(name.substr(2));
    obj.name = std::string(name);
  }
  if (obj.name.empty()) obj.name = obj.designator;
  return obj;
}

double raan_rate(const OsculatingElements& el, const PhysicalConstants& k) {
  const double n = std::sqrt(k.mu / (el.a * el.a * el.a));
  const double p = el.a * (1.0 - el.e * el.e);
  const double ratio = k.r_e / p;
  return -1.5 * ratio * ratio * n * k.j2 * std::cos(el.i) * kSecondsPerDay;
}

double raan_at(const OsculatingElements& el, double rate_per_day, double t) {
  if (t < el.epoch)
    throw InvalidArgument(fmt::format("cannot propagate backwards: t = {} precedes epoch {}", t, el.epoch));
  return normalize_angle(el.raan + rate_per_day * (t - el.epoch));
}

double alignment_time(double omega_j, double omega_k, double rate_j, double rate_k, double t_max) {
  const double d_omega = normalize_angle(omega_j) - normalize_angle(omega_k);
  const double d_rate = rate_k - rate_j;
  if (std::abs(d_omega) <= kAngleTol || std::abs(d_omega) >= kTwoPi - kAngleTol) return 0.0;
  const double scale = std::max(std::abs(rate_j), std::abs(rate_k));
  if (d_rate == 0.0 || std::abs(d_rate) <= kRateRelTol * scale) return t_max + 1.0;

  int K = 0;
  if (d_omega >= 0.0 && d_rate < 0.0) K = -1;
  else if (d_omega < 0.0 && d_rate >= 0.0) K = 1;
  double t = (d_omega + K * kTwoPi) / d_rate;
  if (t < 0.0) t += kTwoPi / std::abs(d_rate);
  return t;
}

double transfer_cost(const OsculatingElements& a, const OsculatingElements& b, const PhysicalConstants& k) {
  const OsculatingElements& lo = a.a <= b.a ? a : b;
  const OsculatingElements& hi = a.a <= b.a ? b : a;
  const double v = std::sqrt(k.mu / lo.a);
  const double da = (hi.a - lo.a) / lo.a;
  const double de = std::abs(hi.e - lo.e);
  const double di = std::abs(hi.i - lo.i);
  return 0.5 * v * std::sqrt(da * da + de * de + di * di);
}

double disposal_cost(const OsculatingElements& el, const PhysicalConstants& k) {
  if (el.a < k.r_p)
    throw DataError(fmt::format("semimajor axis {:.1f} m is below the disposal radius {:.1f} m (already decaying)",
                                el.a, k.r_p));
  return std::sqrt(k.mu / k.r_p) - std::sqrt(k.mu / el.a);
}

ProblemInstance build_instance(std::span<const DebrisObject> catalog, double t0, int n_s, double t_max, double t_s,
                               const PhysicalConstants& k) {
  if (catalog.empty()) throw InvalidArgument("catalog is empty");
  const auto m = catalog.size();
  if (n_s < 1 || static_cast<std::size_t>(n_s) > m)
    throw InvalidArgument(fmt::format("n_s must lie in 1..{}, got {}", m, n_s));

  std::set<int> ids;
  for (const auto& d : catalog)
    if (!ids.insert(d.id).second) throw InvalidArgument(fmt::format("duplicate catalog id {}", d.id));

  std::vector<double> rate(m);
  std::vector<double> omega(m);
  for (std::size_t q = 0; q < m; ++q) {
    const auto& el = catalog[q].elements;
    try {
      check_elements(el, k);
      rate[q] = raan_rate(el, k);
      omega[q] = raan_at(el, rate[q], t0);
    } catch (const Error& e) {
      throw DataError(fmt::format("debris {} ({}): {}", catalog[q].id, catalog[q].name, e.what()));
    }
  }

  SquareMatrix T(m);
  SquareMatrix C(m);
  std::vector<double> c(m);
  std::vector<std::string> labels;
  labels.reserve(m);
  for (std::size_t p = 0; p < m; ++p) {
    const auto& obj = catalog[p];
    labels.push_back(obj.designator.empty() ? obj.name : obj.designator);
    try {
      c[p] = disposal_cost(obj.elements, k);
    } catch (const Error& e) {
      throw DataError(fmt::format("debris {} ({}): {}", obj.id, obj.name, e.what()));
    }
    for (std::size_t q = p + 1; q < m; ++q) {
      T(p, q) = T(q, p) = alignment_time(omega[p], omega[q], rate[p], rate[q], t_max);
      C(p, q) = C(q, p) = transfer_cost(obj.elements, catalog[q].elements, k);
    }
  }
  auto inst = instance_from_real_tables(n_s, t_max, t_s, std::move(labels), T, C, c);
  inst.cost_unit = "m/s";
  return inst;
}

}  // namespace adr::orbits
