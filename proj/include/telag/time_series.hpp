// A uniformly sampled scalar sequence with sampling metadata, plus the
// timezone-naive calendar arithmetic the ingest pipeline needs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telag/errors.hpp"

namespace telag {

struct TimeSeries {
  std::string name;
  std::vector<double> values;
  std::int64_t sample_interval_s = 0;  // 0 when the series is plain-indexed
  std::int64_t start_epoch_s = 0;

  std::size_t size() const { return values.size(); }
};

struct CivilDate {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31
};

// Days since 1970-01-01 of a proleptic Gregorian date (Howard Hinnant's
// civil-days algorithm).
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline std::int64_t civil_to_epoch(const CivilDate& date, unsigned hour = 0,
                                   unsigned minute = 0, unsigned second = 0) {
  return days_from_civil(date.year, date.month, date.day) * 86400 +
         static_cast<std::int64_t>(hour) * 3600 + static_cast<std::int64_t>(minute) * 60 +
         second;
}

inline std::int64_t epoch_day(std::int64_t epoch_s) {
  // floor division so pre-1970 timestamps land on the right day
  return epoch_s >= 0 ? epoch_s / 86400 : (epoch_s - 86399) / 86400;
}

namespace detail {

inline bool parse_uint(std::string_view text, std::size_t& pos, unsigned max_digits,
                       unsigned& out) {
  unsigned value = 0, digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9' && digits < max_digits) {
    value = value * 10 + static_cast<unsigned>(text[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0) return false;
  out = value;
  return true;
}

inline bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

inline bool valid_date(unsigned year, unsigned month, unsigned day) {
  if (month < 1 || month > 12 || day < 1 || day > 31) return false;
  return year >= 1 && year <= 9999;
}

}  // namespace detail

enum class DatetimeFormat { iso8601, us_slash };

// ISO-8601 "YYYY-MM-DD HH:MM[:SS]" (space or 'T' separator).
inline bool try_parse_iso8601(std::string_view text, std::int64_t& epoch_s) {
  std::size_t pos = 0;
  unsigned y, mo, d, h, mi, s = 0;
  if (!detail::parse_uint(text, pos, 4, y) || !detail::expect(text, pos, '-') ||
      !detail::parse_uint(text, pos, 2, mo) || !detail::expect(text, pos, '-') ||
      !detail::parse_uint(text, pos, 2, d))
    return false;
  if (pos >= text.size() || (text[pos] != ' ' && text[pos] != 'T')) return false;
  ++pos;
  if (!detail::parse_uint(text, pos, 2, h) || !detail::expect(text, pos, ':') ||
      !detail::parse_uint(text, pos, 2, mi))
    return false;
  if (pos < text.size() && text[pos] == ':') {
    ++pos;
    if (!detail::parse_uint(text, pos, 2, s)) return false;
  }
  if (pos != text.size()) return false;
  if (!detail::valid_date(y, mo, d) || h > 23 || mi > 59 || s > 59) return false;
  epoch_s = civil_to_epoch({static_cast<int>(y), mo, d}, h, mi, s);
  return true;
}

// "M/D/YYYY H:MM[:SS]" as exported by the UCI Tetouan dataset.
inline bool try_parse_us_slash(std::string_view text, std::int64_t& epoch_s) {
  std::size_t pos = 0;
  unsigned mo, d, y, h, mi, s = 0;
  if (!detail::parse_uint(text, pos, 2, mo) || !detail::expect(text, pos, '/') ||
      !detail::parse_uint(text, pos, 2, d) || !detail::expect(text, pos, '/') ||
      !detail::parse_uint(text, pos, 4, y))
    return false;
  if (!detail::expect(text, pos, ' ')) return false;
  if (!detail::parse_uint(text, pos, 2, h) || !detail::expect(text, pos, ':') ||
      !detail::parse_uint(text, pos, 2, mi))
    return false;
  if (pos < text.size() && text[pos] == ':') {
    ++pos;
    if (!detail::parse_uint(text, pos, 2, s)) return false;
  }
  if (pos != text.size()) return false;
  if (!detail::valid_date(y, mo, d) || h > 23 || mi > 59 || s > 59) return false;
  epoch_s = civil_to_epoch({static_cast<int>(y), mo, d}, h, mi, s);
  return true;
}

inline std::int64_t parse_datetime(std::string_view text, DatetimeFormat format,
                                   const std::string& context) {
  std::int64_t epoch = 0;
  const bool ok = format == DatetimeFormat::iso8601 ? try_parse_iso8601(text, epoch)
                                                    : try_parse_us_slash(text, epoch);
  if (!ok) throw IoError(context + ": unparseable datetime '" + std::string(text) + "'");
  return epoch;
}

inline DatetimeFormat detect_datetime_format(std::string_view first_value,
                                             const std::string& context) {
  std::int64_t ignored = 0;
  if (try_parse_iso8601(first_value, ignored)) return DatetimeFormat::iso8601;
  if (try_parse_us_slash(first_value, ignored)) return DatetimeFormat::us_slash;
  throw IoError(context + ": unparseable datetime '" + std::string(first_value) +
                "' (expected ISO-8601 or M/D/YYYY H:MM)");
}

// "YYYY-MM-DD"
inline CivilDate parse_civil_date(std::string_view text, const std::string& context) {
  std::size_t pos = 0;
  unsigned y, mo, d;
  if (!detail::parse_uint(text, pos, 4, y) || !detail::expect(text, pos, '-') ||
      !detail::parse_uint(text, pos, 2, mo) || !detail::expect(text, pos, '-') ||
      !detail::parse_uint(text, pos, 2, d) || pos != text.size() ||
      !detail::valid_date(y, mo, d))
    throw InvalidInputError(context + ": expected YYYY-MM-DD, got '" + std::string(text) + "'");
  return {static_cast<int>(y), mo, d};
}

}  // namespace telag
