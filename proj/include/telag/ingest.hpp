// Loading, windowing, and aligning real time-series CSV data into series
// pairs for lag scanning, plus serialization of simulated trajectories to the
// same schema.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "telag/csv.hpp"
#include "telag/errors.hpp"
#include "telag/estimator_core.hpp"
#include "telag/lag_scan.hpp"
#include "telag/parallel.hpp"
#include "telag/simulators.hpp"
#include "telag/time_series.hpp"

namespace telag {

// Role-to-column mapping of a dataset. The default profile is the UCI
// Tetouan power-consumption export: one datetime column, five weather
// factors, three distribution-network consumption targets.
struct DatasetSchema {
  std::string datetime_column = "DateTime";
  std::vector<std::string> factor_columns = {
      "Temperature", "Humidity", "Wind Speed", "general diffuse flows", "diffuse flows"};
  std::vector<std::string> target_columns = {
      "Zone 1 Power Consumption", "Zone 2  Power Consumption", "Zone 3  Power Consumption"};

  static DatasetSchema tetouan() { return DatasetSchema{}; }

  // JSON document with keys "datetime", "factors", "targets".
  static DatasetSchema from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema file '" + path + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("schema file '" + path + "': " + e.what());
    }
    DatasetSchema schema;
    try {
      schema.datetime_column = doc.at("datetime").get<std::string>();
      schema.factor_columns = doc.at("factors").get<std::vector<std::string>>();
      schema.target_columns = doc.at("targets").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("schema file '" + path + "': " + e.what());
    }
    if (schema.factor_columns.empty() || schema.target_columns.empty())
      throw SchemaError("schema file '" + path + "': factors and targets must be non-empty");
    return schema;
  }
};

struct DayWindow {
  CivilDate start;
  CivilDate end;  // inclusive

  // "YYYY-MM-DD..YYYY-MM-DD"
  static DayWindow parse(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
      throw InvalidInputError("window: expected YYYY-MM-DD..YYYY-MM-DD, got '" + text + "'");
    DayWindow w;
    w.start = parse_civil_date(text.substr(0, sep), "window start");
    w.end = parse_civil_date(text.substr(sep + 2), "window end");
    if (civil_to_epoch(w.start) > civil_to_epoch(w.end))
      throw InvalidInputError("window: start is after end");
    return w;
  }
};

struct LoadOptions {
  bool forward_fill = false;  // fill sampling gaps with the previous row
  bool hourly_mean = false;   // resample to hourly means after windowing
};

struct LoadedDataset {
  std::vector<TimeSeries> factors;
  std::vector<TimeSeries> targets;
  std::int64_t sample_interval_s = 0;
  std::int64_t start_epoch_s = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool prev_space = false;
  for (const char c : trim(s)) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (space && prev_space) continue;
    out.push_back(space ? ' ' : c);
    prev_space = space;
  }
  return out;
}

// Exact match after trimming; falls back to whitespace-collapsed comparison
// (the UCI export has double spaces in two zone names, copies vary).
inline std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  const std::string wanted = trim(name);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (trim(header[i]) == wanted) return i;
  const std::string collapsed = collapse_spaces(name);
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (collapse_spaces(header[i]) == collapsed) {
      if (found) throw SchemaError("column '" + name + "' is ambiguous in the header");
      found = i;
    }
  }
  if (!found) throw SchemaError("missing column '" + name + "'");
  return *found;
}

}  // namespace detail

// Reads the CSV, clips it to the calendar-day window (both endpoints
// inclusive), verifies uniform sampling, and returns one TimeSeries per
// schema column.
inline LoadedDataset load_csv(const std::string& path, const DatasetSchema& schema,
                              const DayWindow& window, const LoadOptions& options = {}) {
  const CsvTable table = read_csv(path);
  const std::size_t dt_col = detail::find_column(table.header, schema.datetime_column);
  std::vector<std::size_t> factor_cols, target_cols;
  for (const auto& name : schema.factor_columns)
    factor_cols.push_back(detail::find_column(table.header, name));
  for (const auto& name : schema.target_columns)
    target_cols.push_back(detail::find_column(table.header, name));

  if (table.rows.empty()) throw InvalidInputError(path + ": no data rows");
  const DatetimeFormat format =
      detect_datetime_format(detail::trim(table.rows.front()[dt_col]), path + " row 2");

  const std::int64_t day_lo = days_from_civil(window.start.year, window.start.month, window.start.day);
  const std::int64_t day_hi = days_from_civil(window.end.year, window.end.month, window.end.day);

  std::vector<std::int64_t> stamps;
  std::vector<std::vector<double>> factor_vals(factor_cols.size());
  std::vector<std::vector<double>> target_vals(target_cols.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string rowctx = path + " row " + std::to_string(r + 2);
    const std::int64_t epoch =
        parse_datetime(detail::trim(table.rows[r][dt_col]), format, rowctx);
    const std::int64_t day = epoch_day(epoch);
    if (day < day_lo || day > day_hi) continue;
    stamps.push_back(epoch);
    for (std::size_t i = 0; i < factor_cols.size(); ++i)
      factor_vals[i].push_back(parse_double(
          table.rows[r][factor_cols[i]], rowctx + " column '" + schema.factor_columns[i] + "'"));
    for (std::size_t i = 0; i < target_cols.size(); ++i)
      target_vals[i].push_back(parse_double(
          table.rows[r][target_cols[i]], rowctx + " column '" + schema.target_columns[i] + "'"));
  }
  if (stamps.empty()) throw InvalidInputError(path + ": window selects no rows");
  if (stamps.size() < 2) throw InvalidInputError(path + ": window selects a single row");

  const std::int64_t interval = stamps[1] - stamps[0];
  if (interval <= 0) throw IoError(path + ": timestamps are not strictly increasing");
  for (std::size_t i = 1; i < stamps.size(); ++i) {
    const std::int64_t step = stamps[i] - stamps[i - 1];
    if (step == interval) continue;
    if (!options.forward_fill || step <= 0 || step % interval != 0)
      throw InvalidInputError(path + ": sampling gap before sample " + std::to_string(i) +
                              " (step " + std::to_string(step) + " s, expected " +
                              std::to_string(interval) + " s)");
    const std::size_t missing = static_cast<std::size_t>(step / interval) - 1;
    for (std::size_t g = 0; g < missing; ++g) {
      for (auto& col : factor_vals) {
        const double fill = col[i - 1];
        col.insert(col.begin() + static_cast<std::ptrdiff_t>(i), fill);
      }
      for (auto& col : target_vals) {
        const double fill = col[i - 1];
        col.insert(col.begin() + static_cast<std::ptrdiff_t>(i), fill);
      }
      const std::int64_t stamp = stamps[i - 1] + interval;
      stamps.insert(stamps.begin() + static_cast<std::ptrdiff_t>(i), stamp);
      ++i;
    }
  }

  LoadedDataset out;
  out.sample_interval_s = interval;
  out.start_epoch_s = stamps.front();
  auto make_series = [&](const std::string& name, std::vector<double>& vals) {
    TimeSeries ts;
    ts.name = name;
    ts.sample_interval_s = interval;
    ts.start_epoch_s = stamps.front();
    ts.values = std::move(vals);
    return ts;
  };
  for (std::size_t i = 0; i < factor_cols.size(); ++i)
    out.factors.push_back(make_series(schema.factor_columns[i], factor_vals[i]));
  for (std::size_t i = 0; i < target_cols.size(); ++i)
    out.targets.push_back(make_series(schema.target_columns[i], target_vals[i]));

  if (options.hourly_mean) {
    if (3600 % interval != 0)
      throw ConfigError(path + ": hourly resampling needs an interval dividing one hour");
    const std::size_t per_hour = static_cast<std::size_t>(3600 / interval);
    auto resample = [&](TimeSeries& ts) {
      std::vector<double> hourly;
      hourly.reserve(ts.values.size() / per_hour);
      for (std::size_t i = 0; i + per_hour <= ts.values.size(); i += per_hour) {
        double sum = 0.0;
        for (std::size_t j = 0; j < per_hour; ++j) sum += ts.values[i + j];
        hourly.push_back(sum / static_cast<double>(per_hour));
      }
      ts.values = std::move(hourly);
      ts.sample_interval_s = 3600;
    };
    for (auto& ts : out.factors) resample(ts);
    for (auto& ts : out.targets) resample(ts);
    out.sample_interval_s = 3600;
  }
  return out;
}

// Hour lags converted to sample counts: {h * 3600/interval : h = hmin..hmax}.
inline std::vector<std::size_t> lag_grid_hours(unsigned hmin, unsigned hmax,
                                               std::int64_t sample_interval_s) {
  if (hmin < 1 || hmin > hmax) throw ConfigError("lag hours: need 1 <= hmin <= hmax");
  if (sample_interval_s <= 0 || 3600 % sample_interval_s != 0)
    throw ConfigError("sample interval " + std::to_string(sample_interval_s) +
                      " s does not divide one hour");
  const std::size_t per_hour = static_cast<std::size_t>(3600 / sample_interval_s);
  std::vector<std::size_t> lags;
  lags.reserve(hmax - hmin + 1);
  for (unsigned h = hmin; h <= hmax; ++h) lags.push_back(h * per_hour);
  return lags;
}

struct PairCurve {
  std::string factor;
  std::string target;
  TeCurve curve;
};

// One TE-vs-lag curve per (factor, target) pair over a shared lag grid.
// Evaluations are parallel across pairs and order-independent.
inline std::vector<PairCurve> pairwise_scan_matrix(const std::vector<TimeSeries>& factors,
                                                   const std::vector<TimeSeries>& targets,
                                                   const std::vector<std::size_t>& lags,
                                                   std::size_t history_order,
                                                   const EstimatorConfig& estimator,
                                                   std::size_t jobs = 1) {
  if (factors.empty() || targets.empty())
    throw InvalidInputError("scan matrix: need at least one factor and one target");
  const std::size_t len = factors.front().size();
  const std::int64_t interval = factors.front().sample_interval_s;
  auto check = [&](const TimeSeries& ts) {
    if (ts.size() != len)
      throw InvalidInputError("scan matrix: series '" + ts.name + "' has length " +
                              std::to_string(ts.size()) + ", expected " + std::to_string(len));
    if (ts.sample_interval_s != interval)
      throw InvalidInputError("scan matrix: series '" + ts.name + "' has a different interval");
    if (detail::is_constant(ts.values))
      throw DegenerateSampleError("series '" + ts.name + "' is constant over the window");
  };
  for (const auto& ts : factors) check(ts);
  for (const auto& ts : targets) check(ts);

  std::vector<PairCurve> result(factors.size() * targets.size());
  parallel_for(result.size(), jobs, [&](std::size_t i) {
    const TimeSeries& f = factors[i / targets.size()];
    const TimeSeries& t = targets[i % targets.size()];
    result[i].factor = f.name;
    result[i].target = t.name;
    result[i].curve = with_context("factor '" + f.name + "' -> target '" + t.name + "'", [&] {
      return scan_lag_list(f.values, t.values, lags, history_order, estimator, 1);
    });
  });
  return result;
}

// Trajectory CSV schema shared with the simulators: header `index,x[,y]`.
inline void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
  const bool has_output = !tr.output.empty();
  std::vector<std::string> header = has_output ? std::vector<std::string>{"index", "x", "y"}
                                               : std::vector<std::string>{"index", "x"};
  std::vector<std::vector<std::string>> rows;
  rows.reserve(tr.state.size());
  for (std::size_t i = 0; i < tr.state.size(); ++i) {
    std::vector<std::string> row{std::to_string(i + 1), format_double(tr.state[i])};
    if (has_output) row.push_back(format_double(tr.output[i]));
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

// Reads one numeric column from any CSV with a header.
inline std::vector<double> read_series_column(const std::string& path,
                                              const std::string& column) {
  const CsvTable table = read_csv(path);
  const std::size_t col = detail::find_column(table.header, column);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    values.push_back(parse_double(table.rows[r][col], path + " row " + std::to_string(r + 2) +
                                                          " column '" + column + "'"));
  return values;
}

}  // namespace telag
