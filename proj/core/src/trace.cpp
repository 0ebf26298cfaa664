#include "aeria/trace.hpp"

#include <cmath>
#include <numbers>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aeria/errors.hpp"

namespace aeria {

namespace {

double wrap_get(const std::vector<double>& v, int slot) {
  if (v.empty()) throw DataError("trace: empty series");
  return v[static_cast<std::size_t>(slot) % v.size()];
}

// Rows of "index,value". Returns the values after checking the indices are
// contiguous from zero.
std::vector<std::pair<long long, std::string>> read_rows(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw DataError(path + ": missing header row");
  std::vector<std::pair<long long, std::string>> rows;
  long long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError(path + ": malformed row '" + line + "'");
    long long idx = 0;
    try {
      idx = std::stoll(line.substr(0, comma));
    } catch (const std::exception&) {
      throw DataError(path + ": bad slot index in '" + line + "'");
    }
    if (idx != expected)
      throw DataError(path + ": slot indices must be contiguous from 0, got " +
                      std::to_string(idx) + " where " +
                      std::to_string(expected) + " was expected");
    ++expected;
    rows.emplace_back(idx, line.substr(comma + 1));
  }
  if (rows.empty()) throw DataError(path + ": no data rows");
  return rows;
}

}  // namespace

double TraceBundle::price_at(int slot) const {
  return wrap_get(electricity_price, slot);
}

int TraceBundle::count_at(int slot) const {
  if (bidder_count.empty()) throw DataError("trace: empty series");
  return bidder_count[static_cast<std::size_t>(slot) % bidder_count.size()];
}

double TraceBundle::rate_at(int slot) const {
  return wrap_get(mean_rate_bps, slot);
}

std::vector<double> load_value_trace(const std::string& path) {
  std::vector<double> values;
  for (const auto& [idx, text] : read_rows(path)) {
    double v = 0;
    try {
      v = std::stod(text);
    } catch (const std::exception&) {
      throw DataError(path + ": bad value '" + text + "' at slot " +
                      std::to_string(idx));
    }
    if (!(v >= 0) || !std::isfinite(v))
      throw DataError(path + ": value must be finite and non-negative at slot " +
                      std::to_string(idx));
    values.push_back(v);
  }
  return values;
}

std::vector<int> load_count_trace(const std::string& path) {
  std::vector<int> counts;
  for (const auto& [idx, text] : read_rows(path)) {
    double v = 0;
    try {
      v = std::stod(text);
    } catch (const std::exception&) {
      throw DataError(path + ": bad count '" + text + "' at slot " +
                      std::to_string(idx));
    }
    if (v < 0 || v != std::floor(v))
      throw DataError(path + ": counts must be non-negative integers at slot " +
                      std::to_string(idx));
    counts.push_back(static_cast<int>(v));
  }
  return counts;
}

namespace {

void write_rows(const std::string& path, const std::string& header,
                const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write trace file: " + path);
  out << header << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << i << ',' << rows[i] << '\n';
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void save_value_trace(const std::vector<double>& values,
                      const std::string& value_column,
                      const std::string& path) {
  std::vector<std::string> rows;
  for (double v : values) rows.push_back(fmt(v));
  write_rows(path, "slot_index," + value_column, rows);
}

void save_count_trace(const std::vector<int>& counts,
                      const std::string& path) {
  std::vector<std::string> rows;
  for (int c : counts) rows.push_back(std::to_string(c));
  write_rows(path, "slot_index,count", rows);
}

std::vector<double> synth_price_trace(int slots, Rng& rng,
                                      double base_price_kwh) {
  std::vector<double> prices;
  for (int t = 0; t < slots; ++t) {
    const double day = 2.0 * std::numbers::pi * (t % 24) / 24.0;
    const double shape = 1.0 + 0.25 * std::sin(day - std::numbers::pi / 3.0);
    const double noise = 1.0 + 0.08 * (rng.u01() - 0.5);
    prices.push_back(std::max(0.01, base_price_kwh * shape * noise));
  }
  return prices;
}

std::vector<int> synth_count_trace(int slots, Rng& rng, int lo, int hi) {
  std::vector<int> counts;
  const double mid = 0.5 * (lo + hi), amp = 0.5 * (hi - lo);
  for (int t = 0; t < slots; ++t) {
    const double day = 2.0 * std::numbers::pi * (t % 24) / 24.0;
    const double base = mid + amp * std::cos(day);  // busy nights, quiet noon
    const int jitter = static_cast<int>(rng.below(7)) - 3;
    counts.push_back(std::clamp(static_cast<int>(std::lround(base)) + jitter,
                                lo, hi));
  }
  return counts;
}

std::vector<double> synth_rate_trace(int slots, Rng& rng, double lo_bps,
                                     double hi_bps) {
  std::vector<double> rates;
  const double mid = 0.5 * (lo_bps + hi_bps), amp = 0.35 * (hi_bps - lo_bps);
  for (int t = 0; t < slots; ++t) {
    const double day = 2.0 * std::numbers::pi * (t % 24) / 24.0;
    const double base = mid - amp * std::cos(day);  // congested nights
    const double noise = 1.0 + 0.2 * (rng.u01() - 0.5);
    rates.push_back(std::clamp(base * noise, lo_bps, hi_bps));
  }
  return rates;
}

}  // namespace aeria
