#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeria/rng.hpp"

namespace aeria {

// Per-slot exogenous series. A run longer than a trace wraps around to the
// start, so a one-day trace drives a multi-day simulation cyclically.
struct TraceBundle {
  std::vector<double> electricity_price;  // $/kWh
  std::vector<int> bidder_count;
  std::vector<double> mean_rate_bps;

  bool has_prices() const { return !electricity_price.empty(); }
  bool has_counts() const { return !bidder_count.empty(); }
  bool has_rates() const { return !mean_rate_bps.empty(); }

  double price_at(int slot) const;
  int count_at(int slot) const;
  double rate_at(int slot) const;
};

// CSV loaders. Each file carries a header row and contiguous slot indices
// starting at 0; gaps, negative values or fractional counts raise DataError.
std::vector<double> load_value_trace(const std::string& path);
std::vector<int> load_count_trace(const std::string& path);

void save_value_trace(const std::vector<double>& values,
                      const std::string& value_column,
                      const std::string& path);
void save_count_trace(const std::vector<int>& counts, const std::string& path);

// Synthetic day-cycle generators for the three series.
std::vector<double> synth_price_trace(int slots, Rng& rng,
                                      double base_price_kwh = 0.1056);
std::vector<int> synth_count_trace(int slots, Rng& rng, int lo = 20,
                                   int hi = 60);
std::vector<double> synth_rate_trace(int slots, Rng& rng, double lo_bps = 7e6,
                                     double hi_bps = 60e6);

}  // namespace aeria
