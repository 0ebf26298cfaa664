#pragma once

#include <string>

#include "aeria/simulator.hpp"

namespace aeria {

// Full-fidelity JSON report: config echo, per-slot metrics, aggregates.
// Doubles round-trip exactly.
std::string report_to_json(const RunReport& report, const MarketConfig& config,
                           int indent = 2);

// Flat per-slot table, one row per (slot, mechanism), numbers printed with
// 12 significant digits.
std::string report_to_csv(const RunReport& report);

void save_report(const RunReport& report, const MarketConfig& config,
                 const std::string& path, const std::string& format);

}  // namespace aeria
