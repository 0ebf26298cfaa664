#pragma once

#include <cstdint>
#include <string>

#include "aeria/latency.hpp"
#include "aeria/profile.hpp"

namespace aeria {

// One user's request for a slot: pay at most `budget` for an inference service
// that answers within `latency_req_s` at confidence threshold `sigma`.
struct Bid {
  std::uint64_t user_id = 0;
  double budget = 0.0;
  double latency_req_s = 0.0;
  double sigma = 0.0;
};

enum class DemandKind {
  EdgeRequest,  // needs edge help; partition and required speed below
  LocalOnly,    // meets the deadline fully on the device, places no bid
  Infeasible,   // no split meets the deadline within edge capacity
};

struct DemandOutcome {
  DemandKind kind = DemandKind::Infeasible;
  std::uint64_t user_id = 0;
  int partition = -1;          // chosen split, 0..depth
  double edge_flops_req = 0.0; // minimal edge speed that meets the deadline
  double density = 0.0;        // budget per unit of requested speed
  double budget = 0.0;
  double latency_req_s = 0.0;
  double sigma = 0.0;
};

// Scans every split s, keeps those with strictly positive residual time and a
// requirement strictly below edge_capacity_flops, and returns the split with
// the smallest requirement; ties go to the deepest split. A requirement of
// zero (split = depth within the deadline) comes back as LocalOnly.
DemandOutcome analyze_demand(const Bid& bid, const MeDnnProfile& profile,
                             const DeviceLink& link,
                             double edge_capacity_flops,
                             const LatencyOptions& opts = {});

}  // namespace aeria
