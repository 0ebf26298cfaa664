#include "aeria/demand.hpp"

#include <stdexcept>

namespace aeria {

DemandOutcome analyze_demand(const Bid& bid, const MeDnnProfile& profile,
                             const DeviceLink& link,
                             double edge_capacity_flops,
                             const LatencyOptions& opts) {
  if (!(bid.latency_req_s > 0))
    throw std::invalid_argument("analyze_demand: deadline must be positive");
  if (bid.budget < 0)
    throw std::invalid_argument("analyze_demand: negative budget");
  if (!(edge_capacity_flops > 0))
    throw std::invalid_argument("analyze_demand: capacity must be positive");

  DemandOutcome out;
  out.user_id = bid.user_id;
  out.budget = bid.budget;
  out.latency_req_s = bid.latency_req_s;
  out.sigma = bid.sigma;

  bool found = false;
  double best_req = 0.0;
  int best_split = -1;
  for (int s = 0; s <= profile.depth(); ++s) {
    const double residual =
        bid.latency_req_s - device_latency(profile, bid.sigma, s, link.device_flops) -
        network_latency(profile, bid.sigma, s, link, opts.transmission);
    if (!(residual > 0)) continue;  // deadline already gone before the edge
    const double work = edge_flop(profile, bid.sigma, s);
    const double req = work == 0.0 ? 0.0 : work / residual;
    if (work > 0.0 && !(req < edge_capacity_flops)) continue;  // beyond the server
    if (!found || req <= best_req) {  // <= : ties go to the deeper split
      found = true;
      best_req = req;
      best_split = s;
    }
  }

  if (!found) {
    out.kind = DemandKind::Infeasible;
    return out;
  }
  if (best_req == 0.0) {
    out.kind = DemandKind::LocalOnly;
    out.partition = best_split;
    return out;
  }
  out.kind = DemandKind::EdgeRequest;
  out.partition = best_split;
  out.edge_flops_req = best_req;
  out.density = bid.budget / best_req;
  return out;
}

}  // namespace aeria
