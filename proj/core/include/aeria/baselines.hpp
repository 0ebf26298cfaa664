#pragma once

#include <vector>

#include "aeria/auction.hpp"
#include "aeria/demand.hpp"

namespace aeria {

// A bidder as the baselines see it: the raw bid plus the device context needed
// to re-derive demands under each baseline's own partition semantics.
struct UserContext {
  Bid bid;
  DeviceLink link;
  const MeDnnProfile* profile = nullptr;
};

// Demand of a truncated single-exit variant of the profile: every input runs
// to branch `exit_position` and leaves there. Used by the pruning baselines.
DemandOutcome truncated_exit_demand(const UserContext& user, int exit_position,
                                    double edge_capacity_flops,
                                    const LatencyOptions& opts = {});

// Extracts exactly rental_price * (1 + profit_rate) from the admitted set via
// cost sharing, regardless of how much the market would bear.
AuctionResult fixed_profit_rate(const std::vector<EdgeDemand>& demands,
                                double capacity_flops, double rental_price,
                                double profit_rate = 1.0);

// Prunes each user's model to the deepest single-exit variant whose
// requirement fits an equal share of capacity, prices at the minimum density
// of the served set, and serves everyone feasible. No reserve, no consensus.
struct Amr2Result {
  AuctionOutcome outcome;
  std::vector<DemandOutcome> demands;  // pruned requirements, one per user
};
Amr2Result amr2_like(const std::vector<UserContext>& users,
                     double capacity_flops, const LatencyOptions& opts = {});

// Treats every model as single-exit at full depth, picks the split with the
// best achievable latency, then water-fills capacity toward the user with the
// worst latency until it is exhausted. Pricing reuses the slot mechanism on
// the watered allocations; winners that still miss their deadline are not
// charged.
struct IaoResult {
  AuctionResult auction;
  std::vector<DemandOutcome> demands;  // watered allocations, one per user
};
IaoResult iao_like(const std::vector<UserContext>& users,
                   double capacity_flops, double rental_price,
                   double profit_floor, Rng& rng,
                   const LatencyOptions& opts = {});

// Picks per user the deepest single-exit variant that stays feasible under the
// deadline, then prices the resulting demands with the slot mechanism.
struct EdgentResult {
  AuctionResult auction;
  std::vector<DemandOutcome> demands;
};
EdgentResult edgent_like(const std::vector<UserContext>& users,
                         double capacity_flops, double rental_price,
                         double profit_floor, Rng& rng,
                         const LatencyOptions& opts = {});

}  // namespace aeria
