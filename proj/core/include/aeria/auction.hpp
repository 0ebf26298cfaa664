#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeria/rng.hpp"

namespace aeria {

// A qualified request entering the slot market.
struct EdgeDemand {
  std::uint64_t user_id = 0;
  double budget = 0.0;   // willingness to pay for the slot
  double flops = 0.0;    // required edge speed, must be > 0
  int partition = -1;    // carried through to the award

  double density() const { return budget / flops; }
};

// Minimum admissible unit price: the provider's cost plus profit floor spread
// over the whole capacity.
double reserve_density(double rental_price, double profit_floor,
                       double capacity_flops);

// Omniscient single-price benchmark. Requests below the reserve are dropped,
// the rest are admitted greedily by density while they strictly fit, and the
// revenue of every admitted prefix at that prefix's lowest density is
// maximized.
struct RosoResult {
  std::vector<std::size_t> admitted;  // indices into the input, density order
  double upper_revenue = 0.0;         // best single-price revenue
  double prefix_volume = 0.0;         // FLOPS sold at the maximizing price
  int prefix_len = 0;                 // admitted prefix achieving the maximum
  double max_admitted_flops = 0.0;    // largest admitted request
  double reserve = 0.0;               // density cutoff that was applied
};

RosoResult roso(const std::vector<EdgeDemand>& demands, double capacity_flops,
                double reserve);

// Sensitivity of the single-price benchmark to one bid: upper_revenue can drop
// by at most a factor (prefix_volume - max_admitted_flops) / prefix_volume
// when any single bid is removed. Undefined (nullopt) when the maximizing
// prefix is carried by a single request.
std::optional<double> delta(const RosoResult& r);

// Grid base maximizing the guaranteed share (1/ln y)(1/delta - 1/y); the
// unique root of ln y = y/delta - 1 beyond delta. Requires delta > 1.
double optimal_y(double delta);

// The guaranteed expected share at base y; equals 1/y when y = optimal_y.
double consensus_bound_factor(double delta, double y);

// Rounds value down onto the randomized grid  { y^(k + epsilon) : k integer }.
// The result always lands in (value / y, value].
double consensus_estimate(double value, double y, double epsilon);

struct CentreResult {
  double delta = 0.0;
  double y = 0.0;
  double epsilon = 0.0;         // accepted offset draw
  double target_revenue = 0.0;  // grid estimate of upper_revenue
  int draws = 0;                // offset draws consumed
};

// Draws grid offsets until the estimate falls to upper_revenue / delta or
// lower, so the estimate stays unchanged when any one bid is removed. Throws
// std::runtime_error once max_draws offsets were rejected.
CentreResult centre(const RosoResult& r, Rng& rng, int max_draws = 10000);

struct Award {
  std::uint64_t user_id = 0;
  double flops = 0.0;
  int partition = -1;
  double payment = 0.0;
};

enum class PricingPath { NoTrade, PostedPrice, CostShare };

enum class NoTradeReason {
  None,
  NoBidders,          // no demand cleared the reserve
  TargetUnaffordable, // cost sharing emptied the admitted set
  RevenueBelowFloor,  // final revenue under rental cost plus profit floor
};

struct AuctionOutcome {
  bool trade = false;
  double price = 0.0;           // flat unit price every winner pays
  double revenue = 0.0;
  double target_revenue = 0.0;  // nonzero only on the cost-share path
  std::vector<Award> winners;
  std::vector<std::uint64_t> removed;  // dropped by cost sharing, in order
  PricingPath path = PricingPath::NoTrade;
  NoTradeReason reason = NoTradeReason::None;
};

// Shares target_revenue at a flat unit price over the admitted set, dropping
// the lowest-density request while it cannot afford the current price. On
// success revenue equals target_revenue exactly.
AuctionOutcome cost_share(double target_revenue,
                          const std::vector<EdgeDemand>& demands,
                          const RosoResult& r);

struct AuctionResult {
  AuctionOutcome outcome;
  RosoResult roso;
  std::optional<CentreResult> centre;
};

// Full slot mechanism: reserve filter, greedy admission, randomized grid
// estimate, cost-share extraction. Falls back to a posted-price sale at the
// reserve when the benchmark is carried by a single request, and declares
// no-trade when the final revenue would not cover rental cost times
// (1 + profit_floor).
AuctionResult run_auction(const std::vector<EdgeDemand>& demands,
                          double capacity_flops, double rental_price,
                          double profit_floor, Rng& rng, int max_draws = 10000);

}  // namespace aeria
