#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeria/auction.hpp"
#include "aeria/baselines.hpp"
#include "aeria/demand.hpp"
#include "aeria/latency.hpp"
#include "aeria/profile.hpp"
#include "aeria/rng.hpp"
#include "aeria/trace.hpp"

namespace aeria {

enum class Mechanism { Aeria, FixedProfitRate, Amr2Like, IaoLike, EdgentLike };

std::string to_string(Mechanism m);
Mechanism mechanism_from_string(const std::string& name);

struct PopulationParams {
  int user_count = 800;
  double device_flops_min = 0.5e9;
  double device_flops_max = 5.0e9;
  double rate_bps_min = 20e6;
  double rate_bps_max = 30e6;
  double placement_radius_m = 500.0;  // uniform disc around the edge server
  double budget_min = 1e-3;
  double budget_max = 5e-2;
  double latency_req_min_s = 0.1;
  double latency_req_max_s = 1.0;
};

enum class BidderProcess { Uniform, Poisson, Trace };

struct MarketConfig {
  double slot_duration_h = 1.0;
  int slot_count = 360;
  double edge_capacity_flops = 1740e9;
  double profit_floor = 1.0;           // provider's minimal profit rate
  double server_power_w = 65.0;
  double pue = 1.2;
  double electricity_price_kwh = 0.1056;  // used when no price trace is given
  std::uint64_t seed = 1;
  PopulationParams population;
  BidderProcess bidder_process = BidderProcess::Uniform;
  int bidders_min = 20;
  int bidders_max = 60;
  double bidders_mean = 40.0;
  std::vector<Mechanism> mechanisms = {Mechanism::Aeria,
                                       Mechanism::FixedProfitRate};
  LatencyOptions latency;
  std::vector<MeDnnProfile> profiles;  // empty: default_catalog()
  TraceBundle traces;
  std::string price_trace_path;   // echoed into reports, data sits in traces
  std::string count_trace_path;
  std::string rate_trace_path;
  bool keep_slot_details = false;  // retain raw per-slot results in memory
};

// Hourly rental cost of the edge server: energy price times wall power (chip
// power scaled by the facility PUE) times the slot length.
double rental_price(double electricity_price_kwh, double server_power_w,
                    double pue, double slot_duration_h);

struct PopulationUser {
  std::uint64_t user_id = 0;
  DeviceLink link;
  std::size_t profile_idx = 0;
};

std::vector<PopulationUser> generate_population(const PopulationParams& params,
                                                std::size_t profile_count,
                                                Rng& rng);

// One bidder drawn for a slot, shared by every mechanism.
struct SlotBidder {
  Bid bid;
  DeviceLink link;          // rate possibly rescaled by the rate trace
  std::size_t profile_idx = 0;
  bool local_only = false;  // meets the deadline on the device, does not bid
};

struct SlotMetrics {
  int slot = 0;
  Mechanism mechanism = Mechanism::Aeria;
  int active_users = 0;   // users wanting an inference this slot
  int bidder_count = 0;   // of those, users that need edge help
  int winner_count = 0;
  double electricity_price = 0.0;
  double rental = 0.0;
  double reserve = 0.0;
  double upper_revenue = 0.0;   // single-price benchmark where defined
  double target_revenue = 0.0;  // consensus estimate where defined
  double revenue = 0.0;
  double price = 0.0;
  double profit_rate = 0.0;     // (revenue - rental) / rental
  double sold_flops = 0.0;
  double utilization = 0.0;     // sold / capacity
  double competitive_ratio = 0.0;  // revenue / upper_revenue where defined
  double fulfilled_fraction = 0.0; // deadline met, locally or at the edge
  bool trade = false;
  PricingPath path = PricingPath::NoTrade;
  NoTradeReason reason = NoTradeReason::None;
  bool ok_budget = true;    // no winner charged beyond its budget
  bool ok_capacity = true;  // awards fit capacity
  bool ok_floor = true;     // trades cover rental times (1 + profit_floor)
  bool ok_latency = true;   // every charged winner meets its deadline
};

struct MechanismSlotResult {
  Mechanism mechanism = Mechanism::Aeria;
  std::vector<EdgeDemand> demands;   // what entered the pricing phase
  AuctionResult auction;
  int local_served = 0;  // bidders the mechanism pushed back onto their device
};

struct SlotDetail {
  int slot = 0;
  double electricity_price = 0.0;
  double rental = 0.0;
  std::vector<SlotBidder> bidders;   // incl. local-only users
  std::vector<MechanismSlotResult> results;
};

struct MechanismAggregate {
  Mechanism mechanism = Mechanism::Aeria;
  int trade_slots = 0;
  double total_revenue = 0.0;
  double mean_revenue = 0.0;
  double mean_profit_rate = 0.0;
  double mean_price = 0.0;          // over trade slots
  double mean_utilization = 0.0;
  double mean_fulfilled = 0.0;
  double mean_competitive_ratio = 0.0;  // over slots with a defined benchmark
};

struct RunReport {
  std::vector<SlotMetrics> slots;        // slot-major, one row per mechanism
  std::vector<MechanismAggregate> aggregates;
  std::vector<SlotDetail> details;       // filled when keep_slot_details
};

// Draws the bidders for one slot. Exposed for scripted tests; `run` composes
// it for every slot.
std::vector<SlotBidder> draw_slot_bidders(
    const MarketConfig& config, const std::vector<PopulationUser>& population,
    const std::vector<MeDnnProfile>& profiles, int slot);

// Executes one mechanism on a drawn slot.
MechanismSlotResult run_mechanism_slot(
    Mechanism mechanism, const MarketConfig& config,
    const std::vector<MeDnnProfile>& profiles,
    const std::vector<SlotBidder>& bidders, double rental, Rng& mech_rng);

// Full simulation: every mechanism sees the same bidder draws per slot while
// pricing randomness stays per-mechanism.
RunReport run(const MarketConfig& config);

}  // namespace aeria
