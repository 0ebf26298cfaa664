#include "aeria/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aeria {

namespace {

// Single-exit variant of a profile: keep layers 1..exit_position, keep only
// the branch at exit_position and give it the whole exit mass.
MeDnnProfile truncate_at_exit(const MeDnnProfile& p, int exit_position,
                              double sigma) {
  const ExitBranchSpec* branch = nullptr;
  for (const auto& b : p.branches)
    if (b.position == exit_position) branch = &b;
  if (!branch)
    throw std::invalid_argument("truncate_at_exit: no branch at position " +
                                std::to_string(exit_position));
  MeDnnProfile t;
  t.id = p.id + "@" + std::to_string(exit_position);
  t.input_size_bits = p.input_size_bits;
  t.layers.assign(p.layers.begin(), p.layers.begin() + exit_position);
  t.branches = {{exit_position, branch->compute_flop}};
  t.exit_probs = {{sigma, {1.0}, {}}};
  return t;
}

}  // namespace

DemandOutcome truncated_exit_demand(const UserContext& user, int exit_position,
                                    double edge_capacity_flops,
                                    const LatencyOptions& opts) {
  const MeDnnProfile t =
      truncate_at_exit(*user.profile, exit_position, user.bid.sigma);
  return analyze_demand(user.bid, t, user.link, edge_capacity_flops, opts);
}

AuctionResult fixed_profit_rate(const std::vector<EdgeDemand>& demands,
                                double capacity_flops, double rental_price,
                                double profit_rate) {
  AuctionResult result;
  const double reserve =
      reserve_density(rental_price, profit_rate, capacity_flops);
  result.roso = roso(demands, capacity_flops, reserve);
  if (result.roso.admitted.empty()) {
    result.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }
  const double target = (1.0 + profit_rate) * rental_price;
  if (!(target > 0)) {  // nothing to recover, give capacity away at cost
    AuctionOutcome& out = result.outcome;
    out.trade = true;
    out.path = PricingPath::PostedPrice;
    out.price = reserve;
    for (std::size_t i : result.roso.admitted)
      out.winners.push_back({demands[i].user_id, demands[i].flops,
                             demands[i].partition, 0.0});
    return result;
  }
  result.outcome = cost_share(target, demands, result.roso);
  return result;
}

Amr2Result amr2_like(const std::vector<UserContext>& users,
                     double capacity_flops, const LatencyOptions& opts) {
  Amr2Result result;
  if (users.empty()) {
    result.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }
  const double share = capacity_flops / static_cast<double>(users.size());

  std::vector<EdgeDemand> served;
  for (const auto& user : users) {
    DemandOutcome chosen;
    chosen.kind = DemandKind::Infeasible;
    chosen.user_id = user.bid.user_id;
    // Deepest exit first: prune only as far as the equal share forces.
    for (auto it = user.profile->branches.rbegin();
         it != user.profile->branches.rend(); ++it) {
      DemandOutcome d = truncated_exit_demand(user, it->position,
                                              capacity_flops, opts);
      if (d.kind == DemandKind::LocalOnly) {
        chosen = d;
        break;
      }
      if (d.kind == DemandKind::EdgeRequest && d.edge_flops_req <= share) {
        chosen = d;
        break;
      }
    }
    result.demands.push_back(chosen);
    if (chosen.kind == DemandKind::EdgeRequest)
      served.push_back({chosen.user_id, chosen.budget, chosen.edge_flops_req,
                        chosen.partition});
  }

  if (served.empty()) {
    result.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }
  double price = served.front().density();
  for (const auto& d : served) price = std::min(price, d.density());
  AuctionOutcome& out = result.outcome;
  out.trade = true;
  out.path = PricingPath::PostedPrice;
  out.price = price;
  for (const auto& d : served) {
    out.winners.push_back({d.user_id, d.flops, d.partition, price * d.flops});
    out.revenue += price * d.flops;
  }
  return result;
}

IaoResult iao_like(const std::vector<UserContext>& users,
                   double capacity_flops, double rental_price,
                   double profit_floor, Rng& rng, const LatencyOptions& opts) {
  IaoResult result;
  struct Watered {
    std::size_t user = 0;
    int split = 0;
    double fixed_s = 0.0;   // device plus uplink time at the chosen split
    double work_flop = 0.0; // edge work at the chosen split
  };
  std::vector<Watered> pool;

  for (std::size_t u = 0; u < users.size(); ++u) {
    const auto& user = users[u];
    const MeDnnProfile vanilla =
        truncate_at_exit(*user.profile, user.profile->depth(), user.bid.sigma);
    // Split with the best latency achievable even with the whole server.
    int best_s = vanilla.depth();
    double best_latency = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= vanilla.depth(); ++s) {
      const double fixed =
          device_latency(vanilla, user.bid.sigma, s, user.link.device_flops) +
          network_latency(vanilla, user.bid.sigma, s, user.link,
                          opts.transmission);
      const double lat =
          fixed + edge_flop(vanilla, user.bid.sigma, s) / capacity_flops;
      if (lat <= best_latency) {  // <= : ties go to the deeper split
        best_latency = lat;
        best_s = s;
      }
    }
    const double fixed =
        device_latency(vanilla, user.bid.sigma, best_s, user.link.device_flops) +
        network_latency(vanilla, user.bid.sigma, best_s, user.link,
                        opts.transmission);
    const double work = edge_flop(vanilla, user.bid.sigma, best_s);

    DemandOutcome d;
    d.user_id = user.bid.user_id;
    d.budget = user.bid.budget;
    d.latency_req_s = user.bid.latency_req_s;
    d.sigma = user.bid.sigma;
    d.partition = best_s;
    d.kind = work > 0 ? DemandKind::EdgeRequest : DemandKind::LocalOnly;
    result.demands.push_back(d);
    if (work > 0) pool.push_back({u, best_s, fixed, work});
  }

  if (pool.empty()) {
    result.auction.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }

  // Max-latency-first water filling: the common latency L every pooled user
  // ends at solves  sum work / (L - fixed) = capacity. Allocations then favor
  // exactly the users that would otherwise lag behind.
  double lo = 0.0;
  for (const auto& w : pool) lo = std::max(lo, w.fixed_s);
  const auto used = [&](double level) {
    double sum = 0.0;
    for (const auto& w : pool) sum += w.work_flop / (level - w.fixed_s);
    return sum;
  };
  double hi = lo + 1.0;
  while (used(hi) > capacity_flops) hi = lo + (hi - lo) * 2.0;
  double lo_level = lo;
  for (int i = 0; i < 200; ++i) {
    const double mid = lo_level + 0.5 * (hi - lo_level);
    (used(mid) > capacity_flops ? lo_level : hi) = mid;
  }
  const double level = hi;

  std::vector<EdgeDemand> demands;
  for (const auto& w : pool) {
    const double alloc = w.work_flop / (level - w.fixed_s);
    result.demands[w.user].edge_flops_req = alloc;
    result.demands[w.user].density = users[w.user].bid.budget / alloc;
    demands.push_back({users[w.user].bid.user_id, users[w.user].bid.budget,
                       alloc, w.split});
  }

  result.auction = run_auction(demands, capacity_flops, rental_price,
                               profit_floor, rng);

  // Winners that still miss their deadline keep the slot but cannot be
  // charged; their share is written off.
  if (result.auction.outcome.trade) {
    double collected = 0.0;
    for (auto& award : result.auction.outcome.winners) {
      const Watered* w = nullptr;
      for (const auto& cand : pool)
        if (users[cand.user].bid.user_id == award.user_id) w = &cand;
      const double latency = w ? w->fixed_s + w->work_flop / award.flops : 0.0;
      const double deadline =
          w ? users[w->user].bid.latency_req_s : 0.0;
      if (latency > deadline) award.payment = 0.0;
      collected += award.payment;
    }
    result.auction.outcome.revenue = collected;
  }
  return result;
}

EdgentResult edgent_like(const std::vector<UserContext>& users,
                         double capacity_flops, double rental_price,
                         double profit_floor, Rng& rng,
                         const LatencyOptions& opts) {
  EdgentResult result;
  std::vector<EdgeDemand> demands;
  for (const auto& user : users) {
    DemandOutcome chosen;
    chosen.kind = DemandKind::Infeasible;
    chosen.user_id = user.bid.user_id;
    for (auto it = user.profile->branches.rbegin();
         it != user.profile->branches.rend(); ++it) {
      DemandOutcome d = truncated_exit_demand(user, it->position,
                                              capacity_flops, opts);
      if (d.kind != DemandKind::Infeasible) {
        chosen = d;
        break;
      }
    }
    result.demands.push_back(chosen);
    if (chosen.kind == DemandKind::EdgeRequest)
      demands.push_back({chosen.user_id, chosen.budget, chosen.edge_flops_req,
                         chosen.partition});
  }
  if (demands.empty()) {
    result.auction.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }
  result.auction = run_auction(demands, capacity_flops, rental_price,
                               profit_floor, rng);
  return result;
}

}  // namespace aeria
