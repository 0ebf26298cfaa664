#include "aeria/auction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aeria {

double reserve_density(double rental_price, double profit_floor,
                       double capacity_flops) {
  if (!(capacity_flops > 0))
    throw std::invalid_argument("reserve_density: capacity must be positive");
  if (rental_price < 0 || profit_floor < 0)
    throw std::invalid_argument("reserve_density: negative price or floor");
  return (1.0 + profit_floor) * rental_price / capacity_flops;
}

namespace {

void validate_demands(const std::vector<EdgeDemand>& demands) {
  for (const auto& d : demands) {
    if (!(d.flops > 0))
      throw std::invalid_argument("auction: request with non-positive flops");
    if (d.budget < 0)
      throw std::invalid_argument("auction: request with negative budget");
  }
}

// Density order used everywhere: highest density first, ties by user id.
std::vector<std::size_t> density_order(const std::vector<EdgeDemand>& demands,
                                       double reserve) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < demands.size(); ++i)
    if (demands[i].density() >= reserve) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double da = demands[a].density(), db = demands[b].density();
    if (da != db) return da > db;
    return demands[a].user_id < demands[b].user_id;
  });
  return idx;
}

}  // namespace

RosoResult roso(const std::vector<EdgeDemand>& demands, double capacity_flops,
                double reserve) {
  if (!(capacity_flops > 0))
    throw std::invalid_argument("roso: capacity must be positive");
  validate_demands(demands);

  RosoResult r;
  r.reserve = reserve;
  double free_flops = capacity_flops;
  for (std::size_t i : density_order(demands, reserve)) {
    if (free_flops - demands[i].flops > 0) {  // strictly fits
      r.admitted.push_back(i);
      free_flops -= demands[i].flops;
      r.max_admitted_flops = std::max(r.max_admitted_flops, demands[i].flops);
    }
  }
  double volume = 0.0;
  for (std::size_t k = 0; k < r.admitted.size(); ++k) {
    volume += demands[r.admitted[k]].flops;
    const double revenue = demands[r.admitted[k]].density() * volume;
    if (revenue >= r.upper_revenue) {  // >= : ties go to the larger volume
      r.upper_revenue = revenue;
      r.prefix_volume = volume;
      r.prefix_len = static_cast<int>(k) + 1;
    }
  }
  return r;
}

std::optional<double> delta(const RosoResult& r) {
  if (!(r.prefix_volume > r.max_admitted_flops)) return std::nullopt;
  return r.prefix_volume / (r.prefix_volume - r.max_admitted_flops);
}

double optimal_y(double d) {
  if (!(d > 1.0))
    throw std::invalid_argument("optimal_y: delta must exceed 1");
  const auto f = [d](double y) { return std::log(y) - y / d + 1.0; };
  double lo = d, hi = 2.0 * d;
  while (f(hi) > 0) hi *= 2.0;  // f(delta) = ln delta > 0, f decreasing beyond
  for (int i = 0; i < 200 && (hi - lo) > 1e-10 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double consensus_bound_factor(double d, double y) {
  return (1.0 / std::log(y)) * (1.0 / d - 1.0 / y);
}

double consensus_estimate(double value, double y, double epsilon) {
  if (!(value > 0))
    throw std::invalid_argument("consensus_estimate: value must be positive");
  if (!(y > 1.0))
    throw std::invalid_argument("consensus_estimate: base must exceed 1");
  if (epsilon < 0 || epsilon >= 1.0)
    throw std::invalid_argument("consensus_estimate: offset outside [0, 1)");
  const auto grid = [&](long long k) {
    return std::pow(y, static_cast<double>(k) + epsilon);
  };
  long long k = static_cast<long long>(
      std::floor(std::log(value) / std::log(y) - epsilon));
  // The log/floor round trip can land one step off; pin down the unique k with
  // grid(k) <= value < grid(k + 1) so the (value/y, value] window holds exactly.
  while (grid(k) > value) --k;
  while (grid(k + 1) <= value) ++k;
  return grid(k);
}

CentreResult centre(const RosoResult& r, Rng& rng, int max_draws) {
  const auto d = delta(r);
  if (!d)
    throw std::invalid_argument(
        "centre: benchmark carried by a single request, no consensus possible");
  CentreResult c;
  c.delta = *d;
  c.y = optimal_y(c.delta);
  const double cap = r.upper_revenue / c.delta;
  for (int i = 0; i < max_draws; ++i) {
    const double eps = rng.u01();
    const double estimate = consensus_estimate(r.upper_revenue, c.y, eps);
    if (estimate <= cap) {
      c.epsilon = eps;
      c.target_revenue = estimate;
      c.draws = i + 1;
      return c;
    }
  }
  throw std::runtime_error("centre: no acceptable offset after " +
                           std::to_string(max_draws) + " draws");
}

AuctionOutcome cost_share(double target_revenue,
                          const std::vector<EdgeDemand>& demands,
                          const RosoResult& r) {
  if (!(target_revenue > 0))
    throw std::invalid_argument("cost_share: target must be positive");
  AuctionOutcome out;
  out.target_revenue = target_revenue;

  // Admitted indices stay in density order; the tail is the cheapest request.
  std::vector<std::size_t> kept = r.admitted;
  double volume = 0.0;
  for (std::size_t i : kept) volume += demands[i].flops;
  while (!kept.empty()) {
    const double price = target_revenue / volume;
    const EdgeDemand& tail = demands[kept.back()];
    if (tail.density() < price) {
      out.removed.push_back(tail.user_id);
      volume -= tail.flops;
      kept.pop_back();
      continue;
    }
    out.trade = true;
    out.path = PricingPath::CostShare;
    out.price = price;
    out.revenue = target_revenue;  // identity: shares sum to the target
    for (std::size_t i : kept)
      out.winners.push_back({demands[i].user_id, demands[i].flops,
                             demands[i].partition,
                             price * demands[i].flops});
    return out;
  }
  out.path = PricingPath::NoTrade;
  out.reason = NoTradeReason::TargetUnaffordable;
  return out;
}

AuctionResult run_auction(const std::vector<EdgeDemand>& demands,
                          double capacity_flops, double rental_price,
                          double profit_floor, Rng& rng, int max_draws) {
  AuctionResult result;
  const double reserve =
      reserve_density(rental_price, profit_floor, capacity_flops);
  result.roso = roso(demands, capacity_flops, reserve);

  if (result.roso.admitted.empty()) {
    result.outcome.path = PricingPath::NoTrade;
    result.outcome.reason = NoTradeReason::NoBidders;
    return result;
  }

  if (result.roso.upper_revenue > 0 && delta(result.roso)) {
    result.centre = centre(result.roso, rng, max_draws);
    result.outcome =
        cost_share(result.centre->target_revenue, demands, result.roso);
  } else {
    // Single effective contributor: no bid-independent estimate exists, so
    // sell at the posted reserve, which no bid can influence either.
    AuctionOutcome& out = result.outcome;
    out.trade = true;
    out.path = PricingPath::PostedPrice;
    out.price = reserve;
    for (std::size_t i : result.roso.admitted) {
      out.winners.push_back({demands[i].user_id, demands[i].flops,
                             demands[i].partition,
                             reserve * demands[i].flops});
      out.revenue += reserve * demands[i].flops;
    }
  }

  if (result.outcome.trade &&
      result.outcome.revenue < rental_price * (1.0 + profit_floor)) {
    AuctionOutcome gated;
    gated.path = PricingPath::NoTrade;
    gated.reason = NoTradeReason::RevenueBelowFloor;
    gated.target_revenue = result.outcome.target_revenue;
    result.outcome = std::move(gated);
  }
  return result;
}

}  // namespace aeria
