#include "aeria/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aeria/errors.hpp"

namespace aeria {

std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Aeria: return "aeria";
    case Mechanism::FixedProfitRate: return "fixed-profit-rate";
    case Mechanism::Amr2Like: return "amr2";
    case Mechanism::IaoLike: return "iao";
    case Mechanism::EdgentLike: return "edgent";
  }
  return "unknown";
}

Mechanism mechanism_from_string(const std::string& name) {
  if (name == "aeria") return Mechanism::Aeria;
  if (name == "fixed-profit-rate") return Mechanism::FixedProfitRate;
  if (name == "amr2") return Mechanism::Amr2Like;
  if (name == "iao") return Mechanism::IaoLike;
  if (name == "edgent") return Mechanism::EdgentLike;
  throw DataError("unknown mechanism: " + name +
                  " (expected aeria, fixed-profit-rate, amr2, iao or edgent)");
}

double rental_price(double electricity_price_kwh, double server_power_w,
                    double pue, double slot_duration_h) {
  if (electricity_price_kwh < 0 || server_power_w < 0 || pue < 0 ||
      slot_duration_h < 0)
    throw std::invalid_argument("rental_price: negative input");
  return electricity_price_kwh * (server_power_w * pue / 1000.0) *
         slot_duration_h;
}

std::vector<PopulationUser> generate_population(const PopulationParams& params,
                                                std::size_t profile_count,
                                                Rng& rng) {
  if (params.user_count < 0)
    throw DataError("population: negative user count");
  if (profile_count == 0) throw DataError("population: no profiles");
  constexpr double kLightSpeed = 299792458.0;
  std::vector<PopulationUser> users;
  users.reserve(params.user_count);
  for (int i = 0; i < params.user_count; ++i) {
    PopulationUser u;
    u.user_id = static_cast<std::uint64_t>(i) + 1;
    u.link.device_flops =
        rng.uniform(params.device_flops_min, params.device_flops_max);
    u.link.rate_bps = rng.uniform(params.rate_bps_min, params.rate_bps_max);
    // Uniform placement on the disc around the server.
    const double radius = params.placement_radius_m * std::sqrt(rng.u01());
    rng.u01();  // angle; only the distance matters for delay
    u.link.prop_delay_s = radius / kLightSpeed;
    u.profile_idx = rng.below(profile_count);
    users.push_back(u);
  }
  return users;
}

std::vector<SlotBidder> draw_slot_bidders(
    const MarketConfig& config, const std::vector<PopulationUser>& population,
    const std::vector<MeDnnProfile>& profiles, int slot) {
  Rng count_rng = named_stream(config.seed, "bidders", slot);
  int count = 0;
  switch (config.bidder_process) {
    case BidderProcess::Uniform:
      count = config.bidders_min +
              static_cast<int>(count_rng.below(
                  config.bidders_max - config.bidders_min + 1));
      break;
    case BidderProcess::Poisson:
      count = count_rng.poisson(config.bidders_mean);
      break;
    case BidderProcess::Trace:
      if (!config.traces.has_counts())
        throw DataError("bidder process is trace but no count trace is loaded");
      count = config.traces.count_at(slot);
      break;
  }
  count = std::min<int>(count, static_cast<int>(population.size()));

  // Partial Fisher-Yates over the population indices.
  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < count; ++i) {
    const std::size_t j =
        i + count_rng.below(population.size() - static_cast<std::size_t>(i));
    std::swap(idx[i], idx[j]);
  }

  double rate_factor = 1.0;
  if (config.traces.has_rates()) {
    const double nominal =
        0.5 * (config.population.rate_bps_min + config.population.rate_bps_max);
    rate_factor = config.traces.rate_at(slot) / nominal;
  }

  Rng bid_rng = named_stream(config.seed, "bids", slot);
  std::vector<SlotBidder> bidders;
  bidders.reserve(count);
  for (int i = 0; i < count; ++i) {
    const PopulationUser& u = population[idx[i]];
    const MeDnnProfile& profile = profiles[u.profile_idx];
    SlotBidder b;
    b.link = u.link;
    b.link.rate_bps = std::max(1e5, u.link.rate_bps * rate_factor);
    b.profile_idx = u.profile_idx;
    b.bid.user_id = u.user_id;
    b.bid.budget = bid_rng.uniform(config.population.budget_min,
                                   config.population.budget_max);
    b.bid.latency_req_s = bid_rng.uniform(config.population.latency_req_min_s,
                                          config.population.latency_req_max_s);
    b.bid.sigma =
        profile.exit_probs[bid_rng.below(profile.exit_probs.size())].sigma;
    b.local_only = device_latency(profile, b.bid.sigma, profile.depth(),
                                  b.link.device_flops) < b.bid.latency_req_s;
    bidders.push_back(b);
  }
  return bidders;
}

namespace {

// Latency of an awarded request under the full multi-exit profile.
bool award_meets_deadline(const Award& award, const SlotBidder& bidder,
                          const MeDnnProfile& profile,
                          const LatencyOptions& opts) {
  const double latency = total_latency(profile, bidder.bid.sigma,
                                       award.partition, bidder.link,
                                       award.flops, opts);
  return latency <= bidder.bid.latency_req_s * (1.0 + 1e-9);
}

}  // namespace

MechanismSlotResult run_mechanism_slot(
    Mechanism mechanism, const MarketConfig& config,
    const std::vector<MeDnnProfile>& profiles,
    const std::vector<SlotBidder>& bidders, double rental, Rng& mech_rng) {
  MechanismSlotResult result;
  result.mechanism = mechanism;

  std::vector<const SlotBidder*> active;
  for (const auto& b : bidders)
    if (!b.local_only) active.push_back(&b);

  const double f_e = config.edge_capacity_flops;
  switch (mechanism) {
    case Mechanism::Aeria:
    case Mechanism::FixedProfitRate: {
      for (const SlotBidder* b : active) {
        const DemandOutcome d =
            analyze_demand(b->bid, profiles[b->profile_idx], b->link, f_e,
                           config.latency);
        if (d.kind == DemandKind::EdgeRequest)
          result.demands.push_back(
              {d.user_id, d.budget, d.edge_flops_req, d.partition});
        else if (d.kind == DemandKind::LocalOnly)
          ++result.local_served;
      }
      if (mechanism == Mechanism::Aeria)
        result.auction = run_auction(result.demands, f_e, rental,
                                     config.profit_floor, mech_rng);
      else
        result.auction = fixed_profit_rate(result.demands, f_e, rental,
                                           config.profit_floor);
      break;
    }
    case Mechanism::Amr2Like:
    case Mechanism::IaoLike:
    case Mechanism::EdgentLike: {
      std::vector<UserContext> contexts;
      for (const SlotBidder* b : active)
        contexts.push_back({b->bid, b->link, &profiles[b->profile_idx]});
      if (mechanism == Mechanism::Amr2Like) {
        Amr2Result r = amr2_like(contexts, f_e, config.latency);
        result.auction.outcome = std::move(r.outcome);
        for (const auto& d : r.demands) {
          if (d.kind == DemandKind::EdgeRequest)
            result.demands.push_back(
                {d.user_id, d.budget, d.edge_flops_req, d.partition});
          else if (d.kind == DemandKind::LocalOnly)
            ++result.local_served;
        }
      } else if (mechanism == Mechanism::IaoLike) {
        IaoResult r = iao_like(contexts, f_e, rental, config.profit_floor,
                               mech_rng, config.latency);
        result.auction = std::move(r.auction);
        for (const auto& d : r.demands) {
          if (d.kind == DemandKind::EdgeRequest)
            result.demands.push_back(
                {d.user_id, d.budget, d.edge_flops_req, d.partition});
          else if (d.kind == DemandKind::LocalOnly)
            ++result.local_served;
        }
      } else {
        EdgentResult r = edgent_like(contexts, f_e, rental,
                                     config.profit_floor, mech_rng,
                                     config.latency);
        result.auction = std::move(r.auction);
        for (const auto& d : r.demands) {
          if (d.kind == DemandKind::EdgeRequest)
            result.demands.push_back(
                {d.user_id, d.budget, d.edge_flops_req, d.partition});
          else if (d.kind == DemandKind::LocalOnly)
            ++result.local_served;
        }
      }
      break;
    }
  }
  return result;
}

namespace {

SlotMetrics slot_metrics(const MarketConfig& config,
                         const std::vector<MeDnnProfile>& profiles,
                         const std::vector<SlotBidder>& bidders,
                         const MechanismSlotResult& mr, int slot,
                         double electricity_price, double rental) {
  SlotMetrics m;
  m.slot = slot;
  m.mechanism = mr.mechanism;
  m.active_users = static_cast<int>(bidders.size());
  m.electricity_price = electricity_price;
  m.rental = rental;

  int local_only = 0;
  for (const auto& b : bidders)
    if (b.local_only) ++local_only;
  m.bidder_count = m.active_users - local_only;

  const AuctionOutcome& out = mr.auction.outcome;
  m.trade = out.trade;
  m.path = out.path;
  m.reason = out.reason;
  m.winner_count = static_cast<int>(out.winners.size());
  m.reserve = mr.auction.roso.reserve;
  m.upper_revenue = mr.auction.roso.upper_revenue;
  m.target_revenue = out.target_revenue;
  m.revenue = out.revenue;
  m.price = out.price;
  m.profit_rate = rental > 0 ? (m.revenue - rental) / rental : 0.0;
  for (const auto& w : out.winners) m.sold_flops += w.flops;
  m.utilization = m.sold_flops / config.edge_capacity_flops;
  m.competitive_ratio =
      m.upper_revenue > 0 ? m.revenue / m.upper_revenue : 0.0;

  // Deadline audit for winners. The pruning baselines size requests under
  // truncated models, where the award is latency-binding by construction; the
  // probabilistic mechanisms are re-audited against the full profile.
  int fulfilled_winners = 0;
  bool charged_miss = false;
  const bool recompute = mr.mechanism == Mechanism::Aeria ||
                         mr.mechanism == Mechanism::FixedProfitRate;
  for (const auto& w : out.winners) {
    const SlotBidder* bidder = nullptr;
    for (const auto& b : bidders)
      if (b.bid.user_id == w.user_id) bidder = &b;
    bool ok = true;
    if (recompute && bidder)
      ok = award_meets_deadline(w, *bidder, profiles[bidder->profile_idx],
                                config.latency);
    else if (mr.mechanism == Mechanism::IaoLike)
      ok = w.payment > 0;
    if (ok) ++fulfilled_winners;
    else if (w.payment > 0) charged_miss = true;
  }
  m.ok_latency = !charged_miss;
  m.fulfilled_fraction =
      m.active_users == 0
          ? 1.0
          : static_cast<double>(local_only + mr.local_served +
                                fulfilled_winners) /
                m.active_users;

  for (const auto& w : out.winners) {
    for (const auto& d : mr.demands)
      if (d.user_id == w.user_id && w.payment > d.budget * (1.0 + 1e-9))
        m.ok_budget = false;
  }
  m.ok_capacity =
      m.sold_flops <= config.edge_capacity_flops * (1.0 + 1e-12);
  if (out.trade && mr.mechanism != Mechanism::Amr2Like &&
      out.revenue < rental * (1.0 + config.profit_floor) * (1.0 - 1e-12))
    m.ok_floor = false;
  return m;
}

}  // namespace

RunReport run(const MarketConfig& config) {
  if (config.slot_count < 0) throw DataError("run: negative slot count");
  const std::vector<MeDnnProfile> profiles =
      config.profiles.empty() ? default_catalog() : config.profiles;
  for (const auto& p : profiles) validate(p);

  Rng pop_rng = named_stream(config.seed, "population");
  const std::vector<PopulationUser> population =
      generate_population(config.population, profiles.size(), pop_rng);

  RunReport report;
  struct Accum {
    int trade_slots = 0;
    double revenue = 0, profit = 0, price = 0, util = 0, fulfilled = 0,
           ratio = 0;
    int ratio_slots = 0;
  };
  std::vector<Accum> accum(config.mechanisms.size());

  for (int slot = 0; slot < config.slot_count; ++slot) {
    const double electricity_price = config.traces.has_prices()
                                         ? config.traces.price_at(slot)
                                         : config.electricity_price_kwh;
    const double rental =
        rental_price(electricity_price, config.server_power_w, config.pue,
                     config.slot_duration_h);
    const std::vector<SlotBidder> bidders =
        draw_slot_bidders(config, population, profiles, slot);

    SlotDetail detail;
    detail.slot = slot;
    detail.electricity_price = electricity_price;
    detail.rental = rental;
    detail.bidders = bidders;

    for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
      const Mechanism mech = config.mechanisms[mi];
      Rng mech_rng =
          named_stream(config.seed, "mech/" + to_string(mech), slot);
      MechanismSlotResult mr = run_mechanism_slot(mech, config, profiles,
                                                  bidders, rental, mech_rng);
      SlotMetrics m = slot_metrics(config, profiles, bidders, mr, slot,
                                   electricity_price, rental);
      Accum& a = accum[mi];
      if (m.trade) {
        ++a.trade_slots;
        a.price += m.price;
      }
      a.revenue += m.revenue;
      a.profit += m.profit_rate;
      a.util += m.utilization;
      a.fulfilled += m.fulfilled_fraction;
      if (m.upper_revenue > 0) {
        a.ratio += m.competitive_ratio;
        ++a.ratio_slots;
      }
      report.slots.push_back(m);
      if (config.keep_slot_details) detail.results.push_back(std::move(mr));
    }
    if (config.keep_slot_details)
      report.details.push_back(std::move(detail));
  }

  const double n = std::max(1, config.slot_count);
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    const Accum& a = accum[mi];
    MechanismAggregate agg;
    agg.mechanism = config.mechanisms[mi];
    agg.trade_slots = a.trade_slots;
    agg.total_revenue = a.revenue;
    agg.mean_revenue = a.revenue / n;
    agg.mean_profit_rate = a.profit / n;
    agg.mean_price = a.trade_slots > 0 ? a.price / a.trade_slots : 0.0;
    agg.mean_utilization = a.util / n;
    agg.mean_fulfilled = a.fulfilled / n;
    agg.mean_competitive_ratio =
        a.ratio_slots > 0 ? a.ratio / a.ratio_slots : 0.0;
    report.aggregates.push_back(agg);
  }
  return report;
}

}  // namespace aeria
