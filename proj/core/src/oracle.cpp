#include "aeria/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace aeria {

namespace {

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

BruteForceResult brute_force_single_price(
    const std::vector<EdgeDemand>& demands, double capacity_flops,
    double reserve, std::size_t max_n) {
  if (demands.size() > max_n)
    throw std::invalid_argument(
        "brute_force_single_price: instance larger than the exhaustive cap");
  const auto order = density_order(demands, reserve);
  BruteForceResult best;
  for (std::size_t pi : order) {
    const double price = demands[pi].density();
    // Serve everyone who affords `price`, greedily by density, while the
    // request strictly fits.
    double free_flops = capacity_flops;
    double volume = 0.0;
    for (std::size_t i : order) {
      if (demands[i].density() < price) continue;
      if (free_flops - demands[i].flops > 0) {
        free_flops -= demands[i].flops;
        volume += demands[i].flops;
      }
    }
    const double revenue = price * volume;
    if (revenue > best.best_revenue ||
        (revenue == best.best_revenue && volume > best.best_volume)) {
      best.best_revenue = revenue;
      best.best_price = price;
      best.best_volume = volume;
    }
  }
  return best;
}

ConsensusReport check_consensus(const std::vector<EdgeDemand>& demands,
                                double capacity_flops, double reserve,
                                double y, double epsilon) {
  ConsensusReport report;
  const RosoResult full = roso(demands, capacity_flops, reserve);
  if (full.admitted.empty() || !(full.upper_revenue > 0)) return report;
  const auto d = delta(full);
  if (!d) return report;
  report.delta = *d;
  report.benchmark = full.upper_revenue;
  report.estimate = consensus_estimate(full.upper_revenue, y, epsilon);
  report.criterion_holds = report.estimate <= full.upper_revenue / *d;

  const double worst_case_floor =
      full.upper_revenue * (full.prefix_volume - full.max_admitted_flops) /
      full.prefix_volume;
  for (std::size_t skip = 0; skip < demands.size(); ++skip) {
    std::vector<EdgeDemand> rest;
    for (std::size_t i = 0; i < demands.size(); ++i)
      if (i != skip) rest.push_back(demands[i]);
    const RosoResult without = roso(rest, capacity_flops, reserve);
    if (without.upper_revenue < worst_case_floor - 1e-9)
      report.bound_violations.push_back({demands[skip].user_id,
                                         without.upper_revenue, 0.0});
    if (report.criterion_holds && without.upper_revenue > 0) {
      const double estimate_without =
          consensus_estimate(without.upper_revenue, y, epsilon);
      if (std::abs(estimate_without - report.estimate) >
          1e-9 * report.estimate)
        report.estimate_violations.push_back(
            {demands[skip].user_id, without.upper_revenue, estimate_without});
    } else if (report.criterion_holds) {
      report.estimate_violations.push_back(
          {demands[skip].user_id, without.upper_revenue, 0.0});
    }
  }
  return report;
}

DistributionReport check_distribution(double value, double y, int draws,
                                      Rng& rng) {
  std::vector<double> samples;
  samples.reserve(draws);
  for (int i = 0; i < draws; ++i)
    samples.push_back(consensus_estimate(value, y, rng.u01()));
  std::sort(samples.begin(), samples.end());
  // Closed-form law: value * y^(E - 1) with E uniform, supported on
  // (value/y, value]. CDF(z) = 1 + log_y(z / value) there.
  const double log_y = std::log(y);
  DistributionReport report;
  report.draws = draws;
  const double n = draws;
  for (int i = 0; i < draws; ++i) {
    const double cdf =
        std::clamp(1.0 + std::log(samples[i] / value) / log_y, 0.0, 1.0);
    const double hi = (i + 1) / n - cdf;
    const double lo = cdf - i / n;
    report.ks_stat = std::max({report.ks_stat, hi, lo});
  }
  return report;
}

ExpectationReport check_expectation(double value, double delta, int draws,
                                    Rng& rng) {
  const double y = optimal_y(delta);
  ExpectationReport report;
  report.bound = value * consensus_bound_factor(delta, y);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double f = consensus_estimate(value, y, rng.u01());
    sum += f;
    sum_sq += f * f;
  }
  report.mean = sum / draws;
  const double var =
      std::max(0.0, sum_sq / draws - report.mean * report.mean);
  report.stderr_mean = std::sqrt(var / draws);
  report.pass = report.mean >= report.bound - 3.0 * report.stderr_mean;
  return report;
}

namespace {

void flag(OutcomeReport& report, const std::string& issue) {
  report.ok = false;
  report.issues.push_back(issue);
}

std::string who(std::uint64_t user) { return "user " + std::to_string(user); }

}  // namespace

OutcomeReport check_outcome(const AuctionResult& result,
                            const OutcomeContext& ctx) {
  OutcomeReport report;
  if (!ctx.demands) {
    flag(report, "no demand context supplied");
    return report;
  }
  const std::vector<EdgeDemand>& demands = *ctx.demands;
  const AuctionOutcome& out = result.outcome;

  const auto find_demand = [&](std::uint64_t user) -> const EdgeDemand* {
    for (const auto& d : demands)
      if (d.user_id == user) return &d;
    return nullptr;
  };

  if (!out.trade) {
    if (!out.winners.empty()) flag(report, "no-trade outcome carries winners");
    if (out.revenue != 0) flag(report, "no-trade outcome carries revenue");
    return report;
  }

  // Flat price and decision ranges.
  double sold = 0.0, collected = 0.0;
  std::vector<std::uint64_t> seen;
  for (const auto& w : out.winners) {
    const EdgeDemand* d = find_demand(w.user_id);
    if (!d) {
      flag(report, who(w.user_id) + " won without a matching demand");
      continue;
    }
    if (std::find(seen.begin(), seen.end(), w.user_id) != seen.end())
      flag(report, who(w.user_id) + " appears twice among the winners");
    seen.push_back(w.user_id);
    if (!(w.flops > 0)) flag(report, who(w.user_id) + " got a non-positive award");
    if (w.flops != d->flops)
      flag(report, who(w.user_id) + " award differs from its request");
    if (w.payment < 0) flag(report, who(w.user_id) + " pays a negative amount");
    const double expected = out.price * w.flops;
    if (std::abs(w.payment - expected) >
        1e-12 * std::max(1.0, std::abs(expected)) &&
        w.payment != 0.0)  // written-off misses keep the award but pay zero
      flag(report, who(w.user_id) + " breaks the flat unit price");
    if (w.payment > d->budget * (1.0 + 1e-9))
      flag(report, who(w.user_id) + " is charged beyond its budget");
    if (w.payment > 0 && d->density() < out.price * (1.0 - 1e-12))
      flag(report, who(w.user_id) + " cannot afford the price it was charged");
    sold += w.flops;
    collected += w.payment;
  }
  if (sold > ctx.capacity_flops * (1.0 + 1e-12))
    flag(report, "awards exceed capacity");
  if (out.revenue <
      ctx.rental * (1.0 + ctx.profit_floor) * (1.0 - 1e-12))
    flag(report, "trade closed below the rental floor");
  if (std::abs(collected - out.revenue) >
      1e-9 * std::max(1.0, out.revenue))
    flag(report, "revenue does not match the payments collected");
  if (out.path == PricingPath::CostShare) {
    if (out.revenue != out.target_revenue)
      flag(report, "cost-share revenue is not exactly the target");
  }

  // The envy surface: whoever was dropped or skipped must not both fit the
  // remaining space and afford the final price.
  const double remaining = ctx.capacity_flops - sold;
  for (std::uint64_t user : out.removed) {
    const EdgeDemand* d = find_demand(user);
    if (!d) continue;
    if (d->density() >= out.price * (1.0 + 1e-12))
      flag(report, who(user) + " was dropped although it affords the price");
  }
  std::vector<std::uint64_t> admitted_users;
  for (std::size_t i : result.roso.admitted)
    admitted_users.push_back(demands[i].user_id);
  for (const auto& d : demands) {
    if (d.density() < result.roso.reserve) continue;  // reserve-filtered
    if (std::find(seen.begin(), seen.end(), d.user_id) != seen.end()) continue;
    if (std::find(out.removed.begin(), out.removed.end(), d.user_id) !=
        out.removed.end())
      continue;
    if (std::find(admitted_users.begin(), admitted_users.end(), d.user_id) !=
        admitted_users.end())
      continue;
    if (d.density() >= out.price * (1.0 + 1e-12) && remaining - d.flops > 0)
      flag(report, who(d.user_id) +
                       " was skipped although it fits and affords the price");
  }

  // Deadline audit for charged winners when the device context is available.
  if (ctx.bidders && ctx.profiles) {
    for (const auto& w : out.winners) {
      if (w.payment <= 0) continue;
      const SlotBidder* bidder = nullptr;
      for (const auto& b : *ctx.bidders)
        if (b.bid.user_id == w.user_id) bidder = &b;
      if (!bidder) continue;
      const double latency =
          total_latency((*ctx.profiles)[bidder->profile_idx],
                        bidder->bid.sigma, w.partition, bidder->link, w.flops,
                        ctx.latency);
      if (latency > bidder->bid.latency_req_s * (1.0 + 1e-9))
        flag(report, who(w.user_id) + " is charged but misses its deadline");
    }
  }
  return report;
}

std::vector<EdgeDemand> random_demands(Rng& rng,
                                       const RandomDemandOpts& opts) {
  const int n = opts.min_users +
                static_cast<int>(rng.below(opts.max_users - opts.min_users + 1));
  std::vector<EdgeDemand> demands;
  for (int i = 0; i < n; ++i) {
    EdgeDemand d;
    d.user_id = static_cast<std::uint64_t>(i) + 1;
    d.flops = rng.uniform(opts.flops_min, opts.flops_max);
    d.budget = rng.uniform(opts.budget_min, opts.budget_max);
    d.partition = 1;
    demands.push_back(d);
  }
  return demands;
}

TrendReport spearman_trend(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("spearman_trend: need matched series, n >= 3");
  const auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {  // mid-ranks for ties
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double mid = 0.5 * (i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = mid;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0, var_x = 0, var_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (rx[i] - mean_x) * (ry[i] - mean_y);
    var_x += (rx[i] - mean_x) * (rx[i] - mean_x);
    var_y += (ry[i] - mean_y) * (ry[i] - mean_y);
  }
  TrendReport report;
  if (var_x == 0 || var_y == 0) return report;
  report.rho = cov / std::sqrt(var_x * var_y);
  // One-sided p for rho > 0 via the t approximation with n - 2 dof, using the
  // regularized incomplete beta through continued fractions.
  const double df = n - 2.0;
  const double t = report.rho * std::sqrt(df / std::max(1e-300, 1.0 - report.rho * report.rho));
  const auto betacf = [](double a, double b, double xx) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * xx / qap;
    if (std::abs(d) < 1e-300) d = 1e-300;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 200; ++m) {
      const int m2 = 2 * m;
      double aa = m * (b - m) * xx / ((qam + m2) * (a + m2));
      d = 1.0 + aa * d;
      if (std::abs(d) < 1e-300) d = 1e-300;
      c = 1.0 + aa / c;
      if (std::abs(c) < 1e-300) c = 1e-300;
      d = 1.0 / d;
      h *= d * c;
      aa = -(a + m) * (qab + m) * xx / ((a + m2) * (qap + m2));
      d = 1.0 + aa * d;
      if (std::abs(d) < 1e-300) d = 1e-300;
      c = 1.0 + aa / c;
      if (std::abs(c) < 1e-300) c = 1e-300;
      d = 1.0 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < 1e-12) break;
    }
    return h;
  };
  const auto inc_beta = [&](double a, double b, double xx) {
    if (xx <= 0) return 0.0;
    if (xx >= 1) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b) + a * std::log(xx) +
                            b * std::log(1.0 - xx);
    const double front = std::exp(ln_front);
    if (xx < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, xx) / a;
    return 1.0 - front * betacf(b, a, 1.0 - xx) / b;
  };
  const double xbeta = df / (df + t * t);
  double two_sided = inc_beta(0.5 * df, 0.5, xbeta);
  two_sided = std::clamp(two_sided, 0.0, 1.0);
  report.p_one_sided = t > 0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
  return report;
}

}  // namespace aeria
