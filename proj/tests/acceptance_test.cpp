// Acceptance gate: eleven scripted checks, one PASS/FAIL line each.
// Exits nonzero when any check fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aeria/auction.hpp"
#include "aeria/cli.hpp"
#include "aeria/config.hpp"
#include "aeria/demand.hpp"
#include "aeria/latency.hpp"
#include "aeria/oracle.hpp"
#include "aeria/profile.hpp"
#include "aeria/report.hpp"
#include "aeria/rng.hpp"
#include "aeria/simulator.hpp"

using namespace aeria;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kRootSeed = 20260814;

int g_failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void line(int idx, bool ok, const std::string& name, const std::string& detail,
          double secs) {
  if (!ok) ++g_failures;
  std::printf("%s  %2d  %-26s  %s  [%.2fs]\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
// Greedy single-price benchmark equals exhaustive search, exactly, on 1000
// random instances whose demands all fit together; total runtime under 5 s.
void criterion_01() {
  const auto start = Clock::now();
  Rng rng = named_stream(kRootSeed, "acceptance/roso-oracle");
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 3 + static_cast<int>(rng.below(10));  // 3..12 users
    std::vector<EdgeDemand> demands;
    double total = 0.0;
    for (int u = 0; u < n; ++u) {
      EdgeDemand d;
      d.user_id = static_cast<std::uint64_t>(u) + 1;
      d.budget = rng.uniform(0.5, 20.0);
      d.flops = rng.uniform(0.5, 4.0);
      d.partition = 1;
      total += d.flops;
      demands.push_back(d);
    }
    const double capacity = total * (1.0 + rng.u01());
    const double reserve = (i % 2 == 0) ? 0.0 : rng.uniform(0.0, 1.0);
    const RosoResult greedy = roso(demands, capacity, reserve);
    const BruteForceResult exact =
        brute_force_single_price(demands, capacity, reserve);
    if (greedy.upper_revenue != exact.best_revenue) ++mismatches;
  }
  const double secs = seconds_since(start);
  line(1, mismatches == 0 && secs < 5.0, "benchmark-vs-brute-force",
       "1000 instances, " + std::to_string(mismatches) +
           " revenue mismatches (exact comparison), runtime limit 5 s",
       secs);
}

// ----------------------------------------------------------- criteria 2 and 3
// On 1000 instances where the stopping rule holds, removing any single bid
// leaves the grid estimate unchanged (1e-9 relative), and the benchmark
// without that bid stays above benchmark*(volume-max)/volume - 1e-9.
void criteria_02_03() {
  const auto start = Clock::now();
  Rng rng = named_stream(kRootSeed, "acceptance/consensus");
  RandomDemandOpts opts;  // ample capacity: all demands fit together
  int accepted = 0, attempts = 0, estimate_bad = 0, bound_bad = 0;
  while (accepted < 1000 && attempts < 100000) {
    ++attempts;
    const auto demands = random_demands(rng, opts);
    const RosoResult r = roso(demands, opts.capacity, opts.reserve);
    const double eps = rng.u01();
    if (!(r.upper_revenue > 0)) continue;
    const auto d = delta(r);
    if (!d) continue;
    const ConsensusReport report =
        check_consensus(demands, opts.capacity, opts.reserve, optimal_y(*d), eps);
    if (!report.criterion_holds) continue;
    ++accepted;
    estimate_bad += static_cast<int>(report.estimate_violations.size());
    bound_bad += static_cast<int>(report.bound_violations.size());
  }
  const double secs = seconds_since(start);
  const std::string base = std::to_string(accepted) + "/1000 accepted in " +
                           std::to_string(attempts) + " attempts";
  line(2, accepted == 1000 && estimate_bad == 0, "estimate-bid-independence",
       base + ", " + std::to_string(estimate_bad) +
           " single-removal estimate changes (tol 1e-9 rel)",
       secs);
  line(3, accepted == 1000 && bound_bad == 0, "single-removal-lower-bound",
       base + ", " + std::to_string(bound_bad) +
           " drops below benchmark*(vol-max)/vol - 1e-9",
       secs);
}

// ---------------------------------------------------------------- criterion 4
// The grid estimate follows the closed-form law value*y^(E-1): KS < 0.01 on
// 1e5 draws for (value, y) in {(100, 4), (18.9, 4.51)}.
void criterion_04() {
  const auto start = Clock::now();
  Rng rng = named_stream(kRootSeed, "acceptance/distribution");
  bool ok = true;
  std::string detail;
  const std::pair<double, double> cases[] = {{100.0, 4.0}, {18.9, 4.51}};
  for (const auto& [value, y] : cases) {
    const DistributionReport r = check_distribution(value, y, 100000, rng);
    ok = ok && r.ks_stat < 0.01;
    if (!detail.empty()) detail += ", ";
    detail += "KS(" + num(value) + "," + num(y) + ")=" + num(r.ks_stat, 3);
  }
  line(4, ok, "estimate-distribution", detail + " over 1e5 draws, limit 0.01",
       seconds_since(start));
}

// ---------------------------------------------------------------- criterion 5
// The Monte-Carlo mean share of the grid estimate clears the guaranteed
// factor (1/ln y)(1/delta - 1/y) x 0.99, and that factor equals 1/y at the
// optimizing y within 1e-8.
void criterion_05() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (double d : {1.8, 2.0}) {
    const double y = optimal_y(d);
    const double factor = consensus_bound_factor(d, y);
    const bool at_optimum = std::abs(factor - 1.0 / y) <= 1e-8;
    Rng rng = named_stream(kRootSeed, "acceptance/expectation",
                           static_cast<std::uint64_t>(d * 10));
    const double value = 18.9;
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i)
      sum += consensus_estimate(value, y, rng.u01()) / value;
    const double mean_share = sum / 100000.0;
    ok = ok && at_optimum && mean_share >= factor * 0.99;
    if (!detail.empty()) detail += ", ";
    detail += "delta=" + num(d) + ": mean=" + num(mean_share, 4) +
              " vs bound=" + num(factor, 4) + (at_optimum ? "" : " (not 1/y!)");
  }
  line(5, ok, "expected-share-bound", detail + " over 1e5 draws each",
       seconds_since(start));
}

// ---------------------------------------------------------------- criterion 6
// A default 360-slot simulation passes the outcome audit on every slot of
// every mechanism: flat price, budgets, capacity, floor gate, cost-share
// revenue identity, winner deadlines, envy surface.
void criterion_06() {
  const auto start = Clock::now();
  MarketConfig config;  // defaults: 360 slots, 1740 GFLOPS, bidders U(20,60)
  config.seed = kRootSeed;
  config.keep_slot_details = true;
  const RunReport report = run(config);
  const auto profiles = default_catalog();
  int audited = 0, bad = 0, trades = 0;
  std::string first_issue;
  for (const auto& detail : report.details) {
    for (const auto& mr : detail.results) {
      OutcomeContext ctx;
      ctx.demands = &mr.demands;
      ctx.bidders = &detail.bidders;
      ctx.profiles = &profiles;
      ctx.capacity_flops = config.edge_capacity_flops;
      ctx.rental = detail.rental;
      ctx.profit_floor = config.profit_floor;
      ctx.latency = config.latency;
      const OutcomeReport audit = check_outcome(mr.auction, ctx);
      ++audited;
      trades += mr.auction.outcome.trade ? 1 : 0;
      if (!audit.ok) {
        ++bad;
        if (first_issue.empty() && !audit.issues.empty())
          first_issue = " first: slot " + std::to_string(detail.slot) + " " +
                        to_string(mr.mechanism) + ": " + audit.issues.front();
      }
    }
  }
  const bool ok = report.details.size() == 360 && bad == 0;
  line(6, ok, "slot-outcome-audit",
       std::to_string(audited) + " slot outcomes audited (360 slots x " +
           std::to_string(config.mechanisms.size()) + " mechanisms), " +
           std::to_string(bad) + " violations, " + std::to_string(trades) +
           " trades" + first_issue,
       seconds_since(start));
}

// ---------------------------------------------------------------- criterion 7
// Per-user demand analysis equals exhaustive enumeration over all splits for
// 1000 random users, and the deadline binds exactly at the returned speed.
void criterion_07() {
  const auto start = Clock::now();
  Rng rng = named_stream(kRootSeed, "acceptance/demand");
  const auto profiles = default_catalog();
  const double capacity = 1740e9;
  int mismatches = 0, edge = 0, local = 0, infeasible = 0, latency_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const MeDnnProfile& p = profiles[rng.below(profiles.size())];
    DeviceLink link;
    link.device_flops = rng.uniform(0.5e9, 5.0e9);
    link.rate_bps = rng.uniform(20e6, 30e6);
    link.prop_delay_s = rng.uniform(0.0, 500.0 / 2.99792458e8);
    Bid bid;
    bid.user_id = static_cast<std::uint64_t>(i) + 1;
    bid.budget = rng.uniform(1e-3, 5e-2);
    bid.latency_req_s = rng.uniform(0.01, 1.0);
    bid.sigma = p.exit_probs[rng.below(p.exit_probs.size())].sigma;

    const DemandOutcome got = analyze_demand(bid, p, link, capacity);

    // Independent exhaustive scan with the published selection rule.
    int best_s = -1;
    double best_req = std::numeric_limits<double>::infinity();
    bool found = false;
    for (int s = 0; s <= p.depth(); ++s) {
      // same association as the library (t - dev - net): the comparison is
      // exact, so the oracle must evaluate the identical expression
      const double residual =
          bid.latency_req_s -
          device_latency(p, bid.sigma, s, link.device_flops) -
          network_latency(p, bid.sigma, s, link,
                          TransmissionModel::ContinuePastPartition);
      if (!(residual > 0)) continue;
      const double work = edge_flop(p, bid.sigma, s);
      const double req = work > 0 ? work / residual : 0.0;
      if (work > 0 && !(req < capacity)) continue;
      if (!found || req <= best_req) {
        best_req = req;
        best_s = s;
        found = true;
      }
    }
    const DemandKind want_kind = !found ? DemandKind::Infeasible
                                 : best_req == 0.0 ? DemandKind::LocalOnly
                                                   : DemandKind::EdgeRequest;
    if (got.kind != want_kind) {
      ++mismatches;
      continue;
    }
    if (want_kind == DemandKind::Infeasible) {
      ++infeasible;
      continue;
    }
    if (want_kind == DemandKind::LocalOnly) {
      ++local;
      if (got.partition != best_s) ++mismatches;
      continue;
    }
    ++edge;
    if (got.partition != best_s || got.edge_flops_req != best_req) {
      ++mismatches;
      continue;
    }
    const double lat = total_latency(p, bid.sigma, got.partition, link,
                                     got.edge_flops_req);
    if (std::abs(lat - bid.latency_req_s) > 1e-9 * bid.latency_req_s)
      ++latency_bad;
  }
  line(7, mismatches == 0 && latency_bad == 0, "demand-analysis-exactness",
       "1000 users (" + std::to_string(edge) + " edge, " +
           std::to_string(local) + " local, " + std::to_string(infeasible) +
           " infeasible): " + std::to_string(mismatches) + " mismatches, " +
           std::to_string(latency_bad) + " non-binding deadlines (1e-9 rel)",
       seconds_since(start));
}

// ---------------------------------------------------------------- criterion 8
// Incentive surface: on instances where the stopping rule holds for the
// original and both +/-50% budget perturbations of one user (same grid offset,
// base derived from the original instance), the target revenue is unchanged
// and the winner set changes only for the perturbed user.
void criterion_08() {
  const auto start = Clock::now();
  Rng rng = named_stream(kRootSeed, "acceptance/incentive");
  RandomDemandOpts opts;  // ample capacity: all demands fit together
  int accepted = 0, attempts = 0, target_bad = 0, winner_bad = 0;
  int crossings_in_bad = 0;
  while (accepted < 500 && attempts < 200000) {
    ++attempts;
    const auto demands = random_demands(rng, opts);
    const RosoResult base_r = roso(demands, opts.capacity, opts.reserve);
    const double eps = rng.u01();
    const std::size_t j = rng.below(demands.size());
    if (!(base_r.upper_revenue > 0)) continue;
    const auto d0 = delta(base_r);
    if (!d0) continue;
    const double y = optimal_y(*d0);

    const ConsensusReport base =
        check_consensus(demands, opts.capacity, opts.reserve, y, eps);
    if (!base.criterion_holds) continue;

    std::vector<std::vector<EdgeDemand>> sides;
    bool all_hold = true;
    std::vector<ConsensusReport> side_reports;
    for (double scale : {1.5, 0.5}) {
      auto pert = demands;
      pert[j].budget *= scale;
      const ConsensusReport rep =
          check_consensus(pert, opts.capacity, opts.reserve, y, eps);
      if (!rep.criterion_holds) all_hold = false;
      sides.push_back(std::move(pert));
      side_reports.push_back(rep);
    }
    if (!all_hold) continue;
    ++accepted;

    const auto winner_ids = [](const AuctionOutcome& out) {
      std::set<std::uint64_t> ids;
      for (const auto& w : out.winners) ids.insert(w.user_id);
      return ids;
    };
    const AuctionOutcome base_out =
        cost_share(base.estimate, demands, base_r);
    const std::set<std::uint64_t> base_w = winner_ids(base_out);
    for (std::size_t side = 0; side < sides.size(); ++side) {
      const ConsensusReport& rep = side_reports[side];
      if (std::abs(rep.estimate - base.estimate) > 1e-9 * base.estimate) {
        ++target_bad;
        continue;
      }
      const RosoResult pert_r = roso(sides[side], opts.capacity, opts.reserve);
      const AuctionOutcome pert_out =
          cost_share(rep.estimate, sides[side], pert_r);
      std::set<std::uint64_t> diff;
      const std::set<std::uint64_t> pert_w = winner_ids(pert_out);
      std::set_symmetric_difference(base_w.begin(), base_w.end(),
                                    pert_w.begin(), pert_w.end(),
                                    std::inserter(diff, diff.begin()));
      diff.erase(demands[j].user_id);
      if (!diff.empty()) {
        ++winner_bad;
        // diagnostic: did the perturbation cross another user's density?
        const double lo = std::min(demands[j].density(),
                                   sides[side][j].density());
        const double hi = std::max(demands[j].density(),
                                   sides[side][j].density());
        for (std::size_t u = 0; u < demands.size(); ++u)
          if (u != j && demands[u].density() >= lo &&
              demands[u].density() <= hi) {
            ++crossings_in_bad;
            break;
          }
      }
    }
  }
  const double secs = seconds_since(start);
  const std::string base_detail = std::to_string(accepted) +
                                  "/500 accepted in " +
                                  std::to_string(attempts) + " attempts, ";
  line(8, accepted == 500 && target_bad == 0, "incentive-target-invariance",
       base_detail + std::to_string(target_bad) +
           " target-revenue changes under +/-50% budget (tol 1e-9 rel)",
       secs);
  std::string winner_detail =
      base_detail + std::to_string(winner_bad) +
      " of 1000 perturbations changed another user's winner status";
  if (winner_bad > 0)
    winner_detail +=
        " (" + std::to_string(crossings_in_bad) +
        " crossed another user's density; the cost-share removal cascade is"
        " order-sensitive, see the frozen counterexample in the auction suite"
        " and the README's known-limitations section)";
  line(8, accepted == 500 && winner_bad == 0, "incentive-winner-stability",
       winner_detail, secs);
}

// ---------------------------------------------------------------- criterion 9
// Directional trends over 100 paired seeds and 60-slot runs: mean revenue of
// the consensus mechanism is non-decreasing in the bidder count and in the
// edge capacity (Spearman >= 0, p < 0.05 over the per-seed points), and beats
// the fixed-profit-rate baseline. Baseline orderings are reported only.
struct SweepResult {
  std::vector<double> xs, aeria_points;
  std::vector<double> mean_by_setting;          // mechanism Aeria
  std::vector<double> fpr_by_setting;
  double aeria_total = 0.0, fpr_total = 0.0;
  double iao_total = 0.0, edgent_total = 0.0, amr2_total = 0.0;
};

template <typename Apply>
SweepResult run_sweep(const std::vector<double>& settings, Apply apply) {
  SweepResult sw;
  sw.mean_by_setting.assign(settings.size(), 0.0);
  sw.fpr_by_setting.assign(settings.size(), 0.0);
  const int seeds = 100;
  for (int seed = 1; seed <= seeds; ++seed) {
    for (std::size_t s = 0; s < settings.size(); ++s) {
      MarketConfig config;
      config.slot_count = 60;
      config.seed = static_cast<std::uint64_t>(seed);
      config.mechanisms = {Mechanism::Aeria, Mechanism::FixedProfitRate,
                           Mechanism::Amr2Like, Mechanism::IaoLike,
                           Mechanism::EdgentLike};
      apply(config, settings[s]);
      const RunReport report = run(config);
      double aeria = 0, fpr = 0, iao = 0, edgent = 0, amr2 = 0;
      for (const auto& agg : report.aggregates) {
        if (agg.mechanism == Mechanism::Aeria) aeria = agg.mean_revenue;
        if (agg.mechanism == Mechanism::FixedProfitRate) fpr = agg.mean_revenue;
        if (agg.mechanism == Mechanism::IaoLike) iao = agg.mean_revenue;
        if (agg.mechanism == Mechanism::EdgentLike) edgent = agg.mean_revenue;
        if (agg.mechanism == Mechanism::Amr2Like) amr2 = agg.mean_revenue;
      }
      sw.xs.push_back(settings[s]);
      sw.aeria_points.push_back(aeria);
      sw.mean_by_setting[s] += aeria / seeds;
      sw.fpr_by_setting[s] += fpr / seeds;
      sw.aeria_total += aeria;
      sw.fpr_total += fpr;
      sw.iao_total += iao;
      sw.edgent_total += edgent;
      sw.amr2_total += amr2;
    }
  }
  return sw;
}

void report_sweep(int idx, const std::string& name, const SweepResult& sw,
                  double secs) {
  bool monotone = true;
  for (std::size_t s = 1; s < sw.mean_by_setting.size(); ++s)
    if (sw.mean_by_setting[s] < sw.mean_by_setting[s - 1]) monotone = false;
  const TrendReport trend = spearman_trend(sw.xs, sw.aeria_points);
  const bool trend_ok = trend.rho >= 0.0 && trend.p_one_sided < 0.05;
  const bool beats_fpr = sw.aeria_total >= sw.fpr_total;
  std::string means;
  for (std::size_t s = 0; s < sw.mean_by_setting.size(); ++s)
    means += (s ? "/" : "") + num(sw.mean_by_setting[s], 4);
  const double n = static_cast<double>(sw.xs.size());
  line(idx, monotone && trend_ok && beats_fpr, name,
       "means " + means + ", rho=" + num(trend.rho, 3) +
           " p=" + num(trend.p_one_sided, 3) + "; totals per slot: ours " +
           num(sw.aeria_total / n, 4) + " vs fixed-rate " +
           num(sw.fpr_total / n, 4) + " (reported: iao " +
           num(sw.iao_total / n, 4) + ", edgent " +
           num(sw.edgent_total / n, 4) + ", amr2 " + num(sw.amr2_total / n, 4) +
           ")",
       secs);
}

void criterion_09() {
  {
    const auto start = Clock::now();
    const SweepResult sw = run_sweep({20.0, 40.0, 60.0},
                                     [](MarketConfig& c, double setting) {
                                       c.bidders_min = static_cast<int>(setting);
                                       c.bidders_max = static_cast<int>(setting);
                                     });
    report_sweep(9, "revenue-vs-bidder-count", sw, seconds_since(start));
  }
  {
    // The capacity direction only exists where capacity constrains the
    // market. With the default population the revenue-maximizing prefix
    // never touches even the smallest capacity (the benchmark is identical
    // across all three settings), so the sweep runs a crowded market of
    // comparably sized requests: 60 bidders on the heaviest bundled model
    // with sub-half-second deadlines, about 6 TFLOPS of aggregate demand.
    const auto start = Clock::now();
    const SweepResult sw = run_sweep(
        {0.87e12, 1.74e12, 3.48e12}, [](MarketConfig& c, double setting) {
          c.edge_capacity_flops = setting;
          c.bidders_min = 60;
          c.bidders_max = 60;
          c.population.device_flops_min = 0.5e9;
          c.population.device_flops_max = 1.5e9;
          c.population.budget_min = 0.02;
          c.population.budget_max = 0.05;
          c.population.latency_req_min_s = 0.2;
          c.population.latency_req_max_s = 0.4;
          c.profiles = {default_catalog()[3]};
        });
    report_sweep(9, "revenue-vs-capacity", sw, seconds_since(start));
  }
}

// --------------------------------------------------------------- criterion 10
// One full slot (demand analysis plus the pricing pipeline) with 200 active
// users completes within 10 ms median.
void criterion_10() {
  const auto start = Clock::now();
  MarketConfig config;
  config.seed = kRootSeed;
  config.bidders_min = 200;
  config.bidders_max = 200;
  const auto profiles = default_catalog();
  Rng pop_rng = named_stream(config.seed, "population");
  const auto population =
      generate_population(config.population, profiles.size(), pop_rng);
  const double rental = rental_price(config.electricity_price_kwh,
                                     config.server_power_w, config.pue,
                                     config.slot_duration_h);
  std::vector<double> ms;
  double sink = 0.0;
  for (int rep = 0; rep < 31; ++rep) {
    const auto bidders = draw_slot_bidders(config, population, profiles, rep);
    Rng mech_rng = named_stream(config.seed, "mech/aeria",
                                static_cast<std::uint64_t>(rep));
    const auto t0 = Clock::now();
    const MechanismSlotResult result = run_mechanism_slot(
        Mechanism::Aeria, config, profiles, bidders, rental, mech_rng);
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0)
                     .count());
    sink += result.auction.outcome.revenue;
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  line(10, median <= 10.0, "slot-runtime-200-users",
       "median " + num(median, 3) + " ms, min " + num(ms.front(), 3) +
           " ms, max " + num(ms.back(), 3) + " ms over 31 slots (limit 10 ms)" +
           (sink < 0 ? "!" : ""),
       seconds_since(start));
}

// --------------------------------------------------------------- criterion 11
// Two CLI simulation runs with the same config and seed produce byte-identical
// reports, in both output formats.
void criterion_11() {
  const auto start = Clock::now();
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("aeria-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  MarketConfig config;
  config.slot_count = 24;
  const std::string cfg = (dir / "config.json").string();
  save_config(config, cfg);

  const auto read_all = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  bool ok = true;
  std::string detail;
  for (const std::string format : {"json", "csv"}) {
    const std::string a = (dir / ("a." + format)).string();
    const std::string b = (dir / ("b." + format)).string();
    const int ra = run_cli({"simulate", "--config", cfg, "--seed", "31415",
                            "--format", format, "--out", a, "--quiet"});
    const int rb = run_cli({"simulate", "--config", cfg, "--seed", "31415",
                            "--format", format, "--out", b, "--quiet"});
    const bool same = ra == 0 && rb == 0 && read_all(a) == read_all(b) &&
                      !read_all(a).empty();
    ok = ok && same;
    if (!detail.empty()) detail += ", ";
    detail += format + (same ? " identical" : " DIFFERS");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  line(11, ok, "report-determinism", detail + " across two seeded runs",
       seconds_since(start));
}

}  // namespace

int main() {
  std::printf("acceptance gate: consensus-auction edge market\n");
  criterion_01();
  criteria_02_03();
  criterion_04();
  criterion_05();
  criterion_06();
  criterion_07();
  criterion_08();
  criterion_09();
  criterion_10();
  criterion_11();
  std::printf("%s: %d failing criteria\n",
              g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
