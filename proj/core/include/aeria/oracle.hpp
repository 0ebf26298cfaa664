#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aeria/auction.hpp"
#include "aeria/simulator.hpp"

namespace aeria {

// Independent verifiers for the mechanism's claimed properties. These favor
// directness over speed and exist to cross-check the production code paths.

// Exhaustive single-price benchmark: tries every admissible density as the
// price and serves greedily. Caps the instance size to keep misuse obvious.
struct BruteForceResult {
  double best_revenue = 0.0;
  double best_price = 0.0;
  double best_volume = 0.0;
};
BruteForceResult brute_force_single_price(const std::vector<EdgeDemand>& demands,
                                          double capacity_flops, double reserve,
                                          std::size_t max_n = 12);

// Re-runs the benchmark with each single bid removed and checks that the grid
// estimate never moves and that the benchmark never drops below its
// advertised worst case.
struct ConsensusViolation {
  std::uint64_t removed_user = 0;
  double benchmark_without = 0.0;
  double estimate_without = 0.0;
};
struct ConsensusReport {
  bool criterion_holds = false;  // estimate <= benchmark / delta
  double estimate = 0.0;
  double benchmark = 0.0;
  double delta = 0.0;
  std::vector<ConsensusViolation> estimate_violations;
  std::vector<ConsensusViolation> bound_violations;
  bool ok() const {
    return estimate_violations.empty() && bound_violations.empty();
  }
};
ConsensusReport check_consensus(const std::vector<EdgeDemand>& demands,
                                double capacity_flops, double reserve,
                                double y, double epsilon);

// Kolmogorov-Smirnov distance between sampled grid estimates and the
// closed-form law  value * y^(E - 1), E uniform on [0, 1).
struct DistributionReport {
  double ks_stat = 0.0;
  int draws = 0;
};
DistributionReport check_distribution(double value, double y, int draws,
                                      Rng& rng);

// Monte-Carlo mean of the unconditioned grid estimate against the guaranteed
// share. Passes when mean >= bound - 3 standard errors.
struct ExpectationReport {
  double mean = 0.0;
  double bound = 0.0;
  double stderr_mean = 0.0;
  bool pass = false;
};
ExpectationReport check_expectation(double value, double delta, int draws,
                                    Rng& rng);

// Everything check_outcome needs to re-derive a winner's latency.
struct OutcomeContext {
  const std::vector<EdgeDemand>* demands = nullptr;
  const std::vector<SlotBidder>* bidders = nullptr;   // optional
  const std::vector<MeDnnProfile>* profiles = nullptr; // optional
  double capacity_flops = 0.0;
  double rental = 0.0;
  double profit_floor = 0.0;
  LatencyOptions latency;
};

// Audits one priced slot: flat price, budget balance, capacity, revenue floor,
// decision ranges, the cost-share revenue identity, deadline fulfillment of
// charged winners, and the envy surface (no dropped or skipped request that
// still fits could afford the final price).
struct OutcomeReport {
  bool ok = true;
  std::vector<std::string> issues;
};
OutcomeReport check_outcome(const AuctionResult& result,
                            const OutcomeContext& ctx);

// Random market instances for the verification batteries.
struct RandomDemandOpts {
  int min_users = 3;
  int max_users = 10;
  double flops_min = 0.5;
  double flops_max = 4.0;
  double budget_min = 0.5;
  double budget_max = 20.0;
  double capacity = 1e9;  // large: admission never binds by default
  double reserve = 0.0;
};
std::vector<EdgeDemand> random_demands(Rng& rng, const RandomDemandOpts& opts);

// Spearman rank correlation with a one-sided p-value for positive trend,
// via the t approximation. Used by the verification battery for trend checks.
struct TrendReport {
  double rho = 0.0;
  double p_one_sided = 1.0;
};
TrendReport spearman_trend(const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace aeria
