#include "aeria/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aeria/config.hpp"
#include "aeria/errors.hpp"
#include "aeria/oracle.hpp"
#include "aeria/report.hpp"

namespace aeria {

namespace {

using nlohmann::json;

// Precedence: explicit --seed, then AERIA_SEED, then the fallback (config
// seed or 1).
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value,
                           std::uint64_t fallback) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("AERIA_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw DataError(std::string("AERIA_SEED is not a valid seed: ") + env);
    }
  }
  return fallback;
}

const char* path_name(PricingPath p) {
  switch (p) {
    case PricingPath::NoTrade: return "no-trade";
    case PricingPath::PostedPrice: return "posted-price";
    case PricingPath::CostShare: return "cost-share";
  }
  return "unknown";
}

const char* reason_name(NoTradeReason r) {
  switch (r) {
    case NoTradeReason::None: return "none";
    case NoTradeReason::NoBidders: return "no-bidders";
    case NoTradeReason::TargetUnaffordable: return "target-unaffordable";
    case NoTradeReason::RevenueBelowFloor: return "revenue-below-floor";
  }
  return "unknown";
}

int cmd_simulate(const std::string& config_path, bool seed_given,
                 std::uint64_t seed, bool slots_given, int slots_override,
                 const std::vector<std::string>& mechanisms,
                 const std::string& out_path, const std::string& format,
                 bool quiet) {
  MarketConfig config = load_config(config_path);
  config.seed = resolve_seed(seed_given, seed, config.seed);
  if (slots_given) {
    if (slots_override < 0) throw DataError("simulate: slot count is negative");
    config.slot_count = slots_override;
  }
  if (!mechanisms.empty()) {
    config.mechanisms.clear();
    for (const auto& name : mechanisms)
      config.mechanisms.push_back(mechanism_from_string(name));
  }
  const RunReport report = run(config);
  if (!out_path.empty()) save_report(report, config, out_path, format);
  if (!quiet) {
    for (const auto& a : report.aggregates) {
      std::cout << to_string(a.mechanism) << ": trades " << a.trade_slots << "/"
                << config.slot_count << ", mean revenue " << a.mean_revenue
                << ", mean profit rate " << a.mean_profit_rate
                << ", mean fulfilled " << a.mean_fulfilled << "\n";
    }
    if (!out_path.empty())
      std::cout << "report written to " << out_path << "\n";
  }
  return 0;
}

int cmd_auction(const std::string& demands_path, bool seed_given,
                std::uint64_t seed, const std::string& out_path) {
  std::ifstream in(demands_path);
  if (!in) throw DataError("cannot open demands file: " + demands_path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw DataError("demands file: JSON parse error");

  double capacity = 0, rental = 0, floor = 1.0;
  std::vector<EdgeDemand> demands;
  try {
    capacity = j.at("edge_capacity_flops").get<double>();
    rental = j.at("rental_price").get<double>();
    if (j.contains("profit_floor")) floor = j.at("profit_floor").get<double>();
    for (const auto& d : j.at("demands")) {
      EdgeDemand e;
      e.user_id = d.at("user_id").get<std::uint64_t>();
      e.budget = d.at("budget").get<double>();
      e.flops = d.at("flops").get<double>();
      if (d.contains("partition")) e.partition = d.at("partition").get<int>();
      demands.push_back(e);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("demands file: ") + e.what());
  }
  if (!(capacity > 0)) throw DataError("demands file: capacity must be positive");
  for (const auto& d : demands) {
    if (!(d.flops > 0))
      throw DataError("demands file: request flops must be positive");
    if (d.budget < 0) throw DataError("demands file: negative budget");
  }

  Rng rng = named_stream(resolve_seed(seed_given, seed, 1), "auction");
  const AuctionResult result =
      run_auction(demands, capacity, rental, floor, rng);

  json out;
  out["reserve"] = result.roso.reserve;
  json admitted = json::array();
  for (std::size_t i : result.roso.admitted)
    admitted.push_back(demands[i].user_id);
  out["benchmark"] = {{"upper_revenue", result.roso.upper_revenue},
                      {"prefix_volume", result.roso.prefix_volume},
                      {"prefix_len", result.roso.prefix_len},
                      {"max_admitted_flops", result.roso.max_admitted_flops},
                      {"admitted_users", admitted}};
  if (result.centre)
    out["consensus"] = {{"delta", result.centre->delta},
                        {"y", result.centre->y},
                        {"epsilon", result.centre->epsilon},
                        {"target_revenue", result.centre->target_revenue},
                        {"draws", result.centre->draws}};
  else
    out["consensus"] = nullptr;
  json winners = json::array();
  for (const auto& w : result.outcome.winners)
    winners.push_back({{"user_id", w.user_id},
                       {"flops", w.flops},
                       {"partition", w.partition},
                       {"payment", w.payment}});
  out["outcome"] = {{"trade", result.outcome.trade},
                    {"path", path_name(result.outcome.path)},
                    {"no_trade_reason", reason_name(result.outcome.reason)},
                    {"price", result.outcome.price},
                    {"revenue", result.outcome.revenue},
                    {"target_revenue", result.outcome.target_revenue},
                    {"winners", winners},
                    {"removed", result.outcome.removed}};
  const std::string text = out.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw DataError("cannot write output file: " + out_path);
    os << text << "\n";
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, int instances, int draws, int sim_slots) {
  if (instances <= 0)
    throw DataError("verify: instance count must be positive");
  if (draws <= 0) throw DataError("verify: draw count must be positive");
  if (sim_slots <= 0) throw DataError("verify: slot count must be positive");
  int failures = 0;
  const auto line = [&](bool ok, const std::string& name,
                        const std::string& detail) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << detail
              << "\n";
    if (!ok) ++failures;
  };

  {  // exhaustive single-price search agrees with the greedy benchmark
    Rng rng = named_stream(seed, "verify/bruteforce");
    RandomDemandOpts opts;
    opts.capacity = 12.0;  // tight: admission skips requests regularly
    int bad = 0;
    for (int i = 0; i < instances; ++i) {
      const auto demands = random_demands(rng, opts);
      const auto greedy = roso(demands, opts.capacity, opts.reserve);
      const auto exact =
          brute_force_single_price(demands, opts.capacity, opts.reserve);
      if (greedy.upper_revenue != exact.best_revenue) ++bad;
    }
    line(bad == 0, "single-price benchmark",
         std::to_string(instances) + " instances, " + std::to_string(bad) +
             " mismatches");
  }

  {  // bid-independence of the accepted estimate plus the worst-case bound
    Rng rng = named_stream(seed, "verify/consensus");
    int checked = 0, estimate_bad = 0, bound_bad = 0, guard = 0;
    RandomDemandOpts opts;  // ample capacity: every request is admitted
    while (checked < instances && guard < instances * 50) {
      ++guard;
      const auto demands = random_demands(rng, opts);
      const auto greedy = roso(demands, opts.capacity, opts.reserve);
      if (greedy.admitted.empty() || !delta(greedy)) continue;
      const auto drawn = centre(greedy, rng);
      const auto report = check_consensus(demands, opts.capacity, opts.reserve,
                                          drawn.y, drawn.epsilon);
      ++checked;
      estimate_bad += static_cast<int>(report.estimate_violations.size());
      bound_bad += static_cast<int>(report.bound_violations.size());
    }
    line(estimate_bad == 0 && bound_bad == 0 && checked == instances,
         "consensus estimate",
         std::to_string(checked) + " instances, " +
             std::to_string(estimate_bad) + " estimate moves, " +
             std::to_string(bound_bad) + " bound violations");
  }

  {  // sampled grid estimates follow the closed-form law
    Rng rng = named_stream(seed, "verify/distribution");
    const auto report = check_distribution(100.0, 4.0, draws, rng);
    const double threshold = 2.0 / std::sqrt(static_cast<double>(draws));
    std::ostringstream detail;
    detail << "KS " << report.ks_stat << " over " << draws
           << " draws (threshold " << threshold << ")";
    line(report.ks_stat < threshold, "estimate distribution", detail.str());
  }

  {  // unconditioned mean stays above the guaranteed share
    Rng rng = named_stream(seed, "verify/expectation");
    bool ok = true;
    std::ostringstream detail;
    for (double d : {1.8, 2.0}) {
      const auto report = check_expectation(18.9, d, draws, rng);
      ok = ok && report.pass;
      detail << "delta " << d << ": mean " << report.mean << " vs bound "
             << report.bound << "; ";
    }
    line(ok, "expected revenue share", detail.str());
  }

  {  // a short default simulation passes the outcome audit on every slot
    MarketConfig config;
    config.slot_count = sim_slots;
    config.seed = seed;
    config.keep_slot_details = true;
    const RunReport report = run(config);
    const auto profiles = default_catalog();
    int bad_slots = 0;
    std::string first_issue;
    for (const auto& detail : report.details) {
      for (const auto& mr : detail.results) {
        if (mr.mechanism != Mechanism::Aeria) continue;
        OutcomeContext ctx;
        ctx.demands = &mr.demands;
        ctx.bidders = &detail.bidders;
        ctx.profiles = &profiles;
        ctx.capacity_flops = config.edge_capacity_flops;
        ctx.rental = detail.rental;
        ctx.profit_floor = config.profit_floor;
        ctx.latency = config.latency;
        const auto audit = check_outcome(mr.auction, ctx);
        if (!audit.ok) {
          ++bad_slots;
          if (first_issue.empty()) first_issue = audit.issues.front();
        }
      }
    }
    line(bad_slots == 0, "slot outcome audit",
         std::to_string(sim_slots) + " slots, " + std::to_string(bad_slots) +
             " failed" +
             (first_issue.empty() ? "" : " (first: " + first_issue + ")"));
  }

  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    return 3;
  }
  std::cout << "all checks passed\n";
  return 0;
}

int cmd_gen_profiles(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& profile : default_catalog()) {
    const std::string path =
        (std::filesystem::path(out_dir) / (profile.id + ".json")).string();
    save_profile(profile, path);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_gen_traces(const std::string& out_dir, int slots, bool seed_given,
                   std::uint64_t seed) {
  if (slots <= 0) throw DataError("gen-traces: slot count must be positive");
  std::filesystem::create_directories(out_dir);
  const std::uint64_t root = resolve_seed(seed_given, seed, 1);
  Rng price_rng = named_stream(root, "trace/prices");
  Rng count_rng = named_stream(root, "trace/counts");
  Rng rate_rng = named_stream(root, "trace/rates");
  const auto dir = std::filesystem::path(out_dir);
  save_value_trace(synth_price_trace(slots, price_rng), "price",
                   (dir / "electricity_prices.csv").string());
  save_count_trace(synth_count_trace(slots, count_rng),
                   (dir / "bidder_counts.csv").string());
  save_value_trace(synth_rate_trace(slots, rate_rng), "mean_rate",
                   (dir / "mean_rates.csv").string());
  std::cout << "traces written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"aeria: slot market simulator for edge AI inference"};
  app.require_subcommand(1);

  std::string config_path, out_path, demands_path, out_dir;
  std::string format = "json";
  std::vector<std::string> mechanisms;
  std::uint64_t seed = 0;
  int slots_override = 0, gen_slots = 360;
  int instances = 200, draws = 20000, sim_slots = 48;
  bool quiet = false;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the slot market simulation from a config file");
  simulate->add_option("--config", config_path, "Market config JSON")
      ->required();
  auto* sim_seed = simulate->add_option("--seed", seed, "Root RNG seed");
  auto* sim_slots_opt = simulate->add_option(
      "--slots", slots_override, "Override the configured slot count");
  simulate->add_option("--mechanism,--mechanisms", mechanisms,
                       "Mechanisms to run (comma separated)")
      ->delimiter(',');
  simulate->add_option("--out", out_path, "Report output file");
  simulate->add_option("--format", format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_flag("--quiet", quiet, "Suppress the stdout summary");

  CLI::App* auction = app.add_subcommand(
      "auction", "Price a single slot from a demands file");
  auction->add_option("--demands", demands_path, "Demands JSON file")
      ->required();
  auto* auc_seed = auction->add_option("--seed", seed, "Root RNG seed");
  auction->add_option("--out", out_path, "Output file (default: stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the self-verification battery");
  auto* ver_seed = verify->add_option("--seed", seed, "Root RNG seed");
  verify->add_option("--instances", instances,
                     "Random instances per property check");
  verify->add_option("--draws", draws, "Monte Carlo draws per statistical check");
  verify->add_option("--sim-slots", sim_slots,
                     "Slots in the audited simulation");

  CLI::App* gen_profiles = app.add_subcommand(
      "gen-profiles", "Write the bundled model profiles as JSON");
  gen_profiles->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* gen_traces = app.add_subcommand(
      "gen-traces", "Write synthetic price, bidder and rate traces");
  gen_traces->add_option("--out", out_dir, "Output directory")->required();
  gen_traces->add_option("--slots", gen_slots, "Trace length in slots");
  auto* gen_seed = gen_traces->add_option("--seed", seed, "Root RNG seed");

  std::vector<const char*> argv;
  argv.push_back("aeria");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed())
      return cmd_simulate(config_path, !sim_seed->empty(), seed,
                          !sim_slots_opt->empty(), slots_override, mechanisms,
                          out_path, format, quiet);
    if (auction->parsed())
      return cmd_auction(demands_path, !auc_seed->empty(), seed, out_path);
    if (verify->parsed())
      return cmd_verify(resolve_seed(!ver_seed->empty(), seed, 1), instances,
                        draws, sim_slots);
    if (gen_profiles->parsed()) return cmd_gen_profiles(out_dir);
    if (gen_traces->parsed())
      return cmd_gen_traces(out_dir, gen_slots, !gen_seed->empty(), seed);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace aeria
