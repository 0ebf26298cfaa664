#include "aeria/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "aeria/errors.hpp"
#include "json.hpp"

namespace aeria {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw DataError("config: unknown key '" + key + "' in " + where);
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw DataError(std::string("config: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw DataError(std::string("config: '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

MarketConfig config_from_json(const std::string& text,
                              const std::string& base_dir) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("config: JSON parse error");
  if (!j.is_object()) throw DataError("config: top level must be an object");

  reject_unknown(j,
                 {"slot_duration_h", "slot_count", "edge_capacity_flops",
                  "profit_floor", "server_power_w", "pue",
                  "electricity_price_kwh", "seed", "population", "bidders",
                  "mechanisms", "transmission_model", "profiles", "traces"},
                 "top level");

  MarketConfig c;
  c.slot_duration_h = get_num(j, "slot_duration_h", c.slot_duration_h);
  c.slot_count = get_int(j, "slot_count", c.slot_count);
  c.edge_capacity_flops =
      get_num(j, "edge_capacity_flops", c.edge_capacity_flops);
  c.profit_floor = get_num(j, "profit_floor", c.profit_floor);
  c.server_power_w = get_num(j, "server_power_w", c.server_power_w);
  c.pue = get_num(j, "pue", c.pue);
  c.electricity_price_kwh =
      get_num(j, "electricity_price_kwh", c.electricity_price_kwh);
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw DataError("config: 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }

  if (c.slot_count < 0) throw DataError("config: slot_count is negative");
  if (!(c.edge_capacity_flops > 0))
    throw DataError("config: edge_capacity_flops must be positive");
  if (!(c.slot_duration_h > 0))
    throw DataError("config: slot_duration_h must be positive");
  if (c.profit_floor < 0) throw DataError("config: profit_floor is negative");

  if (j.contains("population")) {
    const json& p = j.at("population");
    reject_unknown(p,
                   {"user_count", "device_flops_min", "device_flops_max",
                    "rate_bps_min", "rate_bps_max", "placement_radius_m",
                    "budget_min", "budget_max", "latency_req_min_s",
                    "latency_req_max_s"},
                   "population");
    PopulationParams& pp = c.population;
    pp.user_count = get_int(p, "user_count", pp.user_count);
    pp.device_flops_min = get_num(p, "device_flops_min", pp.device_flops_min);
    pp.device_flops_max = get_num(p, "device_flops_max", pp.device_flops_max);
    pp.rate_bps_min = get_num(p, "rate_bps_min", pp.rate_bps_min);
    pp.rate_bps_max = get_num(p, "rate_bps_max", pp.rate_bps_max);
    pp.placement_radius_m =
        get_num(p, "placement_radius_m", pp.placement_radius_m);
    pp.budget_min = get_num(p, "budget_min", pp.budget_min);
    pp.budget_max = get_num(p, "budget_max", pp.budget_max);
    pp.latency_req_min_s =
        get_num(p, "latency_req_min_s", pp.latency_req_min_s);
    pp.latency_req_max_s =
        get_num(p, "latency_req_max_s", pp.latency_req_max_s);
    if (pp.user_count <= 0)
      throw DataError("config: population.user_count must be positive");
    if (!(pp.device_flops_min > 0) ||
        pp.device_flops_max < pp.device_flops_min)
      throw DataError("config: bad device speed range");
    if (!(pp.rate_bps_min > 0) || pp.rate_bps_max < pp.rate_bps_min)
      throw DataError("config: bad data rate range");
    if (!(pp.latency_req_min_s > 0) ||
        pp.latency_req_max_s < pp.latency_req_min_s)
      throw DataError("config: bad deadline range");
    if (pp.budget_min < 0 || pp.budget_max < pp.budget_min)
      throw DataError("config: bad budget range");
  }

  if (j.contains("bidders")) {
    const json& b = j.at("bidders");
    reject_unknown(b, {"process", "min", "max", "mean"}, "bidders");
    const std::string process =
        b.contains("process") ? b.at("process").get<std::string>() : "uniform";
    if (process == "uniform")
      c.bidder_process = BidderProcess::Uniform;
    else if (process == "poisson")
      c.bidder_process = BidderProcess::Poisson;
    else if (process == "trace")
      c.bidder_process = BidderProcess::Trace;
    else
      throw DataError("config: unknown bidder process '" + process + "'");
    c.bidders_min = get_int(b, "min", c.bidders_min);
    c.bidders_max = get_int(b, "max", c.bidders_max);
    c.bidders_mean = get_num(b, "mean", c.bidders_mean);
    if (c.bidders_min < 0 || c.bidders_max < c.bidders_min)
      throw DataError("config: bad bidder count range");
    if (c.bidders_mean < 0) throw DataError("config: negative bidder mean");
  }

  if (j.contains("mechanisms")) {
    if (!j.at("mechanisms").is_array())
      throw DataError("config: 'mechanisms' must be an array of names");
    c.mechanisms.clear();
    for (const auto& name : j.at("mechanisms"))
      c.mechanisms.push_back(mechanism_from_string(name.get<std::string>()));
    if (c.mechanisms.empty())
      throw DataError("config: 'mechanisms' must not be empty");
  }

  if (j.contains("transmission_model")) {
    const std::string mode = j.at("transmission_model").get<std::string>();
    if (mode == "continue-past-partition")
      c.latency.transmission = TransmissionModel::ContinuePastPartition;
    else if (mode == "arrival-at-partition")
      c.latency.transmission = TransmissionModel::ArrivalAtPartition;
    else
      throw DataError("config: unknown transmission_model '" + mode +
                      "' (expected continue-past-partition or "
                      "arrival-at-partition)");
  }

  if (j.contains("profiles")) {
    if (!j.at("profiles").is_array())
      throw DataError("config: 'profiles' must be an array");
    for (const auto& entry : j.at("profiles")) {
      if (entry.is_string())
        c.profiles.push_back(
            load_profile(resolve(base_dir, entry.get<std::string>())));
      else if (entry.is_object())
        c.profiles.push_back(profile_from_json(entry.dump()));
      else
        throw DataError("config: profile entries must be paths or objects");
    }
  }

  if (j.contains("traces")) {
    const json& t = j.at("traces");
    reject_unknown(t, {"electricity_prices", "bidder_counts", "mean_rates"},
                   "traces");
    if (t.contains("electricity_prices")) {
      c.price_trace_path = t.at("electricity_prices").get<std::string>();
      c.traces.electricity_price =
          load_value_trace(resolve(base_dir, c.price_trace_path));
    }
    if (t.contains("bidder_counts")) {
      c.count_trace_path = t.at("bidder_counts").get<std::string>();
      c.traces.bidder_count =
          load_count_trace(resolve(base_dir, c.count_trace_path));
    }
    if (t.contains("mean_rates")) {
      c.rate_trace_path = t.at("mean_rates").get<std::string>();
      c.traces.mean_rate_bps =
          load_value_trace(resolve(base_dir, c.rate_trace_path));
    }
  }
  return c;
}

MarketConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(),
                          std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const MarketConfig& c, int indent) {
  json j;
  j["slot_duration_h"] = c.slot_duration_h;
  j["slot_count"] = c.slot_count;
  j["edge_capacity_flops"] = c.edge_capacity_flops;
  j["profit_floor"] = c.profit_floor;
  j["server_power_w"] = c.server_power_w;
  j["pue"] = c.pue;
  j["electricity_price_kwh"] = c.electricity_price_kwh;
  j["seed"] = c.seed;
  j["population"] = {{"user_count", c.population.user_count},
                     {"device_flops_min", c.population.device_flops_min},
                     {"device_flops_max", c.population.device_flops_max},
                     {"rate_bps_min", c.population.rate_bps_min},
                     {"rate_bps_max", c.population.rate_bps_max},
                     {"placement_radius_m", c.population.placement_radius_m},
                     {"budget_min", c.population.budget_min},
                     {"budget_max", c.population.budget_max},
                     {"latency_req_min_s", c.population.latency_req_min_s},
                     {"latency_req_max_s", c.population.latency_req_max_s}};
  const char* process = c.bidder_process == BidderProcess::Uniform ? "uniform"
                        : c.bidder_process == BidderProcess::Poisson
                            ? "poisson"
                            : "trace";
  j["bidders"] = {{"process", process},
                  {"min", c.bidders_min},
                  {"max", c.bidders_max},
                  {"mean", c.bidders_mean}};
  j["mechanisms"] = json::array();
  for (Mechanism m : c.mechanisms) j["mechanisms"].push_back(to_string(m));
  j["transmission_model"] =
      c.latency.transmission == TransmissionModel::ContinuePastPartition
          ? "continue-past-partition"
          : "arrival-at-partition";
  if (!c.profiles.empty()) {
    j["profiles"] = json::array();
    for (const auto& p : c.profiles)
      j["profiles"].push_back(json::parse(profile_to_json(p)));
  }
  json traces = json::object();
  if (!c.price_trace_path.empty())
    traces["electricity_prices"] = c.price_trace_path;
  if (!c.count_trace_path.empty()) traces["bidder_counts"] = c.count_trace_path;
  if (!c.rate_trace_path.empty()) traces["mean_rates"] = c.rate_trace_path;
  if (!traces.empty()) j["traces"] = traces;
  return j.dump(indent);
}

void save_config(const MarketConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write config file: " + path);
  out << config_to_json(c) << '\n';
}

}  // namespace aeria
