#include "aeria/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aeria/config.hpp"
#include "aeria/errors.hpp"
#include "json.hpp"

namespace aeria {

namespace {

using nlohmann::json;

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

json metrics_to_json(const SlotMetrics& m) {
  return json{{"slot", m.slot},
              {"mechanism", to_string(m.mechanism)},
              {"active_users", m.active_users},
              {"bidder_count", m.bidder_count},
              {"winner_count", m.winner_count},
              {"electricity_price", m.electricity_price},
              {"rental", m.rental},
              {"reserve", m.reserve},
              {"upper_revenue", m.upper_revenue},
              {"target_revenue", m.target_revenue},
              {"revenue", m.revenue},
              {"price", m.price},
              {"profit_rate", m.profit_rate},
              {"sold_flops", m.sold_flops},
              {"utilization", m.utilization},
              {"competitive_ratio", m.competitive_ratio},
              {"fulfilled_fraction", m.fulfilled_fraction},
              {"trade", m.trade},
              {"path", path_name(m.path)},
              {"no_trade_reason", reason_name(m.reason)},
              {"ok_budget", m.ok_budget},
              {"ok_capacity", m.ok_capacity},
              {"ok_floor", m.ok_floor},
              {"ok_latency", m.ok_latency}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string report_to_json(const RunReport& report, const MarketConfig& config,
                           int indent) {
  json j;
  j["config"] = json::parse(config_to_json(config));
  j["slots"] = json::array();
  for (const auto& m : report.slots) j["slots"].push_back(metrics_to_json(m));
  j["aggregates"] = json::array();
  for (const auto& a : report.aggregates)
    j["aggregates"].push_back({{"mechanism", to_string(a.mechanism)},
                               {"trade_slots", a.trade_slots},
                               {"total_revenue", a.total_revenue},
                               {"mean_revenue", a.mean_revenue},
                               {"mean_profit_rate", a.mean_profit_rate},
                               {"mean_price", a.mean_price},
                               {"mean_utilization", a.mean_utilization},
                               {"mean_fulfilled", a.mean_fulfilled},
                               {"mean_competitive_ratio",
                                a.mean_competitive_ratio}});
  return j.dump(indent);
}

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "slot,mechanism,active_users,bidder_count,winner_count,"
         "electricity_price,rental,reserve,upper_revenue,target_revenue,"
         "revenue,price,profit_rate,sold_flops,utilization,competitive_ratio,"
         "fulfilled_fraction,trade,path,no_trade_reason,ok_budget,ok_capacity,"
         "ok_floor,ok_latency\n";
  for (const auto& m : report.slots) {
    out << m.slot << ',' << to_string(m.mechanism) << ',' << m.active_users
        << ',' << m.bidder_count << ',' << m.winner_count << ','
        << fmt(m.electricity_price) << ',' << fmt(m.rental) << ','
        << fmt(m.reserve) << ',' << fmt(m.upper_revenue) << ','
        << fmt(m.target_revenue) << ',' << fmt(m.revenue) << ','
        << fmt(m.price) << ',' << fmt(m.profit_rate) << ','
        << fmt(m.sold_flops) << ',' << fmt(m.utilization) << ','
        << fmt(m.competitive_ratio) << ',' << fmt(m.fulfilled_fraction) << ','
        << (m.trade ? 1 : 0) << ',' << path_name(m.path) << ','
        << reason_name(m.reason) << ',' << (m.ok_budget ? 1 : 0) << ','
        << (m.ok_capacity ? 1 : 0) << ',' << (m.ok_floor ? 1 : 0) << ','
        << (m.ok_latency ? 1 : 0) << '\n';
  }
  return out.str();
}

void save_report(const RunReport& report, const MarketConfig& config,
                 const std::string& path, const std::string& format) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report file: " + path);
  if (format == "json")
    out << report_to_json(report, config) << '\n';
  else if (format == "csv")
    out << report_to_csv(report);
  else
    throw DataError("unknown report format '" + format +
                    "' (expected json or csv)");
}

}  // namespace aeria
