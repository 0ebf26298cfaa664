#include "aeria/latency.hpp"

#include <stdexcept>

namespace aeria {

double device_latency(const MeDnnProfile& profile, double sigma, int s,
                      double device_flops) {
  if (!(device_flops > 0))
    throw std::invalid_argument("device_latency: device speed must be positive");
  return device_flop(profile, sigma, s) / device_flops;
}

double network_latency(const MeDnnProfile& profile, double sigma, int s,
                       const DeviceLink& link, TransmissionModel model) {
  if (s == profile.depth()) return 0.0;  // fully local, nothing to send
  if (!(link.rate_bps > 0))
    throw std::invalid_argument("network_latency: data rate must be positive");
  const double weight =
      model == TransmissionModel::ContinuePastPartition
          ? survival_prob(profile, sigma, s)
          : (s == 0 ? 1.0 : forward_prob(profile, sigma, s));
  return weight *
         (link.prop_delay_s + output_size_bits(profile, s) / link.rate_bps);
}

double edge_latency(const MeDnnProfile& profile, double sigma, int s,
                    double edge_flops_alloc) {
  const double work = edge_flop(profile, sigma, s);
  if (work == 0.0) return 0.0;
  if (!(edge_flops_alloc > 0))
    throw std::invalid_argument(
        "edge_latency: edge work remains but the allocation is not positive");
  return work / edge_flops_alloc;
}

double total_latency(const MeDnnProfile& profile, double sigma, int s,
                     const DeviceLink& link, double edge_flops_alloc,
                     const LatencyOptions& opts) {
  return device_latency(profile, sigma, s, link.device_flops) +
         network_latency(profile, sigma, s, link, opts.transmission) +
         edge_latency(profile, sigma, s, edge_flops_alloc);
}

}  // namespace aeria
