#pragma once

#include "aeria/profile.hpp"

namespace aeria {

// Wireless device and its uplink.
struct DeviceLink {
  double device_flops = 0.0;  // on-device compute speed
  double rate_bps = 0.0;      // uplink data rate
  double prop_delay_s = 0.0;  // one-way propagation delay
};

// Weight applied to the transmission term. ContinuePastPartition weights by
// the probability the input survives every exit at or before the split and so
// actually needs the uplink; ArrivalAtPartition weights by the probability the
// input merely reaches the split layer, charging transmission even when the
// input exits right at the split.
enum class TransmissionModel { ContinuePastPartition, ArrivalAtPartition };

struct LatencyOptions {
  TransmissionModel transmission = TransmissionModel::ContinuePastPartition;
};

// Expected on-device time for split s. s in 0..depth.
double device_latency(const MeDnnProfile& profile, double sigma, int s,
                      double device_flops);

// Expected uplink time for split s. Zero when s = depth (nothing leaves the
// device).
double network_latency(const MeDnnProfile& profile, double sigma, int s,
                       const DeviceLink& link,
                       TransmissionModel model =
                           TransmissionModel::ContinuePastPartition);

// Expected edge time for split s at allocation edge_flops. Zero when no edge
// work remains; throws std::invalid_argument when work remains but the
// allocation is not positive.
double edge_latency(const MeDnnProfile& profile, double sigma, int s,
                    double edge_flops_alloc);

double total_latency(const MeDnnProfile& profile, double sigma, int s,
                     const DeviceLink& link, double edge_flops_alloc,
                     const LatencyOptions& opts = {});

}  // namespace aeria
