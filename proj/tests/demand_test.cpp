#include <cmath>
#include <limits>

#include "doctest.h"

#include "aeria/demand.hpp"
#include "aeria/rng.hpp"
#include "test_util.hpp"

using namespace aeria;
using testutil::toy_profile;

namespace {

struct EnumResult {
  DemandKind kind = DemandKind::Infeasible;
  int s = -1;
  double req = 0.0;
};

// Independent exhaustive scan over every split, duplicating the published
// selection rule: strictly positive residual time, requirement strictly under
// capacity, minimal requirement, ties to the deepest split.
EnumResult enumerate_splits(const Bid& bid, const MeDnnProfile& p,
                            const DeviceLink& link, double capacity,
                            const LatencyOptions& opts = {}) {
  EnumResult best;
  bool found = false;
  double best_req = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= p.depth(); ++s) {
    // same association as the library (t - dev - net): exact comparisons
    // below require the identical floating-point expression
    const double residual =
        bid.latency_req_s -
        device_latency(p, bid.sigma, s, link.device_flops) -
        network_latency(p, bid.sigma, s, link, opts.transmission);
    if (!(residual > 0)) continue;
    const double work = edge_flop(p, bid.sigma, s);
    const double req = work > 0 ? work / residual : 0.0;
    if (work > 0 && !(req < capacity)) continue;
    if (!found || req <= best_req) {
      best_req = req;
      best.s = s;
      found = true;
    }
  }
  if (!found) return best;
  best.req = best_req;
  best.kind = best_req == 0.0 ? DemandKind::LocalOnly : DemandKind::EdgeRequest;
  return best;
}

}  // namespace

TEST_SUITE("demand") {

TEST_CASE("toy frozen demand") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{10e6, 4e6, 0.01};
  const Bid bid{7, 0.02, 2.0, 0.5};
  const DemandOutcome d = analyze_demand(bid, p, link, 1e9);

  CHECK(d.kind == DemandKind::EdgeRequest);
  CHECK(d.user_id == 7);
  CHECK(d.partition == 1);
  // residual 2 - 1.08 - 0.606 = 0.314 s over 30.6 MFLOP of edge work
  CHECK(d.edge_flops_req == doctest::Approx(97452229.299363).epsilon(1e-9));
  CHECK(d.density == doctest::Approx(0.02 / 97452229.299363).epsilon(1e-9));
  CHECK(d.budget == 0.02);
  CHECK(d.latency_req_s == 2.0);
  CHECK(d.sigma == 0.5);

  // the deadline binds exactly at the returned requirement
  CHECK(total_latency(p, 0.5, d.partition, link, d.edge_flops_req) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("zero residual time is not enough") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{10e6, 4e6, 0.01};
  // the deadline equals the split-1 device plus uplink time exactly; every
  // other split already overruns, so the whole bid is infeasible
  const double fixed = device_latency(p, 0.5, 1, link.device_flops) +
                       network_latency(p, 0.5, 1, link);
  const DemandOutcome d = analyze_demand({1, 1.0, fixed, 0.5}, p, link, 1e9);
  CHECK(d.kind == DemandKind::Infeasible);
}

TEST_CASE("requirement equal to capacity is rejected") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{10e6, 4e6, 0.01};
  const Bid bid{1, 1.0, 2.0, 0.5};
  const DemandOutcome wide = analyze_demand(bid, p, link, 1e9);
  REQUIRE(wide.kind == DemandKind::EdgeRequest);
  const DemandOutcome tight =
      analyze_demand(bid, p, link, wide.edge_flops_req);
  CHECK(tight.kind == DemandKind::Infeasible);
}

TEST_CASE("fast devices stay local") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{1e9, 4e6, 0.01};  // runs all 41.4 MFLOP in 41 ms
  const DemandOutcome d = analyze_demand({1, 1.0, 2.0, 0.5}, p, link, 1e9);
  CHECK(d.kind == DemandKind::LocalOnly);
  CHECK(d.partition == p.depth());
  CHECK(d.edge_flops_req == 0.0);
}

TEST_CASE("impossible deadlines are infeasible") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{10e6, 4e6, 0.01};
  const DemandOutcome d = analyze_demand({1, 1.0, 1e-6, 0.5}, p, link, 1e9);
  CHECK(d.kind == DemandKind::Infeasible);
}

TEST_CASE("matches exhaustive enumeration on random users") {
  auto profiles = default_catalog();
  profiles.push_back(toy_profile());
  Rng rng = named_stream(99, "test/demand-enum");
  const double capacity = 1740e9;

  int edge = 0, local = 0, infeasible = 0;
  for (int i = 0; i < 300; ++i) {
    const MeDnnProfile& p = profiles[rng.below(profiles.size())];
    DeviceLink link;
    link.device_flops = rng.uniform(0.5e9, 5e9);
    link.rate_bps = rng.uniform(20e6, 30e6);
    link.prop_delay_s = rng.uniform(0.0, 1.7e-6);
    Bid bid;
    bid.user_id = static_cast<std::uint64_t>(i);
    bid.budget = rng.uniform(1e-3, 5e-2);
    bid.latency_req_s = rng.uniform(0.01, 1.0);
    bid.sigma = p.exit_probs[rng.below(p.exit_probs.size())].sigma;

    const DemandOutcome d = analyze_demand(bid, p, link, capacity);
    const EnumResult o = enumerate_splits(bid, p, link, capacity);
    REQUIRE(d.kind == o.kind);
    if (o.kind != DemandKind::Infeasible) {
      CHECK(d.partition == o.s);
      CHECK(d.edge_flops_req == o.req);  // same arithmetic, exact match
    }
    if (d.kind == DemandKind::EdgeRequest) {
      ++edge;
      CHECK(d.edge_flops_req < capacity);
      CHECK(d.edge_flops_req > 0.0);
      CHECK(total_latency(p, bid.sigma, d.partition, link, d.edge_flops_req) ==
            doctest::Approx(bid.latency_req_s).epsilon(1e-9));
    } else if (d.kind == DemandKind::LocalOnly) {
      ++local;
    } else {
      ++infeasible;
    }
  }
  // the generator should exercise all three outcomes
  CHECK(edge > 0);
  CHECK(local > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("transmission model changes the split economics") {
  const MeDnnProfile p = toy_profile();
  const DeviceLink link{10e6, 4e6, 0.01};
  const Bid bid{1, 1.0, 3.0, 0.5};
  LatencyOptions strict;
  strict.transmission = TransmissionModel::ArrivalAtPartition;
  const DemandOutcome relaxed = analyze_demand(bid, p, link, 1e9);
  const DemandOutcome charged = analyze_demand(bid, p, link, 1e9, strict);
  REQUIRE(relaxed.kind == DemandKind::EdgeRequest);
  REQUIRE(charged.kind == DemandKind::EdgeRequest);
  // both settle on the split after the first exit...
  CHECK(relaxed.partition == 1);
  CHECK(charged.partition == 1);
  // ...but arrival weighting leaves less residual time, demanding more speed
  CHECK(charged.edge_flops_req > relaxed.edge_flops_req);

  // a deadline inside the charged fixed time flips the outcome entirely
  const Bid tight{1, 1.0, 2.0, 0.5};
  CHECK(analyze_demand(tight, p, link, 1e9).kind == DemandKind::EdgeRequest);
  CHECK(analyze_demand(tight, p, link, 1e9, strict).kind ==
        DemandKind::Infeasible);
}

}  // TEST_SUITE
