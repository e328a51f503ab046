#pragma once

#include <span>
#include <vector>

#include "vnfscale/types.hpp"

namespace vnfs {

// Ceiling with an integrality tolerance: values a hair above an integer due
// to binary rounding (e.g. 0.9 * 886000 = 797400.0000000002) are treated as
// that integer before rounding up. Negative inputs clamp to zero.
long long ceil_tol(double v);

// Prefix products of the chain's gains: entry k is the factor by which the
// ingress rate must be multiplied to obtain the flow entering stage k.
// Entry 0 is exactly 1 (ingress is unscaled).
std::vector<double> cumulative_gains(const ServiceChain& chain);

// Required instance counts per type for one slot: flows are propagated down
// every chain with its cumulative gains, pooled per type across chains, and
// divided by per-instance capacity. `rates` carries one ingress rate per
// chain, aligned with `chains`.
DemandVector demand(const std::vector<ServiceChain>& chains,
                    const std::vector<VnfType>& types,
                    std::span<const double> rates);

// Cost of holding placement `x` for one slot after `x_prev`: every instance
// present pays its type's op_cost; every per-server increase over x_prev pays
// deploy_cost. Removals are free.
SlotCost slot_cost(const Placement& x, const Placement& x_prev,
                   const std::vector<VnfType>& types);

// True when every server's aggregate resource footprint fits its capacity.
bool check_capacity(const Placement& x, const std::vector<VnfType>& types,
                    const Cluster& cluster);

// True when the placement provides at least `need` instances of every type.
bool check_coverage(const Placement& x, const DemandVector& need);

} // namespace vnfs
