#pragma once

#include <span>
#include <vector>

#include "vnfscale/config.hpp"
#include "vnfscale/types.hpp"

namespace vnfs {

// Optimal hindsight schedule for one VNF type in isolation (placement
// ignored): instance-count per slot plus its total cost.
struct TypeSchedule {
  std::vector<long long> x;
  double cost = 0.0;
};

// Exact minimizer of op + deployment cost subject to x(t) >= n(t), computed
// by decomposing the count series into unit levels; each level keeps an
// instance alive across a gap of g empty slots iff g * op_cost <= deploy_cost
// (ties keep it alive).
TypeSchedule offline_type_schedule(std::span<const long long> n,
                                   double op_cost, double deploy_cost);

// Sum of per-type optima over a demand series: a valid lower bound on any
// placement-feasible schedule (it relaxes server capacity entirely).
double offline_lower_bound(const Config& cfg,
                           const std::vector<DemandVector>& series);

struct ExhaustiveLimits {
  int max_servers = 3;
  int max_slots = 6;
  long long max_total_instances = 6;  // sum over types of peak demand
};

// Exact offline optimum including placement, by shortest path over canonical
// placements per slot (rows sorted; transition cost minimized over server
// permutations). Only for toy instances; beyond `limits` raises scale_guard.
// When `trajectory` is non-null it receives one optimizing placement per
// slot, with rows pinned to physical servers so that per-server launch
// accounting over the sequence reproduces the returned total exactly.
double exhaustive_offline(const Config& cfg,
                          const std::vector<DemandVector>& series,
                          const ExhaustiveLimits& limits = {},
                          std::vector<Placement>* trajectory = nullptr);

// Proportional flow split of every chain through a placement: each stage's
// aggregate flow is divided among that type's instances evenly (instances of
// one type are interchangeable), so a server's share is proportional to its
// instance count. Feasible iff every stage with positive flow is covered and
// no instance exceeds its processing capacity.
struct StageFlow {
  int chain_id = 0;
  int stage = 0;                   // position within the chain
  int type_idx = 0;                // type id - 1
  double total = 0.0;              // aggregate flow entering this stage
  std::vector<double> per_server;  // share handled on each server
  double residual = 0.0;           // |sum(per_server) - total| / max(1,total)
  double per_instance = 0.0;       // load carried by each instance
};

struct RoutingReport {
  bool feasible = true;
  double max_residual = 0.0;     // worst conservation error across stages
  double max_utilization = 0.0;  // worst per_instance / capacity ratio
  std::vector<StageFlow> stages;
};

RoutingReport proportional_routing(const Config& cfg, const Placement& x,
                                   std::span<const double> rates);

} // namespace vnfs
