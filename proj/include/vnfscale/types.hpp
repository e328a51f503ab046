#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vnfs {

// A VNF type: per-instance resource footprint, processing capacity, and the
// two cost coefficients (per-slot operating cost, one-off deployment cost).
struct VnfType {
  int id = 0;                  // 1-based, dense: types are indexed id-1
  std::string name;
  std::vector<double> demand;  // resource units consumed per instance
  double capacity_mbps = 0.0;  // traffic one instance can process per slot
  double op_cost = 0.0;        // cost per instance per slot (running or idle)
  double deploy_cost = 0.0;    // cost per new instance launch

  // Break-even horizon of the rent-or-buy tradeoff, in slots.
  int break_even() const;
};

// An ordered service chain: traffic enters stage 0 and traverses every stage;
// each stage scales the flow by its gain factor (<1 compresses, >1 inflates).
struct ServiceChain {
  int id = 0;                    // 1-based
  std::vector<int> stages;       // VNF type ids, no repeats within a chain
  std::vector<double> gains;     // per-stage flow scaling, same length
  std::vector<double> cum_gains; // prefix products, cum_gains[0] == 1
};

// Homogeneous server pool.
struct Cluster {
  int num_servers = 0;
  std::vector<double> capacity;  // per-resource capacity of one server
};

// Required instance counts per VNF type for one slot.
struct DemandVector {
  std::vector<long long> counts;  // indexed by type id - 1

  bool operator==(const DemandVector&) const = default;
};

// Dense placement matrix: instance count per (server, type).
struct Placement {
  int servers = 0;
  int types = 0;
  std::vector<int> x;  // row-major, servers x types

  Placement() = default;
  Placement(int num_servers, int num_types)
      : servers(num_servers), types(num_types),
        x(static_cast<size_t>(num_servers) * num_types, 0) {}

  int& at(int server, int type) {
    return x[static_cast<size_t>(server) * types + type];
  }
  int at(int server, int type) const {
    return x[static_cast<size_t>(server) * types + type];
  }

  // Total instances per type across all servers.
  std::vector<long long> column_sums() const;

  bool operator==(const Placement&) const = default;
};

// Cost of one slot, split by origin.
struct SlotCost {
  double operational = 0.0;
  double deployment = 0.0;

  double total() const { return operational + deployment; }
};

// Accumulated run cost with per-slot breakdown.
struct CostReport {
  std::vector<SlotCost> per_slot;
  SlotCost totals;

  void add(const SlotCost& c) {
    per_slot.push_back(c);
    totals.operational += c.operational;
    totals.deployment += c.deployment;
  }
};

// Time series of ingress rates, one row per service chain.
struct TraceSeries {
  int num_chains = 0;
  int horizon = 0;                // number of slots, t = 1..horizon
  std::vector<double> rates;      // row-major, num_chains x horizon

  TraceSeries() = default;
  TraceSeries(int chains, int slots)
      : num_chains(chains), horizon(slots),
        rates(static_cast<size_t>(chains) * slots, 0.0) {}

  double& at(int chain, int slot) {  // both 0-based
    return rates[static_cast<size_t>(chain) * horizon + slot];
  }
  double at(int chain, int slot) const {
    return rates[static_cast<size_t>(chain) * horizon + slot];
  }

  // Ingress rates of all chains at one 0-based slot.
  std::vector<double> slot_rates(int slot) const;

  double peak() const;  // max over all entries
  double mean() const;  // mean over all entries

  bool operator==(const TraceSeries&) const = default;
};

} // namespace vnfs
