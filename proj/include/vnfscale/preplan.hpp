#pragma once

#include <string>
#include <vector>

#include "vnfscale/binpack.hpp"
#include "vnfscale/config.hpp"
#include "vnfscale/types.hpp"

namespace vnfs {

// LIFO multiset of server IDs reserved for one VNF type; a server appears
// once per instance slot the pre-planned placement grants it.
struct ServerMultiset {
  std::vector<int> ids;  // back = most recently inserted

  size_t size() const { return ids.size(); }

  // Pop the k most recently inserted IDs (in pop order). Underflow means the
  // demand envelope was breached.
  std::vector<int> eject(int k);
  void insert(int id) { ids.push_back(id); }

  bool operator==(const ServerMultiset&) const = default;
};

// Result of pre-planning one service chain: the largest sustainable ingress
// rate, the placement that witnesses it, and per-type server reservations
// that later scaling draws from (guaranteeing no instance ever migrates).
struct PrePlan {
  int chain_id = 0;
  long long alpha_max = 0;        // largest packable ingress rate
  bool bound_saturated = false;   // search ceiling itself was feasible
  DemandVector max_demand;        // instance counts at alpha_max
  Placement max_placement;        // witness packing of max_demand
  std::vector<ServerMultiset> multisets;  // per type, index = id - 1

  std::string to_json() const;
  static PrePlan from_json(const std::string& text);
};

struct PreplanOptions {
  long long rate_step = 1;       // alpha_max granularity (Mbps)
  long long max_rate_bound = 0;  // search ceiling; 0 = derive from cluster
  PackOptions pack;
};

// Binary search for the largest ingress rate whose induced demand still packs
// into the cluster, then freeze the witness placement and carve per-type
// server reservations out of it.
PrePlan preplan(const ServiceChain& chain, const std::vector<VnfType>& types,
                const Cluster& cluster, const PreplanOptions& opts = {});

PrePlan preplan(const Config& cfg, int chain_id,
                const PreplanOptions& opts = {});

} // namespace vnfs
