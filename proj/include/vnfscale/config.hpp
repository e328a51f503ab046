#pragma once

#include <string>
#include <vector>

#include "vnfscale/types.hpp"

namespace vnfs {

// Full problem instance: VNF catalogue, service chains, server pool.
struct Config {
  std::vector<VnfType> types;     // index = id - 1
  std::vector<ServiceChain> chains;
  Cluster cluster;

  int num_types() const { return static_cast<int>(types.size()); }
  int num_chains() const { return static_cast<int>(chains.size()); }
  int num_resources() const {
    return static_cast<int>(cluster.capacity.size());
  }
};

// Parse and validate a configuration from JSON text / a JSON file.
// Validation enforces: dense 1-based ids, consistent resource dimensions,
// positive capacities and op costs, non-negative deploy costs, chains that
// reference known types without repeats, positive gains, and every type
// fitting on an empty server. Violations raise ErrorCode::config.
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

// Serialize back to JSON (round-trips through parse_config).
std::string config_to_json(const Config& cfg);

} // namespace vnfs
