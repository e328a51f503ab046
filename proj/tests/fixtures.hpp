#pragma once

// Shared test fixtures: small helpers that build the configurations most
// tests revolve around.

#include <string>

#include "vnfscale/config.hpp"

namespace fixtures {

// Three-type chain (firewall -> ids -> load balancer) on 16-core servers.
inline vnfs::Config single_chain(int servers = 1000,
                                 double deploy_ratio = 4.0) {
  std::string j = R"({
    "vnf_types": [
      {"id": 1, "name": "firewall", "demand": [4], "capacity_mbps": 900,
       "op_cost": 4, "deploy_cost": )" + std::to_string(4 * deploy_ratio) + R"(},
      {"id": 2, "name": "ids", "demand": [8], "capacity_mbps": 600,
       "op_cost": 8, "deploy_cost": )" + std::to_string(8 * deploy_ratio) + R"(},
      {"id": 3, "name": "load_balancer", "demand": [2], "capacity_mbps": 900,
       "op_cost": 2, "deploy_cost": )" + std::to_string(2 * deploy_ratio) + R"(}
    ],
    "chains": [{"id": 1, "stages": [1, 2, 3], "gains": [0.9, 0.8, 1.0]}],
    "cluster": {"num_servers": )" + std::to_string(servers) + R"(, "capacity": [16]}
  })";
  return vnfs::parse_config(j);
}

// Three chains sharing firewall/ids plus nat and load balancer stages.
inline vnfs::Config three_chains(int servers = 1000,
                                 double deploy_ratio = 4.0) {
  auto t = [&](int id, const std::string& name, int cores, int cap, int op) {
    return std::string(R"({"id": )") + std::to_string(id) + R"(, "name": ")" +
           name + R"(", "demand": [)" + std::to_string(cores) +
           R"(], "capacity_mbps": )" + std::to_string(cap) +
           R"(, "op_cost": )" + std::to_string(op) + R"(, "deploy_cost": )" +
           std::to_string(op * deploy_ratio) + "}";
  };
  std::string j = R"({"vnf_types": [)" + t(1, "firewall", 4, 900, 4) + "," +
                  t(2, "nat", 2, 900, 2) + "," + t(3, "ids", 8, 600, 8) + "," +
                  t(4, "load_balancer", 2, 900, 2) + R"(],
    "chains": [
      {"id": 1, "stages": [1, 2], "gains": [0.9, 1.0]},
      {"id": 2, "stages": [1, 3], "gains": [0.9, 0.8]},
      {"id": 3, "stages": [1, 3, 4], "gains": [0.9, 0.8, 1.0]}
    ],
    "cluster": {"num_servers": )" + std::to_string(servers) +
                  R"(, "capacity": [16]}})";
  return vnfs::parse_config(j);
}

// One type, one instance per server, unit capacity: ingress rate == demanded
// instance count, which makes rent-or-buy behaviour easy to stage.
inline vnfs::Config mono(int servers, double op_cost = 1.0,
                         double deploy_cost = 4.0) {
  std::string j = R"({
    "vnf_types": [{"id": 1, "name": "only", "demand": [1],
      "capacity_mbps": 1, "op_cost": )" + std::to_string(op_cost) +
                  R"(, "deploy_cost": )" + std::to_string(deploy_cost) + R"(}],
    "chains": [{"id": 1, "stages": [1], "gains": [1.0]}],
    "cluster": {"num_servers": )" + std::to_string(servers) +
                  R"(, "capacity": [1]}})";
  return vnfs::parse_config(j);
}

} // namespace fixtures
