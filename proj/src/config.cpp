#include "vnfscale/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"

namespace vnfs {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
  fail(ErrorCode::config, "config: " + what);
}

double positive(const json& j, const std::string& ctx) {
  if (!j.is_number()) bad(ctx + " must be a number");
  double v = j.get<double>();
  if (!(v > 0.0)) bad(ctx + " must be positive");
  return v;
}

double non_negative(const json& j, const std::string& ctx) {
  if (!j.is_number()) bad(ctx + " must be a number");
  double v = j.get<double>();
  if (v < 0.0) bad(ctx + " must be non-negative");
  return v;
}

void validate(Config& cfg) {
  if (cfg.types.empty()) bad("at least one VNF type required");
  int R = cfg.num_resources();
  if (R == 0) bad("cluster.capacity must name at least one resource");
  if (cfg.cluster.num_servers < 0) bad("cluster.num_servers must be >= 0");
  for (double c : cfg.cluster.capacity)
    if (!(c > 0.0)) bad("cluster.capacity entries must be positive");

  for (size_t i = 0; i < cfg.types.size(); ++i) {
    VnfType& t = cfg.types[i];
    if (t.id != static_cast<int>(i) + 1)
      bad("vnf_types ids must be dense 1..N in order (got id " +
          std::to_string(t.id) + " at position " + std::to_string(i) + ")");
    if (static_cast<int>(t.demand.size()) != R)
      bad("type " + std::to_string(t.id) +
          ": demand dimension differs from cluster.capacity");
    bool any = false;
    for (int r = 0; r < R; ++r) {
      if (t.demand[r] < 0.0)
        bad("type " + std::to_string(t.id) + ": negative demand component");
      if (t.demand[r] > 0.0) any = true;
      if (t.demand[r] > cfg.cluster.capacity[r])
        bad("type " + std::to_string(t.id) +
            ": a single instance does not fit on an empty server");
    }
    if (!any) bad("type " + std::to_string(t.id) + ": all-zero demand");
  }

  for (size_t s = 0; s < cfg.chains.size(); ++s) {
    ServiceChain& ch = cfg.chains[s];
    if (ch.id != static_cast<int>(s) + 1)
      bad("chain ids must be dense 1..S in order");
    if (ch.stages.empty()) bad("chain " + std::to_string(ch.id) + ": empty");
    if (ch.gains.size() != ch.stages.size())
      bad("chain " + std::to_string(ch.id) + ": gains/stages length mismatch");
    std::vector<bool> seen(cfg.types.size(), false);
    for (int tid : ch.stages) {
      if (tid < 1 || tid > cfg.num_types())
        bad("chain " + std::to_string(ch.id) + ": unknown type id " +
            std::to_string(tid));
      if (seen[tid - 1])
        bad("chain " + std::to_string(ch.id) + ": type " +
            std::to_string(tid) + " appears twice");
      seen[tid - 1] = true;
    }
    for (double g : ch.gains)
      if (!(g > 0.0))
        bad("chain " + std::to_string(ch.id) + ": gains must be positive");
    ch.cum_gains = cumulative_gains(ch);
  }
}

} // namespace

Config parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("top level must be an object");
  if (!root.contains("vnf_types") || !root["vnf_types"].is_array())
    bad("missing vnf_types array");
  if (!root.contains("cluster") || !root["cluster"].is_object())
    bad("missing cluster object");

  Config cfg;
  for (const json& jt : root["vnf_types"]) {
    VnfType t;
    if (!jt.contains("id") || !jt["id"].is_number_integer())
      bad("vnf_types entries need an integer id");
    t.id = jt["id"].get<int>();
    t.name = jt.value("name", "type" + std::to_string(t.id));
    if (!jt.contains("demand") || !jt["demand"].is_array())
      bad("type " + std::to_string(t.id) + ": missing demand array");
    for (const json& d : jt["demand"])
      t.demand.push_back(
          non_negative(d, "type " + std::to_string(t.id) + " demand"));
    t.capacity_mbps = positive(jt.at("capacity_mbps"),
                               "type " + std::to_string(t.id) +
                                   " capacity_mbps");
    t.op_cost =
        positive(jt.at("op_cost"), "type " + std::to_string(t.id) + " op_cost");
    t.deploy_cost = non_negative(
        jt.at("deploy_cost"), "type " + std::to_string(t.id) + " deploy_cost");
    cfg.types.push_back(std::move(t));
  }

  if (root.contains("chains")) {
    if (!root["chains"].is_array()) bad("chains must be an array");
    for (const json& jc : root["chains"]) {
      ServiceChain ch;
      if (!jc.contains("id") || !jc["id"].is_number_integer())
        bad("chains entries need an integer id");
      ch.id = jc["id"].get<int>();
      if (!jc.contains("stages") || !jc["stages"].is_array())
        bad("chain " + std::to_string(ch.id) + ": missing stages");
      for (const json& s : jc["stages"]) {
        if (!s.is_number_integer())
          bad("chain " + std::to_string(ch.id) + ": stages must be ids");
        ch.stages.push_back(s.get<int>());
      }
      if (!jc.contains("gains") || !jc["gains"].is_array())
        bad("chain " + std::to_string(ch.id) + ": missing gains");
      for (const json& g : jc["gains"])
        ch.gains.push_back(
            positive(g, "chain " + std::to_string(ch.id) + " gain"));
      cfg.chains.push_back(std::move(ch));
    }
  }

  const json& jcl = root["cluster"];
  if (!jcl.contains("num_servers") || !jcl["num_servers"].is_number_integer())
    bad("cluster.num_servers must be an integer");
  cfg.cluster.num_servers = jcl["num_servers"].get<int>();
  if (!jcl.contains("capacity") || !jcl["capacity"].is_array())
    bad("cluster.capacity must be an array");
  for (const json& c : jcl["capacity"])
    cfg.cluster.capacity.push_back(positive(c, "cluster.capacity"));

  validate(cfg);
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const Config& cfg) {
  json root;
  root["vnf_types"] = json::array();
  for (const VnfType& t : cfg.types) {
    root["vnf_types"].push_back({{"id", t.id},
                                 {"name", t.name},
                                 {"demand", t.demand},
                                 {"capacity_mbps", t.capacity_mbps},
                                 {"op_cost", t.op_cost},
                                 {"deploy_cost", t.deploy_cost}});
  }
  root["chains"] = json::array();
  for (const ServiceChain& ch : cfg.chains) {
    root["chains"].push_back(
        {{"id", ch.id}, {"stages", ch.stages}, {"gains", ch.gains}});
  }
  root["cluster"] = {{"num_servers", cfg.cluster.num_servers},
                     {"capacity", cfg.cluster.capacity}};
  return root.dump(2);
}

} // namespace vnfs
