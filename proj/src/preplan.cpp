#include "vnfscale/preplan.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"

namespace vnfs {

using json = nlohmann::json;

std::vector<int> ServerMultiset::eject(int k) {
  if (k < 0 || static_cast<size_t>(k) > ids.size())
    fail(ErrorCode::envelope,
         "server reservation exhausted: need " + std::to_string(k) +
             ", have " + std::to_string(ids.size()));
  std::vector<int> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    out.push_back(ids.back());
    ids.pop_back();
  }
  return out;
}

namespace {

// Instances of one type that fit on a single empty server.
long long solo_fit(const VnfType& t, const Cluster& cluster) {
  long long k = -1;
  for (size_t r = 0; r < cluster.capacity.size(); ++r) {
    if (t.demand[r] <= 0.0) continue;
    double tol = 1e-9 * std::max(1.0, cluster.capacity[r]);
    long long kr = static_cast<long long>(
        std::floor((cluster.capacity[r] + tol) / t.demand[r]));
    k = (k < 0) ? kr : std::min(k, kr);
  }
  return std::max<long long>(k, 0);
}

// A rate strictly above this is provably unpackable: some stage alone would
// need more instances than the whole cluster can hold.
long long rate_ceiling(const ServiceChain& chain,
                       const std::vector<VnfType>& types,
                       const Cluster& cluster) {
  const std::vector<double> cum = cumulative_gains(chain);
  double best = -1.0;
  for (size_t k = 0; k < chain.stages.size(); ++k) {
    const VnfType& t = types[chain.stages[k] - 1];
    double cap = static_cast<double>(cluster.num_servers) *
                 static_cast<double>(solo_fit(t, cluster)) *
                 t.capacity_mbps / cum[k];
    best = (best < 0.0) ? cap : std::min(best, cap);
  }
  return best < 0.0 ? 0 : static_cast<long long>(std::ceil(best));
}

} // namespace

PrePlan preplan(const ServiceChain& chain, const std::vector<VnfType>& types,
                const Cluster& cluster, const PreplanOptions& opts) {
  if (opts.rate_step < 1)
    fail(ErrorCode::invalid_argument, "preplan: rate_step must be >= 1");
  std::vector<ServiceChain> chains{chain};
  if (chains[0].cum_gains.size() != chains[0].stages.size())
    chains[0].cum_gains = cumulative_gains(chains[0]);

  auto try_pack = [&](long long rate) {
    double r = static_cast<double>(rate);
    return pack(demand(chains, types, std::span<const double>(&r, 1)), types,
                cluster, opts.pack);
  };

  long long step = opts.rate_step;
  long long bound = opts.max_rate_bound > 0
                        ? opts.max_rate_bound
                        : rate_ceiling(chain, types, cluster) + step;
  long long hi = std::max<long long>(bound / step, 1);  // in step units
  long long lo = 0;                                     // rate 0 always packs

  PrePlan plan;
  plan.chain_id = chain.id;
  std::optional<Packing> packed;
  if (auto p = try_pack(hi * step)) {
    plan.bound_saturated = true;
    lo = hi;
    packed = std::move(p);
  } else {
    while (hi - lo > 1) {
      long long mid = lo + (hi - lo) / 2;
      if (auto p = try_pack(mid * step)) {
        lo = mid;
        packed = std::move(p);
      } else {
        hi = mid;
      }
    }
    if (!packed) packed = try_pack(lo * step);  // lo == 0 path
  }

  plan.alpha_max = lo * step;
  double r = static_cast<double>(plan.alpha_max);
  plan.max_demand = demand(chains, types, std::span<const double>(&r, 1));
  plan.max_placement = to_placement(*packed, cluster.num_servers,
                                    static_cast<int>(types.size()));
  plan.multisets.resize(types.size());
  for (int u = 0; u < plan.max_placement.servers; ++u)
    for (int i = 0; i < plan.max_placement.types; ++i)
      for (int c = 0; c < plan.max_placement.at(u, i); ++c)
        plan.multisets[i].insert(u);
  return plan;
}

PrePlan preplan(const Config& cfg, int chain_id, const PreplanOptions& opts) {
  if (chain_id < 1 || chain_id > cfg.num_chains())
    fail(ErrorCode::invalid_argument,
         "preplan: unknown chain id " + std::to_string(chain_id));
  return preplan(cfg.chains[chain_id - 1], cfg.types, cfg.cluster, opts);
}

std::string PrePlan::to_json() const {
  json root;
  root["chain_id"] = chain_id;
  root["alpha_max"] = alpha_max;
  root["bound_saturated"] = bound_saturated;
  root["max_demand"] = max_demand.counts;
  root["max_placement"] = {{"servers", max_placement.servers},
                           {"types", max_placement.types},
                           {"x", max_placement.x}};
  json ms = json::array();
  for (const ServerMultiset& m : multisets) ms.push_back(m.ids);
  root["multisets"] = ms;
  return root.dump(2);
}

PrePlan PrePlan::from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("preplan: invalid JSON: ") + e.what());
  }
  PrePlan plan;
  try {
    plan.chain_id = root.at("chain_id").get<int>();
    plan.alpha_max = root.at("alpha_max").get<long long>();
    plan.bound_saturated = root.at("bound_saturated").get<bool>();
    plan.max_demand.counts =
        root.at("max_demand").get<std::vector<long long>>();
    const json& mp = root.at("max_placement");
    plan.max_placement.servers = mp.at("servers").get<int>();
    plan.max_placement.types = mp.at("types").get<int>();
    plan.max_placement.x = mp.at("x").get<std::vector<int>>();
    for (const json& m : root.at("multisets")) {
      ServerMultiset ms;
      ms.ids = m.get<std::vector<int>>();
      plan.multisets.push_back(std::move(ms));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("preplan: malformed fields: ") + e.what());
  }
  size_t cells = static_cast<size_t>(plan.max_placement.servers) *
                 static_cast<size_t>(plan.max_placement.types);
  if (plan.max_placement.x.size() != cells ||
      plan.max_demand.counts.size() != plan.multisets.size() ||
      static_cast<int>(plan.multisets.size()) != plan.max_placement.types)
    fail(ErrorCode::io, "preplan: inconsistent dimensions in JSON");
  return plan;
}

} // namespace vnfs
