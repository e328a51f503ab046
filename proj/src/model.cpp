#include "vnfscale/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vnfscale/errors.hpp"

namespace vnfs {

int VnfType::break_even() const {
  if (op_cost <= 0.0)
    fail(ErrorCode::invalid_argument, "break_even: op_cost must be positive");
  long long d = static_cast<long long>(std::floor(deploy_cost / op_cost));
  return static_cast<int>(std::max<long long>(1, d));
}

std::vector<long long> Placement::column_sums() const {
  std::vector<long long> sums(types, 0);
  const int* row = x.data();
  for (int u = 0; u < servers; ++u, row += types)
    for (int i = 0; i < types; ++i) sums[i] += row[i];
  return sums;
}

std::vector<double> TraceSeries::slot_rates(int slot) const {
  std::vector<double> out(num_chains);
  for (int s = 0; s < num_chains; ++s) out[s] = at(s, slot);
  return out;
}

double TraceSeries::peak() const {
  return rates.empty() ? 0.0 : *std::max_element(rates.begin(), rates.end());
}

double TraceSeries::mean() const {
  if (rates.empty()) return 0.0;
  double acc = 0.0;
  for (double v : rates) acc += v;
  return acc / static_cast<double>(rates.size());
}

long long ceil_tol(double v) {
  if (v <= 0.0) return 0;
  double tol = 1e-9 * std::max(1.0, std::abs(v));
  double c = std::ceil(v - tol);
  return c <= 0.0 ? 0 : static_cast<long long>(c);
}

std::vector<double> cumulative_gains(const ServiceChain& chain) {
  if (chain.stages.empty())
    fail(ErrorCode::config, "chain " + std::to_string(chain.id) +
                                ": empty stage list");
  if (chain.gains.size() != chain.stages.size())
    fail(ErrorCode::config, "chain " + std::to_string(chain.id) +
                                ": gains/stages length mismatch");
  std::vector<double> cum(chain.stages.size());
  cum[0] = 1.0;  // ingress reaches stage 0 unscaled
  for (size_t k = 1; k < cum.size(); ++k)
    cum[k] = cum[k - 1] * chain.gains[k - 1];
  return cum;
}

DemandVector demand(const std::vector<ServiceChain>& chains,
                    const std::vector<VnfType>& types,
                    std::span<const double> rates) {
  if (rates.size() != chains.size())
    fail(ErrorCode::invalid_argument,
         "demand: one ingress rate per chain required");
  // Pool per-type traffic across all chains, then size each pool.
  std::vector<double> traffic(types.size(), 0.0);
  for (size_t s = 0; s < chains.size(); ++s) {
    const ServiceChain& ch = chains[s];
    const std::vector<double>& cum =
        ch.cum_gains.size() == ch.stages.size() ? ch.cum_gains
                                                : cumulative_gains(ch);
    for (size_t k = 0; k < ch.stages.size(); ++k) {
      int idx = ch.stages[k] - 1;
      if (idx < 0 || idx >= static_cast<int>(types.size()))
        fail(ErrorCode::config, "chain " + std::to_string(ch.id) +
                                    ": unknown type id " +
                                    std::to_string(ch.stages[k]));
      traffic[idx] += cum[k] * rates[s];
    }
  }
  DemandVector out;
  out.counts.resize(types.size(), 0);
  for (size_t i = 0; i < types.size(); ++i) {
    if (traffic[i] <= 0.0) continue;
    if (types[i].capacity_mbps <= 0.0)
      fail(ErrorCode::config, "type " + std::to_string(types[i].id) +
                                  ": non-positive capacity");
    out.counts[i] = ceil_tol(traffic[i] / types[i].capacity_mbps);
  }
  return out;
}

SlotCost slot_cost(const Placement& x, const Placement& x_prev,
                   const std::vector<VnfType>& types) {
  if (x.servers != x_prev.servers || x.types != x_prev.types)
    fail(ErrorCode::invalid_argument, "slot_cost: placement shape mismatch");
  if (x.types != static_cast<int>(types.size()))
    fail(ErrorCode::invalid_argument, "slot_cost: type count mismatch");
  // Accumulate integer instance counts per type first so that totals are
  // bit-for-bit identical however servers are grouped.
  std::vector<long long> present(x.types, 0), launched(x.types, 0);
  for (int u = 0; u < x.servers; ++u) {
    for (int i = 0; i < x.types; ++i) {
      int cur = x.at(u, i), prev = x_prev.at(u, i);
      present[i] += cur;
      if (cur > prev) launched[i] += cur - prev;
    }
  }
  SlotCost c;
  for (int i = 0; i < x.types; ++i) {
    c.operational += static_cast<double>(present[i]) * types[i].op_cost;
    c.deployment += static_cast<double>(launched[i]) * types[i].deploy_cost;
  }
  return c;
}

bool check_capacity(const Placement& x, const std::vector<VnfType>& types,
                    const Cluster& cluster) {
  if (x.servers > cluster.num_servers) return false;
  int R = static_cast<int>(cluster.capacity.size());
  for (int u = 0; u < x.servers; ++u) {
    for (int r = 0; r < R; ++r) {
      double used = 0.0;
      for (int i = 0; i < x.types; ++i)
        used += x.at(u, i) * types[i].demand[r];
      if (used > cluster.capacity[r] + 1e-9 * std::max(1.0, cluster.capacity[r]))
        return false;
    }
  }
  return true;
}

bool check_coverage(const Placement& x, const DemandVector& need) {
  if (static_cast<int>(need.counts.size()) != x.types) return false;
  std::vector<long long> have = x.column_sums();
  for (int i = 0; i < x.types; ++i)
    if (have[i] < need.counts[i]) return false;
  return true;
}

} // namespace vnfs
