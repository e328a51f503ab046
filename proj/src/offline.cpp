#include "vnfscale/offline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"

namespace vnfs {

TypeSchedule offline_type_schedule(std::span<const long long> n,
                                   double op_cost, double deploy_cost) {
  if (op_cost <= 0.0)
    fail(ErrorCode::invalid_argument,
         "offline_type_schedule: op_cost must be positive");
  int T = static_cast<int>(n.size());
  TypeSchedule s;
  s.x.assign(T, 0);
  long long peak = 0;
  for (long long v : n) {
    if (v < 0)
      fail(ErrorCode::invalid_argument,
           "offline_type_schedule: negative demand");
    peak = std::max(peak, v);
  }
  // Decompose into unit levels; level k is demanded wherever n(t) >= k.
  // Levels are nested, so per-level optima add up to the exact optimum.
  for (long long k = 1; k <= peak; ++k) {
    int prev = -1;
    for (int t = 0; t < T; ++t) {
      if (n[t] < k) continue;
      if (prev < 0) {
        s.cost += deploy_cost;  // first launch of this level
      } else {
        int gap = t - prev - 1;
        if (gap > 0) {
          if (gap * op_cost <= deploy_cost) {
            // Cheaper (or equal) to idle through the gap than to relaunch.
            s.cost += gap * op_cost;
            for (int tt = prev + 1; tt < t; ++tt) ++s.x[tt];
          } else {
            s.cost += deploy_cost;
          }
        }
      }
      ++s.x[t];
      s.cost += op_cost;
      prev = t;
    }
  }
  return s;
}

double offline_lower_bound(const Config& cfg,
                           const std::vector<DemandVector>& series) {
  int I = cfg.num_types();
  int T = static_cast<int>(series.size());
  double total = 0.0;
  std::vector<long long> n(T);
  for (int i = 0; i < I; ++i) {
    for (int t = 0; t < T; ++t) {
      if (static_cast<int>(series[t].counts.size()) != I)
        fail(ErrorCode::invalid_argument,
             "offline_lower_bound: demand dimension mismatch");
      n[t] = series[t].counts[i];
    }
    total += offline_type_schedule(n, cfg.types[i].op_cost,
                                   cfg.types[i].deploy_cost)
                 .cost;
  }
  return total;
}

namespace {

// All capacity-feasible single-server rows with counts <= cap componentwise.
void enumerate_rows(const std::vector<VnfType>& types, const Cluster& cluster,
                    const std::vector<long long>& cap, size_t i,
                    std::vector<int>& cur, std::vector<double>& residual,
                    std::vector<std::vector<int>>& out) {
  if (i == types.size()) {
    out.push_back(cur);
    return;
  }
  long long kmax = cap[i];
  for (size_t r = 0; r < residual.size(); ++r) {
    if (types[i].demand[r] <= 0.0) continue;
    double tol = 1e-9 * std::max(1.0, residual[r]);
    kmax = std::min(kmax, static_cast<long long>(std::floor(
                              (residual[r] + tol) / types[i].demand[r])));
  }
  for (long long k = 0; k <= kmax; ++k) {
    cur[i] = static_cast<int>(k);
    for (size_t r = 0; r < residual.size(); ++r)
      residual[r] -= k * types[i].demand[r];
    enumerate_rows(types, cluster, cap, i + 1, cur, residual, out);
    for (size_t r = 0; r < residual.size(); ++r)
      residual[r] += k * types[i].demand[r];
    cur[i] = 0;
  }
}

using State = std::vector<int>;  // U rows concatenated, rows non-increasing

void enumerate_states(const std::vector<std::vector<int>>& rows, int U, int I,
                      const std::vector<long long>& lo,
                      const std::vector<long long>& hi, size_t min_row,
                      int server, std::vector<long long>& colsum, State& cur,
                      std::vector<State>& out) {
  if (server == U) {
    for (int i = 0; i < I; ++i)
      if (colsum[i] < lo[i]) return;
    out.push_back(cur);
    return;
  }
  // Rows are indexed in descending lexicographic order; forcing indices to be
  // non-decreasing along servers canonicalizes the row multiset.
  for (size_t c = min_row; c < rows.size(); ++c) {
    bool ok = true;
    for (int i = 0; i < I; ++i)
      if (colsum[i] + rows[c][i] > hi[i]) { ok = false; break; }
    if (!ok) continue;
    for (int i = 0; i < I; ++i) {
      colsum[i] += rows[c][i];
      cur[server * I + i] = rows[c][i];
    }
    enumerate_states(rows, U, I, lo, hi, c, server + 1, colsum, cur, out);
    for (int i = 0; i < I; ++i) {
      colsum[i] -= rows[c][i];
      cur[server * I + i] = 0;
    }
  }
}

// Cheapest way to morph placement A into B: deployment cost minimized over
// all pairings of old servers with new roles (teardown is free, so only
// positive per-type increases are billed). When `best_perm` is non-null it
// receives the first minimizing pairing (server u adopts row best_perm[u]).
double transition_cost(const State& a, const State& b, int U, int I,
                       const std::vector<VnfType>& types,
                       std::vector<int>* best_perm = nullptr) {
  std::vector<int> perm(U);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int u = 0; u < U; ++u) {
      for (int i = 0; i < I; ++i) {
        int add = b[perm[u] * I + i] - a[u * I + i];
        if (add > 0) c += add * types[i].deploy_cost;
      }
    }
    if (c < best) {
      best = c;
      if (best_perm) *best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

} // namespace

double exhaustive_offline(const Config& cfg,
                          const std::vector<DemandVector>& series,
                          const ExhaustiveLimits& limits,
                          std::vector<Placement>* trajectory) {
  int U = cfg.cluster.num_servers;
  int I = cfg.num_types();
  int T = static_cast<int>(series.size());
  if (trajectory) trajectory->clear();
  if (T == 0) return 0.0;

  std::vector<long long> peak(I, 0);
  for (const DemandVector& d : series) {
    if (static_cast<int>(d.counts.size()) != I)
      fail(ErrorCode::invalid_argument,
           "exhaustive_offline: demand dimension mismatch");
    for (int i = 0; i < I; ++i) peak[i] = std::max(peak[i], d.counts[i]);
  }
  long long total_peak = std::accumulate(peak.begin(), peak.end(), 0LL);
  if (U > limits.max_servers || T > limits.max_slots ||
      total_peak > limits.max_total_instances)
    fail(ErrorCode::scale_guard,
         "exhaustive_offline: instance exceeds toy-size limits");

  // Candidate rows, descending lex so canonical states list big rows first.
  std::vector<std::vector<int>> rows;
  {
    std::vector<int> cur(I, 0);
    std::vector<double> residual = cfg.cluster.capacity;
    enumerate_rows(cfg.types, cfg.cluster, peak, 0, cur, residual, rows);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a > b; });
  }

  State zero(static_cast<size_t>(U) * I, 0);
  std::map<State, double> dist{{zero, 0.0}};
  std::vector<std::map<State, State>> parent(trajectory ? T : 0);
  for (int t = 0; t < T; ++t) {
    std::vector<State> layer;
    std::vector<long long> colsum(I, 0);
    State cur(static_cast<size_t>(U) * I, 0);
    enumerate_states(rows, U, I, series[t].counts, peak, 0, 0, colsum, cur,
                     layer);
    if (layer.empty())
      fail(ErrorCode::overload,
           "exhaustive_offline: demand does not fit at slot " +
               std::to_string(t + 1));
    std::map<State, double> next;
    for (const State& b : layer) {
      double op = 0.0;
      for (int u = 0; u < U; ++u)
        for (int i = 0; i < I; ++i)
          op += b[u * I + i] * cfg.types[i].op_cost;
      double best = std::numeric_limits<double>::infinity();
      const State* from = nullptr;
      for (const auto& [a, d] : dist) {
        double c = d + transition_cost(a, b, U, I, cfg.types);
        if (c < best) {
          best = c;
          from = &a;
        }
      }
      next[b] = best + op;
      if (trajectory) parent[t].emplace(b, *from);
    }
    dist = std::move(next);
  }
  double ans = std::numeric_limits<double>::infinity();
  const State* last = nullptr;
  for (const auto& [s, d] : dist) {
    if (d < ans) {
      ans = d;
      last = &s;
    }
  }

  if (trajectory) {
    std::vector<State> canon(T);
    State at = *last;
    for (int t = T - 1; t >= 0; --t) {
      canon[t] = at;
      at = parent[t].at(at);
    }
    // The path holds canonical (sorted) states; replay it pinning each state
    // onto physical servers with the same pairing the transition metric
    // priced, so the emitted per-server deltas add up to `ans`.
    trajectory->reserve(T);
    State prev = zero;
    std::vector<int> perm(U);
    for (int t = 0; t < T; ++t) {
      transition_cost(prev, canon[t], U, I, cfg.types, &perm);
      Placement x(U, I);
      for (int u = 0; u < U; ++u)
        for (int i = 0; i < I; ++i)
          x.at(u, i) = canon[t][perm[u] * I + i];
      prev.assign(canon[t].size(), 0);
      for (int u = 0; u < U; ++u)
        for (int i = 0; i < I; ++i) prev[u * I + i] = x.at(u, i);
      trajectory->push_back(std::move(x));
    }
  }
  return ans;
}

RoutingReport proportional_routing(const Config& cfg, const Placement& x,
                                   std::span<const double> rates) {
  if (rates.size() != cfg.chains.size())
    fail(ErrorCode::invalid_argument,
         "routing: one ingress rate per chain required");
  if (x.types != cfg.num_types())
    fail(ErrorCode::invalid_argument, "routing: placement type mismatch");

  RoutingReport rep;
  std::vector<long long> colsums = x.column_sums();
  for (size_t s = 0; s < cfg.chains.size(); ++s) {
    const ServiceChain& ch = cfg.chains[s];
    for (size_t k = 0; k < ch.stages.size(); ++k) {
      StageFlow sf;
      sf.chain_id = ch.id;
      sf.stage = static_cast<int>(k);
      sf.type_idx = ch.stages[k] - 1;
      sf.total = rates[s] * ch.cum_gains[k];
      sf.per_server.assign(x.servers, 0.0);
      if (sf.total > 0.0) {
        long long X = colsums[sf.type_idx];
        if (X == 0) {
          // Positive flow with nothing to route to: infeasible stage.
          rep.feasible = false;
          sf.residual = 1.0;
        } else {
          // Instances of one type are identical, so an even split per
          // instance is exactly the capacity-weighted split.
          sf.per_instance = sf.total / static_cast<double>(X);
          double acc = 0.0;
          for (int u = 0; u < x.servers; ++u) {
            sf.per_server[u] = sf.per_instance * x.at(u, sf.type_idx);
            acc += sf.per_server[u];
          }
          sf.residual = std::abs(acc - sf.total) / std::max(1.0, sf.total);
          double cap = cfg.types[sf.type_idx].capacity_mbps;
          double util = sf.per_instance / cap;
          rep.max_utilization = std::max(rep.max_utilization, util);
          if (sf.per_instance > cap * (1.0 + 1e-9)) rep.feasible = false;
        }
        rep.max_residual = std::max(rep.max_residual, sf.residual);
      }
      rep.stages.push_back(std::move(sf));
    }
  }
  return rep;
}

} // namespace vnfs
