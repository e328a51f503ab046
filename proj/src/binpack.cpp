#include "vnfscale/binpack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"

namespace vnfs {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Max further instances of type i that fit into the residual capacities.
int max_fit(const VnfType& t, const std::vector<double>& residual) {
  long long k = kInf;
  for (size_t r = 0; r < residual.size(); ++r) {
    if (t.demand[r] <= 0.0) continue;
    double tol = 1e-9 * std::max(1.0, residual[r]);
    long long kr = static_cast<long long>(
        std::floor((residual[r] + tol) / t.demand[r]));
    k = std::min(k, std::max<long long>(kr, 0));
  }
  return static_cast<int>(std::min<long long>(k, kInf));
}

struct Enumerator {
  const std::vector<VnfType>& types;
  const std::vector<int>& active;  // indices of allowed types, ascending
  long long budget;
  std::vector<Pattern>& out;
  std::vector<int> counts;
  std::vector<double> residual;

  void dfs(size_t pos) {
    if (pos + 1 == active.size()) {
      // Only the maximal count of the last type can yield a maximal pattern.
      int i = active[pos];
      int k = max_fit(types[i], residual);
      counts[i] = k;
      for (size_t r = 0; r < residual.size(); ++r)
        residual[r] -= k * types[i].demand[r];
      emit_if_maximal();
      for (size_t r = 0; r < residual.size(); ++r)
        residual[r] += k * types[i].demand[r];
      counts[i] = 0;
      return;
    }
    int i = active[pos];
    int kmax = max_fit(types[i], residual);
    for (int k = 0; k <= kmax; ++k) {
      counts[i] = k;
      for (size_t r = 0; r < residual.size(); ++r)
        residual[r] -= k * types[i].demand[r];
      dfs(pos + 1);
      for (size_t r = 0; r < residual.size(); ++r)
        residual[r] += k * types[i].demand[r];
      counts[i] = 0;
    }
  }

  void emit_if_maximal() {
    for (int i : active)
      if (max_fit(types[i], residual) > 0) return;
    if (static_cast<long long>(out.size()) >= budget)
      fail(ErrorCode::pattern_guard,
           "pattern enumeration exceeded guard of " + std::to_string(budget));
    out.push_back(Pattern{counts});
  }
};

// Covering lower bound on servers for residual demand `rem` using patterns
// j.. of `pats`: the strongest of a per-resource volume bound and a per-type
// bound against the best remaining pattern. Negative rem entries are treated
// as zero (overshoot never relaxes the bound). Returns kInf when some type
// can no longer be covered.
long long lower_bound(const std::vector<long long>& rem,
                      const std::vector<std::vector<int>>& suffix_max,
                      size_t j, const std::vector<VnfType>& types,
                      const Cluster& cluster) {
  long long lb = 0;
  int R = static_cast<int>(cluster.capacity.size());
  for (int r = 0; r < R; ++r) {
    double vol = 0.0;
    for (size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0) vol += static_cast<double>(rem[i]) * types[i].demand[r];
    if (vol <= 0.0) continue;
    lb = std::max(lb, ceil_tol(vol / cluster.capacity[r]));
  }
  for (size_t i = 0; i < rem.size(); ++i) {
    if (rem[i] <= 0) continue;
    int best = suffix_max[j][i];
    if (best == 0) return kInf;
    lb = std::max(lb, (rem[i] + best - 1) / best);
  }
  return lb;
}

struct Search {
  const std::vector<Pattern>& pats;
  const std::vector<std::vector<int>>& suffix_max;
  const std::vector<VnfType>& types;
  const Cluster& cluster;
  long long root_lb = 0;

  long long best = kInf;
  std::vector<std::pair<int, int>> stack = {};  // (pattern idx, multiplicity)
  std::vector<std::pair<int, int>> best_stack = {};
  bool done = false;

  void run(std::vector<long long>& rem, long long limit) {
    best = limit + 1;
    dfs(0, rem, 0);
  }

  void dfs(size_t j, std::vector<long long>& rem, long long used) {
    if (done) return;
    if (std::all_of(rem.begin(), rem.end(),
                    [](long long v) { return v <= 0; })) {
      if (used < best) {
        best = used;
        best_stack = stack;
        if (best == root_lb) done = true;
      }
      return;
    }
    if (j == pats.size()) return;
    long long lb = lower_bound(rem, suffix_max, j, types, cluster);
    if (lb >= kInf || used + lb >= best) return;

    const std::vector<int>& v = pats[j].counts;
    long long kmax = 0;
    for (size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0 && v[i] > 0)
        kmax = std::max(kmax, (rem[i] + v[i] - 1) / v[i]);
    kmax = std::min(kmax, best - 1 - used);

    for (long long k = kmax; k >= 0 && !done; --k) {
      for (size_t i = 0; i < rem.size(); ++i) rem[i] -= k * v[i];
      if (k > 0) stack.emplace_back(static_cast<int>(j), static_cast<int>(k));
      dfs(j + 1, rem, used + k);
      if (k > 0) stack.pop_back();
      for (size_t i = 0; i < rem.size(); ++i) rem[i] += k * v[i];
    }
  }
};

} // namespace

int Packing::servers_used() const {
  int n = 0;
  for (const auto& [p, k] : assignment) n += k;
  return n;
}

std::vector<long long> Packing::totals(int num_types) const {
  std::vector<long long> t(num_types, 0);
  for (const auto& [p, k] : assignment)
    for (int i = 0; i < num_types; ++i)
      t[i] += static_cast<long long>(p.counts[i]) * k;
  return t;
}

std::vector<Pattern> enumerate_patterns(const std::vector<VnfType>& types,
                                        const Cluster& cluster,
                                        const std::vector<bool>& allowed,
                                        const PackOptions& opts) {
  if (!allowed.empty() && allowed.size() != types.size())
    fail(ErrorCode::invalid_argument,
         "enumerate_patterns: allowed mask size mismatch");
  std::vector<int> active;
  for (size_t i = 0; i < types.size(); ++i)
    if (allowed.empty() || allowed[i]) active.push_back(static_cast<int>(i));

  std::vector<Pattern> out;
  if (active.empty()) return out;
  Enumerator e{types, active, opts.max_patterns, out,
               std::vector<int>(types.size(), 0), cluster.capacity};
  e.dfs(0);
  return out;  // DFS order is ascending lexicographic over count vectors
}

std::optional<Packing> pack(const DemandVector& need,
                            const std::vector<VnfType>& types,
                            const Cluster& cluster, const PackOptions& opts) {
  if (need.counts.size() != types.size())
    fail(ErrorCode::invalid_argument, "pack: demand/type size mismatch");
  Packing result;
  bool all_zero = std::all_of(need.counts.begin(), need.counts.end(),
                              [](long long v) { return v <= 0; });
  if (all_zero) return result;

  std::vector<bool> allowed(types.size(), false);
  for (size_t i = 0; i < types.size(); ++i) allowed[i] = need.counts[i] > 0;
  std::vector<Pattern> pats = enumerate_patterns(types, cluster, allowed, opts);
  // Search from the lexicographically largest pattern downward so ties in
  // server count resolve to a deterministic, lex-preferred assignment.
  std::sort(pats.begin(), pats.end(),
            [](const Pattern& a, const Pattern& b) { return a.counts > b.counts; });

  size_t P = pats.size(), I = types.size();
  std::vector<std::vector<int>> suffix_max(P + 1, std::vector<int>(I, 0));
  for (size_t j = P; j-- > 0;) {
    for (size_t i = 0; i < I; ++i)
      suffix_max[j][i] = std::max(suffix_max[j + 1][i], pats[j].counts[i]);
  }

  std::vector<long long> rem = need.counts;
  Search s{pats, suffix_max, types, cluster};
  s.root_lb = lower_bound(rem, suffix_max, 0, types, cluster);
  if (s.root_lb >= kInf || s.root_lb > cluster.num_servers) return std::nullopt;
  s.run(rem, cluster.num_servers);
  if (s.best > cluster.num_servers) return std::nullopt;

  for (const auto& [j, k] : s.best_stack)
    result.assignment.emplace_back(pats[j], k);
  return result;
}

Placement to_placement(const Packing& packing, int num_servers,
                       int num_types) {
  if (packing.servers_used() > num_servers)
    fail(ErrorCode::invalid_argument,
         "to_placement: packing exceeds server count");
  Placement x(num_servers, num_types);
  int u = 0;
  for (const auto& [p, k] : packing.assignment) {
    for (int c = 0; c < k; ++c, ++u)
      for (int i = 0; i < num_types; ++i) x.at(u, i) = p.counts[i];
  }
  return x;
}

} // namespace vnfs
