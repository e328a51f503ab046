#pragma once

// Independent reference implementations used only by the tests. These are
// deliberately naive reimplementations kept apart from the library so the
// two sides can disagree; expected values in the test files come from here
// or from hand calculation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "vnfscale/types.hpp"

namespace oracle {

// Flow propagation with long double arithmetic: one rate per chain, gains
// applied stage by stage, pooled per type, divided by per-instance capacity.
inline std::vector<long long> demand(
    const std::vector<vnfs::ServiceChain>& chains,
    const std::vector<vnfs::VnfType>& types, const std::vector<double>& rates) {
  std::vector<long double> traffic(types.size(), 0.0L);
  for (size_t s = 0; s < chains.size(); ++s) {
    long double flow = rates[s];
    for (size_t k = 0; k < chains[s].stages.size(); ++k) {
      if (k > 0) flow *= static_cast<long double>(chains[s].gains[k - 1]);
      traffic[chains[s].stages[k] - 1] += flow;
    }
  }
  std::vector<long long> out(types.size(), 0);
  for (size_t i = 0; i < types.size(); ++i) {
    if (traffic[i] <= 0.0L) continue;
    long double v = traffic[i] / static_cast<long double>(types[i].capacity_mbps);
    long double tol = 1e-9L * std::max<long double>(1.0L, v);
    out[i] = static_cast<long long>(std::ceil(static_cast<double>(v - tol)));
  }
  return out;
}

namespace detail {

inline void feasible_rows(const std::vector<std::vector<double>>& footprint,
                          const std::vector<double>& cap,
                          const std::vector<long long>& limit, size_t i,
                          std::vector<long long>& cur,
                          std::vector<double>& residual,
                          std::vector<std::vector<long long>>& out) {
  if (i == footprint.size()) {
    out.push_back(cur);
    return;
  }
  long long kmax = limit[i];
  for (size_t r = 0; r < cap.size(); ++r) {
    if (footprint[i][r] <= 0.0) continue;
    kmax = std::min(kmax, static_cast<long long>(std::floor(
                              (residual[r] + 1e-9) / footprint[i][r])));
  }
  for (long long k = 0; k <= kmax; ++k) {
    cur[i] = k;
    for (size_t r = 0; r < cap.size(); ++r) residual[r] -= k * footprint[i][r];
    feasible_rows(footprint, cap, limit, i + 1, cur, residual, out);
    for (size_t r = 0; r < cap.size(); ++r) residual[r] += k * footprint[i][r];
    cur[i] = 0;
  }
}

inline bool coverable(const std::vector<std::vector<long long>>& rows,
                      std::vector<long long> need, int servers,
                      std::map<std::pair<int, std::vector<long long>>, bool>& memo) {
  for (long long& v : need) v = std::max<long long>(v, 0);
  if (std::all_of(need.begin(), need.end(),
                  [](long long v) { return v == 0; }))
    return true;
  if (servers == 0) return false;
  auto key = std::make_pair(servers, need);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool ok = false;
  for (const auto& row : rows) {
    std::vector<long long> next = need;
    bool useful = false;
    for (size_t i = 0; i < next.size(); ++i) {
      if (row[i] > 0 && next[i] > 0) useful = true;
      next[i] -= row[i];
    }
    if (!useful) continue;
    if (coverable(rows, next, servers - 1, memo)) {
      ok = true;
      break;
    }
  }
  memo[key] = ok;
  return ok;
}

} // namespace detail

// Smallest number of servers whose contents cover `need`, by exhaustive
// search over per-server count vectors. Returns -1 when even `max_servers`
// servers cannot cover it. Only sensible for toy sizes.
inline int min_servers(const std::vector<std::vector<double>>& footprint,
                       const std::vector<double>& cap,
                       const std::vector<long long>& need, int max_servers) {
  std::vector<std::vector<long long>> rows;
  std::vector<long long> cur(footprint.size(), 0);
  std::vector<double> residual = cap;
  detail::feasible_rows(footprint, cap, need, 0, cur, residual, rows);
  std::map<std::pair<int, std::vector<long long>>, bool> memo;
  for (int m = 0; m <= max_servers; ++m)
    if (detail::coverable(rows, need, m, memo)) return m;
  return -1;
}

// Exact single-type schedule cost by dynamic programming over the instance
// count: x(t) ranges over [n(t), max n], transitions pay op and launch costs.
inline double dp_single_type(std::span<const long long> n, double op,
                             double dep) {
  long long N = 0;
  for (long long v : n) N = std::max(N, v);
  int T = static_cast<int>(n.size());
  if (T == 0 || N == 0) return 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(N + 1, kInf);
  prev[0] = 0.0;  // nothing deployed before the first slot
  for (int t = 0; t < T; ++t) {
    std::vector<double> cur(N + 1, kInf);
    for (long long x = n[t]; x <= N; ++x) {
      double best = kInf;
      for (long long xp = 0; xp <= N; ++xp) {
        if (prev[xp] == kInf) continue;
        double launch = x > xp ? static_cast<double>(x - xp) * dep : 0.0;
        best = std::min(best, prev[xp] + launch);
      }
      cur[x] = best + static_cast<double>(x) * op;
    }
    prev = std::move(cur);
  }
  double ans = kInf;
  for (double v : prev) ans = std::min(ans, v);
  return ans;
}

// Minimum-cost perfect matching by enumerating all column permutations.
inline double assignment_bruteforce(
    const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += cost[i][perm[i]];
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Upper critical values of the chi-square distribution at significance 0.01.
inline double chi2_crit_99(int df) {
  static const double table[] = {6.635,  9.210,  11.345, 13.277, 15.086,
                                 16.812, 18.475, 20.090, 21.666};
  return table[df - 1];  // df in 1..9
}

} // namespace oracle
