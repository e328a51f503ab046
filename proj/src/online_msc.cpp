#include "vnfscale/online_msc.hpp"

#include <cmath>
#include <limits>

#include "vnfscale/errors.hpp"

namespace vnfs {

std::vector<int> min_cost_assignment(
    const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorCode::invalid_argument, "assignment: matrix must be square");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Potentials u/v and matching p over 1-based columns; p[j] = row matched to
  // column j, column 0 is the virtual start of each augmenting scan.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

MscState::MscState(const Config& cfg) : cfg_(cfg) {
  x_ = Placement(cfg_.cluster.num_servers, cfg_.num_types());
}

const Placement& MscState::step(const DemandVector& need) {
  int U = cfg_.cluster.num_servers;
  int I = cfg_.num_types();
  std::optional<Packing> packed = pack(need, cfg_.types, cfg_.cluster);
  if (!packed)
    fail(ErrorCode::overload,
         "msc: demand does not fit the cluster at slot " +
             std::to_string(slot_ + 1));

  // Expand the packing into one target pattern per hosting server; every
  // server without a pattern implicitly receives the empty one (teardown).
  std::vector<const std::vector<int>*> target;
  for (const auto& [pat, mult] : packed->assignment)
    for (int c = 0; c < mult; ++c) target.push_back(&pat.counts);
  int k = static_cast<int>(target.size());

  // Matching every server against every pattern is O(U^3) even when almost
  // all servers are empty. Empty servers are interchangeable — a pattern
  // costs its full launch price on any of them, never less than on an
  // occupied server — so some optimal matching confines the patterns to the
  // occupied servers plus, if patterns outnumber those, the lowest-numbered
  // empty ones. Solve the matching on that subset only.
  std::vector<char> occupied(U, 0);
  std::vector<int> rows;
  for (int u = 0; u < U; ++u) {
    for (int i = 0; i < I; ++i) {
      if (x_.at(u, i) > 0) {
        occupied[u] = 1;
        rows.push_back(u);
        break;
      }
    }
  }
  for (int u = 0; u < U && static_cast<int>(rows.size()) < k; ++u)
    if (!occupied[u]) rows.push_back(u);
  int n = static_cast<int>(rows.size());

  // cost[r][j]: deployment spend if server rows[r] adopts target pattern j.
  // Columns beyond k are empty patterns and cost nothing anywhere.
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < k; ++j) {
      double c = 0.0;
      const std::vector<int>& t = *target[j];
      for (int i = 0; i < I; ++i) {
        int add = t[i] - x_.at(rows[r], i);
        if (add > 0) c += add * cfg_.types[i].deploy_cost;
      }
      cost[r][j] = c;
    }
  }
  std::vector<int> match = min_cost_assignment(cost);

  double spend = 0.0;
  Placement next(U, I);
  for (int r = 0; r < n; ++r) {
    if (match[r] >= k) continue;  // empty pattern: the server just clears
    int u = rows[r];
    const std::vector<int>& t = *target[match[r]];
    for (int i = 0; i < I; ++i) {
      next.at(u, i) = t[i];
      int add = t[i] - x_.at(u, i);
      if (add > 0) spend += add * cfg_.types[i].deploy_cost;
    }
  }
  x_ = std::move(next);
  last_deploy_cost_ = spend;
  ++slot_;
  return x_;
}

} // namespace vnfs
