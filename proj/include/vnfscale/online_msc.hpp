#pragma once

#include <vector>

#include "vnfscale/binpack.hpp"
#include "vnfscale/config.hpp"
#include "vnfscale/types.hpp"

namespace vnfs {

// Minimum-cost perfect matching on a square cost matrix (potential-based,
// O(n^3)). Returns the column assigned to each row. Deterministic: ties
// resolve by scan order.
std::vector<int> min_cost_assignment(
    const std::vector<std::vector<double>>& cost);

// Online scaler for multiple chains sharing the cluster. Each slot is
// repacked from scratch into minimum servers; the fresh server patterns are
// then matched onto physical servers so that launching new instances costs
// as little as possible (teardown is free, reuse is free).
class MscState {
public:
  explicit MscState(const Config& cfg);

  // Advance one slot. Raises ErrorCode::overload when the demand cannot be
  // packed into the cluster at all.
  const Placement& step(const DemandVector& need);

  const Placement& placement() const { return x_; }
  int slot() const { return slot_; }
  // Deployment cost incurred by the most recent step (matching objective).
  double last_deploy_cost() const { return last_deploy_cost_; }

private:
  Config cfg_;
  Placement x_;
  double last_deploy_cost_ = 0.0;
  int slot_ = 0;
};

} // namespace vnfs
