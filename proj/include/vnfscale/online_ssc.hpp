#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vnfscale/config.hpp"
#include "vnfscale/preplan.hpp"
#include "vnfscale/types.hpp"

namespace vnfs {

// Probability mass over idle deadlines 1..delta. Deadlines are geometric-ish,
// weighted toward delta, chosen so that the expected rent-or-buy cost of any
// idle gap stays within 1/(1-(1-1/delta)^delta) of the best fixed choice.
std::vector<double> deadline_pmf(int delta);

// Draw one deadline by inverse CDF; consumes exactly one engine output.
int sample_deadline(int delta, std::mt19937_64& rng);

// Online scaler for a single service chain. Instances live on the servers of
// the pre-planned placement only (no migration, ever): new launches draw
// server IDs from the pre-plan's per-type reservations; removals return them.
// Surplus instances idle with a randomized removal deadline instead of being
// torn down immediately, so a quick demand rebound costs nothing.
class SscState {
public:
  // `plan` is consumed (its reservations become the live free lists).
  SscState(const Config& cfg, int chain_id, PrePlan plan, uint64_t seed);

  // Advance one slot: reconcile running instances with `need`, age idle
  // instances, remove the expired, and return the end-of-slot placement.
  const Placement& step(const DemandVector& need);

  const Placement& placement() const { return x_; }
  int slot() const { return slot_; }

  long long running_count(int type_idx) const {
    return static_cast<long long>(running_[type_idx].size());
  }
  long long idle_count(int type_idx) const {
    return static_cast<long long>(idle_[type_idx].size());
  }
  // New launches per type in the most recent step.
  const std::vector<long long>& last_deployments() const { return deployed_; }
  const PrePlan& plan() const { return plan_; }

private:
  struct IdleRec {
    int server = 0;
    int counter = 0;   // idle slots served so far
    int deadline = 0;  // removal once counter reaches this
  };

  PrePlan plan_;
  std::vector<int> delta_;                   // per-type break-even horizon
  std::vector<std::vector<int>> running_;    // per type, LIFO of server IDs
  std::vector<std::vector<IdleRec>> idle_;   // per type, LIFO of idle records
  std::vector<long long> n_prev_;
  std::vector<long long> deployed_;
  Placement x_;
  std::mt19937_64 rng_;
  int slot_ = 0;
};

} // namespace vnfs
