#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vnfscale/config.hpp"
#include "vnfscale/preplan.hpp"
#include "vnfscale/trace.hpp"
#include "vnfscale/types.hpp"

namespace vnfs {

// Algorithm/baseline selector. "myopic" repacks and rematches every slot,
// which is exactly what msc_online does; it is kept as a named baseline so
// reports stay symmetric across experiment families.
//   ssc_online  - randomized rent-or-buy scaler for one chain (pre-planned)
//   msc_online  - per-slot repack + min-cost server matching, all chains
//   static      - provision the whole-trace peak once, never scale
//   myopic      - alias of msc_online mechanics
//   offline_lb  - per-type hindsight optimum (placement relaxed)
//   exhaustive  - exact hindsight optimum with placement (toy sizes only)
struct ExperimentSpec {
  Config config;
  TraceSeries trace;
  std::string algo = "ssc_online";
  int chain_id = 1;  // chain driven by ssc_online
  uint64_t seed_begin = 1;
  uint64_t seed_end = 1;  // inclusive
  // When > 0, every type's deploy_cost is overridden to ratio * op_cost.
  double deploy_op_ratio = 0.0;
  int threads = 0;     // 0 = hardware concurrency
  bool verify = true;  // per-slot invariant checks
  PreplanOptions preplan;
  std::optional<PrePlan> preplan_cache;  // reuse across runs/seeds
};

struct ViolationEvent {
  int slot = 0;  // 1-based
  std::string kind;
  std::string detail;
};

struct RunResult {
  std::string algo;
  uint64_t seed = 0;
  int slots = 0;
  bool completed = true;  // false when the run aborted (e.g. overload)
  CostReport cost;
  // Per-slot series for reporting: demanded and placed counts per type.
  std::vector<std::vector<long long>> demanded;  // [slot][type]
  std::vector<std::vector<long long>> placed;    // [slot][type]
  uint64_t digest = 0;  // FNV-1a over the slot-by-slot placements
  std::vector<ViolationEvent> violations;
  double wall_seconds = 0.0;
};

// Demand series induced by a trace (all chains pooled).
std::vector<DemandVector> demand_series(const Config& cfg,
                                        const TraceSeries& trace);
// Demand series of a single chain in isolation.
std::vector<DemandVector> demand_series_for_chain(const Config& cfg,
                                                  int chain_id,
                                                  const TraceSeries& trace);

RunResult run_single(const ExperimentSpec& spec, uint64_t seed);
// One RunResult per seed in [seed_begin, seed_end], executed on a worker
// pool; results are ordered by seed and independent of the pool size.
std::vector<RunResult> run(const ExperimentSpec& spec);

// FNV-1a 64-bit over a byte stream; helpers feed integers little-endian.
uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ULL);

std::string run_result_to_json(const RunResult& r);
std::string run_result_slots_csv(const RunResult& r);

// Write one JSON + one per-slot CSV per run, plus a summary.json index.
void write_reports(const std::vector<RunResult>& results,
                   const std::string& out_dir);

// Collect every run under `in_dir` (via summary.json) into one table.
// emit is "csv" or "json"; returns the rendered document.
std::string aggregate_reports(const std::string& in_dir,
                              const std::string& emit);

} // namespace vnfs
