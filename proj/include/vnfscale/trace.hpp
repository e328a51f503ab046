#pragma once

#include <cstdint>
#include <string>

#include "vnfscale/types.hpp"

namespace vnfs {

// Load a trace from CSV with columns slot,chain_id,rate (header optional).
// Slots must be contiguous from 1, chain ids dense from 1, every (slot,chain)
// pair present exactly once. expected_chains > 0 enforces the chain count.
TraceSeries load_trace_csv(const std::string& path, int expected_chains = 0);

TraceSeries parse_trace_csv(const std::string& text, int expected_chains = 0);
std::string trace_to_csv(const TraceSeries& trace);
void save_trace_csv(const TraceSeries& trace, const std::string& path);

// Linearly scale all rates so the global peak lands on `peak`.
TraceSeries scale_to_peak(TraceSeries trace, double peak);

// Peak-to-mean ratio of the per-slot aggregate load.
double peak_to_mean(const TraceSeries& trace);

// Reshape the trace so its aggregate peak-to-mean ratio hits `target` while
// the aggregate mean is preserved: per-slot totals are raised to a power
// gamma (found by root search; PMR is monotone in gamma) and each slot's
// per-chain mix is kept. Raises unreachable_target when no gamma attains the
// target within rel_tol.
TraceSeries pmr_rescale(const TraceSeries& trace, double target,
                        double rel_tol = 1e-3);

// Seeded synthetic workload: per-chain phase-shifted diurnal sinusoid,
// a weekly modulation, and lognormal noise; optionally PMR-reshaped, then
// peak-normalized. All entries strictly positive.
struct SyntheticSpec {
  int num_chains = 1;
  int horizon = 2016;  // one week of 5-minute slots
  int slots_per_day = 288;
  double daily_amplitude = 0.6;    // in [0,1)
  double weekly_amplitude = 0.15;  // in [0,1)
  double noise_sigma = 0.3;        // lognormal sigma, >= 0
  double peak_mbps = 400000.0;
  double pmr = 0.0;  // 0 keeps the natural ratio
  uint64_t seed = 1;
};

TraceSeries synthesize_trace(const SyntheticSpec& spec);

} // namespace vnfs
