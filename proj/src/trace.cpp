#include "vnfscale/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "vnfscale/errors.hpp"
#include "vnfscale/rng.hpp"

namespace vnfs {

namespace {

[[noreturn]] void bad(const std::string& what) {
  fail(ErrorCode::trace, "trace: " + what);
}

// Aggregate load per slot.
std::vector<double> totals(const TraceSeries& tr) {
  std::vector<double> t(tr.horizon, 0.0);
  for (int s = 0; s < tr.num_chains; ++s)
    for (int k = 0; k < tr.horizon; ++k) t[k] += tr.at(s, k);
  return t;
}

// PMR of totals raised elementwise to gamma (scale-free in the prefactor).
double pmr_of_power(const std::vector<double>& t, double tmax, double gamma) {
  double acc = 0.0;
  for (double v : t) acc += std::pow(v / tmax, gamma);
  return static_cast<double>(t.size()) / acc;
}

} // namespace

TraceSeries parse_trace_csv(const std::string& text, int expected_chains) {
  struct Row {
    long long slot;
    int chain;
    double rate;
  };
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') ||
        !std::getline(ls, c, ','))
      bad("line " + std::to_string(lineno) + ": expected slot,chain_id,rate");
    try {
      rows.push_back(
          {std::stoll(a), std::stoi(b), std::stod(c)});
    } catch (const std::exception&) {
      if (first) {  // tolerate a header line
        first = false;
        continue;
      }
      bad("line " + std::to_string(lineno) + ": non-numeric field");
    }
    first = false;
  }
  if (rows.empty()) bad("no data rows");

  long long T = 0;
  int S = 0;
  for (const Row& r : rows) {
    T = std::max(T, r.slot);
    S = std::max(S, r.chain);
  }
  if (S < 1) bad("chain ids must start at 1");
  if (expected_chains > 0 && S != expected_chains)
    bad("has " + std::to_string(S) + " chains, expected " +
        std::to_string(expected_chains));
  if (rows.size() != static_cast<size_t>(T) * S)
    bad("expected " + std::to_string(T * S) + " rows for " +
        std::to_string(T) + " slots x " + std::to_string(S) +
        " chains, found " + std::to_string(rows.size()));

  TraceSeries tr(S, static_cast<int>(T));
  std::vector<char> seen(static_cast<size_t>(T) * S, 0);
  for (const Row& r : rows) {
    if (r.slot < 1 || r.slot > T || r.chain < 1 || r.chain > S)
      bad("slot/chain out of range");
    if (r.rate < 0.0) bad("negative rate");
    size_t idx = static_cast<size_t>(r.chain - 1) * T + (r.slot - 1);
    if (seen[idx]) bad("duplicate (slot,chain) pair");
    seen[idx] = 1;
    tr.at(r.chain - 1, static_cast<int>(r.slot - 1)) = r.rate;
  }
  return tr;  // full coverage follows from the row-count check
}

TraceSeries load_trace_csv(const std::string& path, int expected_chains) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open trace file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trace_csv(ss.str(), expected_chains);
}

std::string trace_to_csv(const TraceSeries& trace) {
  std::ostringstream out;
  out << "slot,chain_id,rate\n";
  out.precision(17);
  for (int t = 0; t < trace.horizon; ++t)
    for (int s = 0; s < trace.num_chains; ++s)
      out << (t + 1) << ',' << (s + 1) << ',' << trace.at(s, t) << '\n';
  return out.str();
}

void save_trace_csv(const TraceSeries& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write trace file: " + path);
  out << trace_to_csv(trace);
}

TraceSeries scale_to_peak(TraceSeries trace, double peak) {
  if (peak <= 0.0)
    fail(ErrorCode::invalid_argument, "scale_to_peak: peak must be positive");
  double cur = trace.peak();
  if (cur <= 0.0)
    fail(ErrorCode::invalid_argument, "scale_to_peak: trace is all zero");
  double f = peak / cur;
  for (double& v : trace.rates) v *= f;
  return trace;
}

double peak_to_mean(const TraceSeries& trace) {
  std::vector<double> t = totals(trace);
  double peak = *std::max_element(t.begin(), t.end());
  double mean = 0.0;
  for (double v : t) mean += v;
  mean /= static_cast<double>(t.size());
  if (mean <= 0.0)
    fail(ErrorCode::invalid_argument, "peak_to_mean: trace is all zero");
  return peak / mean;
}

TraceSeries pmr_rescale(const TraceSeries& trace, double target,
                        double rel_tol) {
  if (target < 1.0)
    fail(ErrorCode::unreachable_target, "pmr_rescale: target below 1");
  std::vector<double> t = totals(trace);
  double tmax = *std::max_element(t.begin(), t.end());
  if (tmax <= 0.0)
    fail(ErrorCode::invalid_argument, "pmr_rescale: trace is all zero");
  double mean = 0.0;
  for (double v : t) mean += v;
  mean /= static_cast<double>(t.size());

  bool constant = std::all_of(t.begin(), t.end(), [&](double v) {
    return std::abs(v - tmax) <= 1e-12 * tmax;
  });
  if (constant) {
    if (std::abs(target - 1.0) <= rel_tol) return trace;
    fail(ErrorCode::unreachable_target,
         "pmr_rescale: constant trace can only have ratio 1");
  }
  if (std::abs(target - 1.0) <= 1e-12) {
    // Flatten outright: every slot carries the mean, per-chain mix kept.
    TraceSeries out = trace;
    for (int k = 0; k < out.horizon; ++k) {
      if (t[k] <= 0.0)
        fail(ErrorCode::unreachable_target,
             "pmr_rescale: zero slots cannot be flattened");
      double f = mean / t[k];
      for (int s = 0; s < out.num_chains; ++s) out.at(s, k) *= f;
    }
    return out;
  }

  // PMR(gamma) is nondecreasing; bracket the target then bisect.
  double lo = 1e-9, hi = 1.0;
  if (pmr_of_power(t, tmax, lo) > target)
    fail(ErrorCode::unreachable_target,
         "pmr_rescale: target below attainable range");
  while (pmr_of_power(t, tmax, hi) < target) {
    hi *= 2.0;
    if (hi > 1e6)
      fail(ErrorCode::unreachable_target,
           "pmr_rescale: target above attainable range");
  }
  double gamma = hi;
  for (int it = 0; it < 200; ++it) {
    gamma = 0.5 * (lo + hi);
    double p = pmr_of_power(t, tmax, gamma);
    if (std::abs(p - target) <= rel_tol * target) break;
    (p < target ? lo : hi) = gamma;
  }
  if (std::abs(pmr_of_power(t, tmax, gamma) - target) > rel_tol * target)
    fail(ErrorCode::unreachable_target,
         "pmr_rescale: root search did not converge");

  // Reshape totals as K * (T_k/T_max)^gamma with K preserving the mean.
  double denom = 0.0;
  for (double v : t) denom += std::pow(v / tmax, gamma);
  double K = mean * static_cast<double>(t.size()) / denom;
  TraceSeries out = trace;
  for (int k = 0; k < out.horizon; ++k) {
    double reshaped = K * std::pow(t[k] / tmax, gamma);
    double f = t[k] > 0.0 ? reshaped / t[k] : 0.0;
    for (int s = 0; s < out.num_chains; ++s) out.at(s, k) *= f;
  }
  return out;
}

TraceSeries synthesize_trace(const SyntheticSpec& spec) {
  if (spec.num_chains < 1 || spec.horizon < 1 || spec.slots_per_day < 1)
    fail(ErrorCode::invalid_argument, "synthesize_trace: bad dimensions");
  if (spec.daily_amplitude < 0.0 || spec.daily_amplitude >= 1.0 ||
      spec.weekly_amplitude < 0.0 || spec.weekly_amplitude >= 1.0 ||
      spec.noise_sigma < 0.0)
    fail(ErrorCode::invalid_argument, "synthesize_trace: bad shape params");

  std::mt19937_64 rng(spec.seed);
  TraceSeries tr(spec.num_chains, spec.horizon);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int s = 0; s < spec.num_chains; ++s) {
    double phase = two_pi * s / spec.num_chains;
    for (int k = 0; k < spec.horizon; ++k) {
      double day_pos = static_cast<double>(k % spec.slots_per_day) /
                       spec.slots_per_day;
      double week_pos = static_cast<double>(k) / (7.0 * spec.slots_per_day);
      double daily = 1.0 + spec.daily_amplitude *
                               std::sin(two_pi * day_pos + phase);
      double weekly =
          1.0 + spec.weekly_amplitude * std::sin(two_pi * week_pos);
      // Box-Muller keeps the stream implementation-independent.
      double u1 = uniform01(rng), u2 = uniform01(rng);
      double z = std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(two_pi * u2);
      tr.at(s, k) = daily * weekly * std::exp(spec.noise_sigma * z);
    }
  }
  if (spec.pmr > 0.0) tr = pmr_rescale(tr, spec.pmr);
  return scale_to_peak(std::move(tr), spec.peak_mbps);
}

} // namespace vnfs
