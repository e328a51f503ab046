#include "vnfscale/online_ssc.hpp"

#include <cmath>

#include "vnfscale/errors.hpp"
#include "vnfscale/rng.hpp"

namespace vnfs {

std::vector<double> deadline_pmf(int delta) {
  if (delta < 1)
    fail(ErrorCode::invalid_argument, "deadline_pmf: delta must be >= 1");
  if (delta == 1) return {1.0};
  double q = (delta - 1.0) / delta;
  // Normalizer: sum_{j=1..delta} q^(delta-j) = (1-q^delta)/(1-q)
  //                                          = delta*(1-q^delta).
  double norm = delta * (1.0 - std::pow(q, delta));
  std::vector<double> pmf(delta);
  for (int j = 1; j <= delta; ++j) pmf[j - 1] = std::pow(q, delta - j) / norm;
  return pmf;
}

int sample_deadline(int delta, std::mt19937_64& rng) {
  if (delta == 1) {
    rng();  // keep one-draw-per-sample so streams stay aligned
    return 1;
  }
  std::vector<double> pmf = deadline_pmf(delta);
  double u = uniform01(rng);
  double acc = 0.0;
  for (int j = 1; j <= delta; ++j) {
    acc += pmf[j - 1];
    if (u < acc) return j;
  }
  return delta;  // guard against accumulated rounding at u ~ 1
}

SscState::SscState(const Config& cfg, int chain_id, PrePlan plan,
                   uint64_t seed)
    : plan_(std::move(plan)), rng_(seed) {
  if (chain_id < 1 || chain_id > cfg.num_chains())
    fail(ErrorCode::invalid_argument, "ssc: unknown chain id");
  int I = cfg.num_types();
  if (static_cast<int>(plan_.multisets.size()) != I ||
      plan_.max_placement.types != I ||
      plan_.max_placement.servers != cfg.cluster.num_servers)
    fail(ErrorCode::invalid_argument, "ssc: pre-plan does not match config");
  delta_.resize(I);
  for (int i = 0; i < I; ++i) delta_[i] = cfg.types[i].break_even();
  running_.resize(I);
  idle_.resize(I);
  n_prev_.assign(I, 0);
  deployed_.assign(I, 0);
  x_ = Placement(cfg.cluster.num_servers, I);
}

const Placement& SscState::step(const DemandVector& need) {
  int I = x_.types;
  if (static_cast<int>(need.counts.size()) != I)
    fail(ErrorCode::invalid_argument, "ssc: demand dimension mismatch");

  for (int i = 0; i < I; ++i) {
    long long n = need.counts[i];
    if (n < 0) fail(ErrorCode::invalid_argument, "ssc: negative demand");
    auto& run = running_[i];
    auto& idl = idle_[i];
    deployed_[i] = 0;
    long long have = static_cast<long long>(run.size() + idl.size());

    if (n >= have) {
      // Scale out: every idle instance resumes, the shortfall launches on
      // reserved servers (most recently freed first).
      while (!idl.empty()) {
        run.push_back(idl.back().server);
        idl.pop_back();
      }
      long long k = n - have;
      if (k > 0) {
        std::vector<int> ids = plan_.multisets[i].eject(static_cast<int>(k));
        for (int id : ids) {
          ++x_.at(id, i);
          run.push_back(id);
        }
        deployed_[i] = k;
      }
    } else if (n >= static_cast<long long>(run.size())) {
      // Mild rebound: wake the most recently idled instances only.
      while (static_cast<long long>(run.size()) < n) {
        run.push_back(idl.back().server);
        idl.pop_back();
      }
    } else {
      // Scale in: park the most recently activated instances with a randomized
      // removal deadline (fresh draw per idling episode).
      while (static_cast<long long>(run.size()) > n) {
        int server = run.back();
        run.pop_back();
        idl.push_back({server, 0, sample_deadline(delta_[i], rng_)});
      }
    }

    // Age every idle instance; expired ones leave before the slot is billed,
    // returning their reservation for future launches.
    size_t w = 0;
    for (size_t rpos = 0; rpos < idl.size(); ++rpos) {
      IdleRec rec = idl[rpos];
      ++rec.counter;
      if (rec.counter >= rec.deadline) {
        --x_.at(rec.server, i);
        plan_.multisets[i].insert(rec.server);
      } else {
        idl[w++] = rec;
      }
    }
    idl.resize(w);
    n_prev_[i] = n;
  }
  ++slot_;
  return x_;
}

} // namespace vnfs
