#include "vnfscale/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vnfscale/binpack.hpp"
#include "vnfscale/errors.hpp"
#include "vnfscale/model.hpp"
#include "vnfscale/offline.hpp"
#include "vnfscale/online_msc.hpp"
#include "vnfscale/online_ssc.hpp"

namespace vnfs {

namespace fs = std::filesystem;
using json = nlohmann::json;

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

void feed_u64(uint64_t& h, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  h = fnv1a64(b, 8, h);
}

void digest_slot(uint64_t& h, const Placement& x) {
  feed_u64(h, 0xffffffffffffffffULL);  // slot separator
  for (int u = 0; u < x.servers; ++u)
    for (int i = 0; i < x.types; ++i)
      if (int c = x.at(u, i); c != 0) {
        feed_u64(h, static_cast<uint64_t>(u));
        feed_u64(h, static_cast<uint64_t>(i));
        feed_u64(h, static_cast<uint64_t>(c));
      }
}

void digest_counts(uint64_t& h, const std::vector<long long>& counts) {
  feed_u64(h, 0xffffffffffffffffULL);
  for (size_t i = 0; i < counts.size(); ++i)
    if (counts[i] != 0) {
      feed_u64(h, static_cast<uint64_t>(i));
      feed_u64(h, static_cast<uint64_t>(counts[i]));
    }
}

Config effective_config(const ExperimentSpec& spec) {
  Config cfg = spec.config;
  if (spec.deploy_op_ratio > 0.0)
    for (VnfType& t : cfg.types)
      t.deploy_cost = spec.deploy_op_ratio * t.op_cost;
  return cfg;
}

std::string code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::envelope: return "envelope";
    case ErrorCode::overload: return "overload";
    case ErrorCode::pattern_guard: return "pattern_guard";
    case ErrorCode::scale_guard: return "scale_guard";
    default: return "error";
  }
}

struct SlotVerifier {
  const Config& cfg;
  const Placement* envelope = nullptr;  // ssc only: pre-planned ceiling
  std::vector<ViolationEvent>& out;

  void check(int slot, const Placement& x, const Placement& prev,
             const DemandVector& need,
             const std::vector<long long>* deployed) {
    if (!check_coverage(x, need))
      out.push_back({slot, "coverage", "placed counts below demand"});
    if (!check_capacity(x, cfg.types, cfg.cluster))
      out.push_back({slot, "capacity", "server over capacity"});
    if (envelope) {
      for (int u = 0; u < x.servers; ++u)
        for (int i = 0; i < x.types; ++i)
          if (x.at(u, i) > envelope->at(u, i)) {
            out.push_back({slot, "migration",
                           "server " + std::to_string(u) +
                               " exceeds its pre-planned share of type " +
                               std::to_string(i + 1)});
            return;
          }
    }
    if (deployed) {
      // Per-server launches must equal the aggregate count increase: scaling
      // never tears down one server while launching on another.
      for (int i = 0; i < x.types; ++i) {
        long long per_server = 0, agg_cur = 0, agg_prev = 0;
        for (int u = 0; u < x.servers; ++u) {
          int d = x.at(u, i) - prev.at(u, i);
          if (d > 0) per_server += d;
          agg_cur += x.at(u, i);
          agg_prev += prev.at(u, i);
        }
        long long agg = std::max<long long>(agg_cur - agg_prev, 0);
        if (per_server != agg || per_server != (*deployed)[i]) {
          out.push_back({slot, "deployment",
                         "per-server launches of type " + std::to_string(i + 1) +
                             " diverge from aggregate growth"});
          return;
        }
      }
    }
  }
};

void account_slot(RunResult& r, const Config& cfg,
                  const std::vector<long long>& demanded,
                  const std::vector<long long>& placed, double deploy_cost) {
  SlotCost c;
  for (int i = 0; i < cfg.num_types(); ++i)
    c.operational += static_cast<double>(placed[i]) * cfg.types[i].op_cost;
  c.deployment = deploy_cost;
  r.cost.add(c);
  r.demanded.push_back(demanded);
  r.placed.push_back(placed);
  ++r.slots;
}

// Remove instances a maximal-pattern packing provides beyond what is needed,
// highest server index first, so the static baseline pays for exactly the
// peak demand.
void trim_to(Placement& x, const DemandVector& need) {
  std::vector<long long> have = x.column_sums();
  for (int i = 0; i < x.types; ++i) {
    long long excess = have[i] - need.counts[i];
    for (int u = x.servers - 1; u >= 0 && excess > 0; --u) {
      int take = static_cast<int>(std::min<long long>(excess, x.at(u, i)));
      x.at(u, i) -= take;
      excess -= take;
    }
  }
}

void run_ssc(const ExperimentSpec& spec, const Config& cfg, uint64_t seed,
             RunResult& r) {
  std::vector<DemandVector> series =
      demand_series_for_chain(cfg, spec.chain_id, spec.trace);
  PrePlan plan = spec.preplan_cache
                     ? *spec.preplan_cache
                     : preplan(cfg, spec.chain_id, spec.preplan);
  Placement envelope = plan.max_placement;
  SscState st(cfg, spec.chain_id, std::move(plan), seed);

  SlotVerifier verifier{cfg, &envelope, r.violations};
  Placement prev(cfg.cluster.num_servers, cfg.num_types());
  for (size_t t = 0; t < series.size(); ++t) {
    const Placement& x = st.step(series[t]);
    std::vector<long long> placed = x.column_sums();
    double dep = 0.0;
    for (int i = 0; i < cfg.num_types(); ++i)
      dep += static_cast<double>(st.last_deployments()[i]) *
             cfg.types[i].deploy_cost;
    account_slot(r, cfg, series[t].counts, placed, dep);
    digest_slot(r.digest, x);
    if (spec.verify) {
      verifier.check(static_cast<int>(t) + 1, x, prev, series[t],
                     &st.last_deployments());
      prev = x;
    }
  }
}

void run_msc(const ExperimentSpec& spec, const Config& cfg, RunResult& r) {
  std::vector<DemandVector> series = demand_series(cfg, spec.trace);
  MscState st(cfg);
  SlotVerifier verifier{cfg, nullptr, r.violations};
  Placement prev(cfg.cluster.num_servers, cfg.num_types());
  for (size_t t = 0; t < series.size(); ++t) {
    const Placement& x = st.step(series[t]);
    account_slot(r, cfg, series[t].counts, x.column_sums(),
                 st.last_deploy_cost());
    digest_slot(r.digest, x);
    if (spec.verify) {
      verifier.check(static_cast<int>(t) + 1, x, prev, series[t], nullptr);
      prev = x;
    }
  }
}

void run_static(const ExperimentSpec& spec, const Config& cfg, RunResult& r) {
  std::vector<DemandVector> series = demand_series(cfg, spec.trace);
  DemandVector peak;
  peak.counts.assign(cfg.num_types(), 0);
  for (const DemandVector& d : series)
    for (int i = 0; i < cfg.num_types(); ++i)
      peak.counts[i] = std::max(peak.counts[i], d.counts[i]);
  std::optional<Packing> packed = pack(peak, cfg.types, cfg.cluster);
  if (!packed)
    fail(ErrorCode::overload, "static: peak demand does not fit the cluster");
  Placement x = to_placement(*packed, cfg.cluster.num_servers, cfg.num_types());
  trim_to(x, peak);

  SlotVerifier verifier{cfg, nullptr, r.violations};
  Placement prev(cfg.cluster.num_servers, cfg.num_types());
  std::vector<long long> placed = x.column_sums();
  for (size_t t = 0; t < series.size(); ++t) {
    double dep = 0.0;
    if (t == 0)
      for (int i = 0; i < cfg.num_types(); ++i)
        dep += static_cast<double>(placed[i]) * cfg.types[i].deploy_cost;
    account_slot(r, cfg, series[t].counts, placed, dep);
    digest_slot(r.digest, x);
    if (spec.verify) {
      verifier.check(static_cast<int>(t) + 1, x, prev, series[t], nullptr);
      prev = x;
    }
  }
}

void run_offline_lb(const ExperimentSpec& spec, const Config& cfg,
                    RunResult& r) {
  std::vector<DemandVector> series = demand_series(cfg, spec.trace);
  int T = static_cast<int>(series.size());
  int I = cfg.num_types();
  std::vector<std::vector<long long>> x(T, std::vector<long long>(I, 0));
  std::vector<long long> n(T);
  for (int i = 0; i < I; ++i) {
    for (int t = 0; t < T; ++t) n[t] = series[t].counts[i];
    TypeSchedule s = offline_type_schedule(n, cfg.types[i].op_cost,
                                           cfg.types[i].deploy_cost);
    for (int t = 0; t < T; ++t) x[t][i] = s.x[t];
  }
  std::vector<long long> prev(I, 0);
  for (int t = 0; t < T; ++t) {
    double dep = 0.0;
    for (int i = 0; i < I; ++i) {
      long long add = x[t][i] - prev[i];
      if (add > 0) dep += static_cast<double>(add) * cfg.types[i].deploy_cost;
    }
    account_slot(r, cfg, series[t].counts, x[t], dep);
    digest_counts(r.digest, x[t]);
    prev = x[t];
  }
}

void run_exhaustive(const ExperimentSpec& spec, const Config& cfg,
                    RunResult& r) {
  std::vector<DemandVector> series = demand_series(cfg, spec.trace);
  std::vector<Placement> traj;
  exhaustive_offline(cfg, series, {}, &traj);

  SlotVerifier verifier{cfg, nullptr, r.violations};
  Placement prev(cfg.cluster.num_servers, cfg.num_types());
  for (size_t t = 0; t < traj.size(); ++t) {
    SlotCost sc = slot_cost(traj[t], prev, cfg.types);
    account_slot(r, cfg, series[t].counts, traj[t].column_sums(),
                 sc.deployment);
    digest_slot(r.digest, traj[t]);
    if (spec.verify)
      verifier.check(static_cast<int>(t) + 1, traj[t], prev, series[t],
                     nullptr);
    prev = traj[t];
  }
}

} // namespace

std::vector<DemandVector> demand_series(const Config& cfg,
                                        const TraceSeries& trace) {
  if (trace.num_chains != cfg.num_chains())
    fail(ErrorCode::invalid_argument,
         "demand_series: trace has " + std::to_string(trace.num_chains) +
             " chains, config has " + std::to_string(cfg.num_chains()));
  std::vector<DemandVector> out;
  out.reserve(trace.horizon);
  for (int t = 0; t < trace.horizon; ++t) {
    std::vector<double> rates = trace.slot_rates(t);
    out.push_back(demand(cfg.chains, cfg.types, rates));
  }
  return out;
}

std::vector<DemandVector> demand_series_for_chain(const Config& cfg,
                                                  int chain_id,
                                                  const TraceSeries& trace) {
  if (chain_id < 1 || chain_id > cfg.num_chains())
    fail(ErrorCode::invalid_argument, "demand_series_for_chain: bad chain id");
  if (chain_id > trace.num_chains)
    fail(ErrorCode::invalid_argument,
         "demand_series_for_chain: trace has no row for chain " +
             std::to_string(chain_id));
  std::vector<ServiceChain> one{cfg.chains[chain_id - 1]};
  std::vector<DemandVector> out;
  out.reserve(trace.horizon);
  for (int t = 0; t < trace.horizon; ++t) {
    double rate = trace.at(chain_id - 1, t);
    out.push_back(demand(one, cfg.types, std::span<const double>(&rate, 1)));
  }
  return out;
}

RunResult run_single(const ExperimentSpec& spec, uint64_t seed) {
  RunResult r;
  r.algo = spec.algo;
  r.seed = seed;
  Config cfg = effective_config(spec);
  auto start = std::chrono::steady_clock::now();
  try {
    if (spec.algo == "ssc_online") {
      run_ssc(spec, cfg, seed, r);
    } else if (spec.algo == "msc_online" || spec.algo == "myopic") {
      run_msc(spec, cfg, r);
    } else if (spec.algo == "static") {
      run_static(spec, cfg, r);
    } else if (spec.algo == "offline_lb") {
      run_offline_lb(spec, cfg, r);
    } else if (spec.algo == "exhaustive") {
      run_exhaustive(spec, cfg, r);
    } else {
      fail(ErrorCode::invalid_argument,
           "unknown algorithm '" + spec.algo + "'");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_argument) throw;
    // Runtime faults (overload, envelope breach) end the run with a partial
    // report instead of tearing down the whole experiment.
    r.completed = false;
    r.violations.push_back({r.slots + 1, code_name(e.code()), e.what()});
  }
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

std::vector<RunResult> run(const ExperimentSpec& spec) {
  if (spec.seed_end < spec.seed_begin)
    fail(ErrorCode::invalid_argument, "run: empty seed range");
  size_t count = static_cast<size_t>(spec.seed_end - spec.seed_begin) + 1;

  ExperimentSpec eff = spec;
  if (eff.algo == "ssc_online" && !eff.preplan_cache)
    eff.preplan_cache = preplan(effective_config(eff), eff.chain_id,
                                eff.preplan);

  std::vector<RunResult> results(count);
  unsigned hw = std::thread::hardware_concurrency();
  size_t workers = eff.threads > 0 ? static_cast<size_t>(eff.threads)
                                   : (hw > 0 ? hw : 1);
  workers = std::min(workers, count);

  if (workers <= 1) {
    for (size_t k = 0; k < count; ++k)
      results[k] = run_single(eff, eff.seed_begin + k);
    return results;
  }

  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1))
          results[k] = run_single(eff, eff.seed_begin + k);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

namespace {

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

json result_to_json_obj(const RunResult& r) {
  json j;
  j["algo"] = r.algo;
  j["seed"] = r.seed;
  j["slots"] = r.slots;
  j["completed"] = r.completed;
  j["wall_seconds"] = r.wall_seconds;
  j["operational_cost"] = r.cost.totals.operational;
  j["deployment_cost"] = r.cost.totals.deployment;
  j["total_cost"] = r.cost.totals.total();
  j["digest"] = hex64(r.digest);
  json v = json::array();
  for (const ViolationEvent& e : r.violations)
    v.push_back({{"slot", e.slot}, {"kind", e.kind}, {"detail", e.detail}});
  j["violations"] = v;
  return j;
}

} // namespace

std::string run_result_to_json(const RunResult& r) {
  return result_to_json_obj(r).dump(2);
}

std::string run_result_slots_csv(const RunResult& r) {
  std::ostringstream out;
  out.precision(17);
  int I = r.demanded.empty() ? 0 : static_cast<int>(r.demanded[0].size());
  out << "slot,op_cost,deploy_cost,total";
  for (int i = 1; i <= I; ++i) out << ",n_" << i;
  for (int i = 1; i <= I; ++i) out << ",x_" << i;
  out << '\n';
  for (int t = 0; t < r.slots; ++t) {
    const SlotCost& c = r.cost.per_slot[t];
    out << (t + 1) << ',' << c.operational << ',' << c.deployment << ','
        << c.total();
    for (int i = 0; i < I; ++i) out << ',' << r.demanded[t][i];
    for (int i = 0; i < I; ++i) out << ',' << r.placed[t][i];
    out << '\n';
  }
  return out.str();
}

void write_reports(const std::vector<RunResult>& results,
                   const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output dir: " + out_dir);

  // Keep entries from earlier invocations aimed at the same directory.
  json summary;
  summary["runs"] = json::array();
  fs::path sumpath = dir / "summary.json";
  if (fs::exists(sumpath)) {
    std::ifstream in(sumpath);
    try {
      json old = json::parse(in);
      for (json& e : old.at("runs"))
        summary["runs"].push_back(std::move(e));
    } catch (const json::exception&) {
      // A corrupt summary is rebuilt from scratch.
      summary["runs"] = json::array();
    }
  }

  for (const RunResult& r : results) {
    std::string stem = r.algo + "_seed" + std::to_string(r.seed);
    std::string run_file = "run_" + stem + ".json";
    std::string slots_file = "slots_" + stem + ".csv";
    {
      std::ofstream out(dir / run_file);
      if (!out) fail(ErrorCode::io, "cannot write " + run_file);
      out << run_result_to_json(r) << '\n';
    }
    {
      std::ofstream out(dir / slots_file);
      if (!out) fail(ErrorCode::io, "cannot write " + slots_file);
      out << run_result_slots_csv(r);
    }
    json entry = result_to_json_obj(r);
    entry["violations"] = r.violations.size();
    entry["run_file"] = run_file;
    entry["slots_file"] = slots_file;
    // Replace any stale entry for the same (algo, seed).
    json& runs = summary["runs"];
    bool replaced = false;
    for (json& e : runs) {
      if (e.value("algo", "") == r.algo &&
          e.value("seed", static_cast<uint64_t>(0)) == r.seed) {
        e = entry;
        replaced = true;
        break;
      }
    }
    if (!replaced) runs.push_back(entry);
  }
  std::ofstream out(sumpath);
  if (!out) fail(ErrorCode::io, "cannot write summary.json");
  out << summary.dump(2) << '\n';
}

std::string aggregate_reports(const std::string& in_dir,
                              const std::string& emit) {
  if (emit != "csv" && emit != "json")
    fail(ErrorCode::invalid_argument, "report: emit must be csv or json");
  fs::path sumpath = fs::path(in_dir) / "summary.json";
  std::ifstream in(sumpath);
  if (!in) fail(ErrorCode::io, "no summary.json under " + in_dir);
  json summary;
  try {
    summary = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("corrupt summary.json: ") + e.what());
  }
  std::vector<json> rows;
  for (const json& e : summary.value("runs", json::array()))
    rows.push_back(e);
  std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
    auto ka = std::make_pair(a.value("algo", ""),
                             a.value("seed", static_cast<uint64_t>(0)));
    auto kb = std::make_pair(b.value("algo", ""),
                             b.value("seed", static_cast<uint64_t>(0)));
    return ka < kb;
  });

  if (emit == "json") {
    json out = json::array();
    for (json& r : rows) out.push_back(std::move(r));
    return out.dump(2);
  }
  std::ostringstream out;
  out.precision(17);
  out << "algo,seed,slots,completed,op_cost,deploy_cost,total,digest,"
         "violations,wall_seconds\n";
  for (const json& r : rows) {
    out << r.value("algo", "") << ',' << r.value("seed", 0ULL) << ','
        << r.value("slots", 0) << ',' << (r.value("completed", false) ? 1 : 0)
        << ',' << r.value("operational_cost", 0.0) << ','
        << r.value("deployment_cost", 0.0) << ',' << r.value("total_cost", 0.0)
        << ',' << r.value("digest", "") << ',' << r.value("violations", 0)
        << ',' << r.value("wall_seconds", 0.0) << '\n';
  }
  return out.str();
}

} // namespace vnfs
