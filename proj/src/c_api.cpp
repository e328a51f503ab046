#include "vnfscale/vnfscale.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vnfscale/config.hpp"
#include "vnfscale/errors.hpp"
#include "vnfscale/harness.hpp"
#include "vnfscale/preplan.hpp"
#include "vnfscale/trace.hpp"

using json = nlohmann::json;

struct vnfs_config {
  vnfs::Config impl;
};
struct vnfs_trace {
  vnfs::TraceSeries impl;
};
struct vnfs_preplan {
  vnfs::PrePlan impl;
};
struct vnfs_results {
  std::vector<vnfs::RunResult> runs;
};

namespace {

thread_local std::string g_last_error;

vnfs_status map_code(vnfs::ErrorCode c) {
  switch (c) {
    case vnfs::ErrorCode::ok: return VNFS_OK;
    case vnfs::ErrorCode::invalid_argument: return VNFS_ERR_INVALID;
    case vnfs::ErrorCode::config: return VNFS_ERR_CONFIG;
    case vnfs::ErrorCode::trace: return VNFS_ERR_TRACE;
    case vnfs::ErrorCode::io: return VNFS_ERR_IO;
    case vnfs::ErrorCode::pattern_guard: return VNFS_ERR_PATTERN_GUARD;
    case vnfs::ErrorCode::scale_guard: return VNFS_ERR_SCALE_GUARD;
    case vnfs::ErrorCode::envelope: return VNFS_ERR_ENVELOPE;
    case vnfs::ErrorCode::overload: return VNFS_ERR_OVERLOAD;
    case vnfs::ErrorCode::unreachable_target:
      return VNFS_ERR_UNREACHABLE_TARGET;
  }
  return VNFS_ERR_INTERNAL;
}

template <typename F>
vnfs_status guarded(F&& f) {
  try {
    f();
    return VNFS_OK;
  } catch (const vnfs::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VNFS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return VNFS_ERR_INTERNAL;
  }
}

vnfs_status require(bool ok, const char* what) {
  if (ok) return VNFS_OK;
  g_last_error = what;
  return VNFS_ERR_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

} // namespace

extern "C" {

const char* vnfs_last_error(void) { return g_last_error.c_str(); }

void vnfs_string_free(char* s) { std::free(s); }

vnfs_status vnfs_config_load(const char* path, vnfs_config** out) {
  if (vnfs_status s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new vnfs_config{vnfs::load_config(path)}; });
}

vnfs_status vnfs_config_parse(const char* json_text, vnfs_config** out) {
  if (vnfs_status s = require(json_text && out, "null argument")) return s;
  return guarded(
      [&] { *out = new vnfs_config{vnfs::parse_config(json_text)}; });
}

vnfs_status vnfs_config_counts(const vnfs_config* cfg, int* types, int* chains,
                               int* servers) {
  if (vnfs_status s = require(cfg != nullptr, "null config")) return s;
  if (types) *types = cfg->impl.num_types();
  if (chains) *chains = cfg->impl.num_chains();
  if (servers) *servers = cfg->impl.cluster.num_servers;
  return VNFS_OK;
}

void vnfs_config_free(vnfs_config* cfg) { delete cfg; }

vnfs_status vnfs_trace_load_csv(const char* path, int expected_chains,
                                vnfs_trace** out) {
  if (vnfs_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    *out = new vnfs_trace{vnfs::load_trace_csv(path, expected_chains)};
  });
}

vnfs_status vnfs_trace_synthesize(const char* params_json, vnfs_trace** out) {
  if (vnfs_status s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    vnfs::SyntheticSpec spec;
    if (params_json && *params_json) {
      json p = json::parse(params_json);
      spec.num_chains = p.value("num_chains", spec.num_chains);
      spec.horizon = p.value("horizon", spec.horizon);
      spec.slots_per_day = p.value("slots_per_day", spec.slots_per_day);
      spec.daily_amplitude = p.value("daily_amplitude", spec.daily_amplitude);
      spec.weekly_amplitude =
          p.value("weekly_amplitude", spec.weekly_amplitude);
      spec.noise_sigma = p.value("noise_sigma", spec.noise_sigma);
      spec.peak_mbps = p.value("peak_mbps", spec.peak_mbps);
      spec.pmr = p.value("pmr", spec.pmr);
      spec.seed = p.value("seed", spec.seed);
    }
    *out = new vnfs_trace{vnfs::synthesize_trace(spec)};
  });
}

vnfs_status vnfs_trace_save_csv(const vnfs_trace* tr, const char* path) {
  if (vnfs_status s = require(tr && path, "null argument")) return s;
  return guarded([&] { vnfs::save_trace_csv(tr->impl, path); });
}

vnfs_status vnfs_trace_dims(const vnfs_trace* tr, int* chains, int* slots) {
  if (vnfs_status s = require(tr != nullptr, "null trace")) return s;
  if (chains) *chains = tr->impl.num_chains;
  if (slots) *slots = tr->impl.horizon;
  return VNFS_OK;
}

vnfs_status vnfs_trace_pmr(const vnfs_trace* tr, double* out) {
  if (vnfs_status s = require(tr && out, "null argument")) return s;
  return guarded([&] { *out = vnfs::peak_to_mean(tr->impl); });
}

vnfs_status vnfs_trace_rescale_pmr(const vnfs_trace* tr, double target,
                                   vnfs_trace** out) {
  if (vnfs_status s = require(tr && out, "null argument")) return s;
  return guarded(
      [&] { *out = new vnfs_trace{vnfs::pmr_rescale(tr->impl, target)}; });
}

vnfs_status vnfs_trace_scale_peak(const vnfs_trace* tr, double peak,
                                  vnfs_trace** out) {
  if (vnfs_status s = require(tr && out, "null argument")) return s;
  return guarded(
      [&] { *out = new vnfs_trace{vnfs::scale_to_peak(tr->impl, peak)}; });
}

void vnfs_trace_free(vnfs_trace* tr) { delete tr; }

vnfs_status vnfs_preplan_compute(const vnfs_config* cfg, int chain_id,
                                 long long rate_step, vnfs_preplan** out) {
  if (vnfs_status s = require(cfg && out, "null argument")) return s;
  return guarded([&] {
    vnfs::PreplanOptions opts;
    opts.rate_step = rate_step;
    *out = new vnfs_preplan{vnfs::preplan(cfg->impl, chain_id, opts)};
  });
}

vnfs_status vnfs_preplan_alpha_max(const vnfs_preplan* plan, long long* out) {
  if (vnfs_status s = require(plan && out, "null argument")) return s;
  *out = plan->impl.alpha_max;
  return VNFS_OK;
}

vnfs_status vnfs_preplan_to_json(const vnfs_preplan* plan, char** out) {
  if (vnfs_status s = require(plan && out, "null argument")) return s;
  return guarded([&] { *out = dup_string(plan->impl.to_json()); });
}

vnfs_status vnfs_preplan_from_json(const char* text, vnfs_preplan** out) {
  if (vnfs_status s = require(text && out, "null argument")) return s;
  return guarded(
      [&] { *out = new vnfs_preplan{vnfs::PrePlan::from_json(text)}; });
}

void vnfs_preplan_free(vnfs_preplan* plan) { delete plan; }

vnfs_status vnfs_simulate(const vnfs_config* cfg, const vnfs_trace* tr,
                          const char* options_json, const vnfs_preplan* plan,
                          vnfs_results** out) {
  if (vnfs_status s = require(cfg && tr && out, "null argument")) return s;
  return guarded([&] {
    vnfs::ExperimentSpec spec;
    spec.config = cfg->impl;
    spec.trace = tr->impl;
    if (options_json && *options_json) {
      json p = json::parse(options_json);
      spec.algo = p.value("algo", spec.algo);
      spec.chain_id = p.value("chain_id", spec.chain_id);
      spec.seed_begin = p.value("seed_begin", spec.seed_begin);
      spec.seed_end = p.value("seed_end", spec.seed_begin);
      spec.deploy_op_ratio = p.value("deploy_op_ratio", spec.deploy_op_ratio);
      spec.threads = p.value("threads", spec.threads);
      spec.verify = p.value("verify", spec.verify);
      spec.preplan.rate_step =
          p.value("preplan_rate_step", spec.preplan.rate_step);
    }
    if (plan) spec.preplan_cache = plan->impl;
    *out = new vnfs_results{vnfs::run(spec)};
  });
}

vnfs_status vnfs_results_count(const vnfs_results* res, size_t* out) {
  if (vnfs_status s = require(res && out, "null argument")) return s;
  *out = res->runs.size();
  return VNFS_OK;
}

vnfs_status vnfs_results_total_cost(const vnfs_results* res, size_t idx,
                                    double* out) {
  if (vnfs_status s = require(res && out, "null argument")) return s;
  if (vnfs_status s = require(idx < res->runs.size(), "index out of range"))
    return s;
  *out = res->runs[idx].cost.totals.total();
  return VNFS_OK;
}

vnfs_status vnfs_results_digest(const vnfs_results* res, size_t idx,
                                uint64_t* out) {
  if (vnfs_status s = require(res && out, "null argument")) return s;
  if (vnfs_status s = require(idx < res->runs.size(), "index out of range"))
    return s;
  *out = res->runs[idx].digest;
  return VNFS_OK;
}

vnfs_status vnfs_results_violations(const vnfs_results* res, size_t idx,
                                    size_t* out) {
  if (vnfs_status s = require(res && out, "null argument")) return s;
  if (vnfs_status s = require(idx < res->runs.size(), "index out of range"))
    return s;
  *out = res->runs[idx].violations.size();
  return VNFS_OK;
}

vnfs_status vnfs_results_to_json(const vnfs_results* res, size_t idx,
                                 char** out) {
  if (vnfs_status s = require(res && out, "null argument")) return s;
  if (vnfs_status s = require(idx < res->runs.size(), "index out of range"))
    return s;
  return guarded(
      [&] { *out = dup_string(vnfs::run_result_to_json(res->runs[idx])); });
}

vnfs_status vnfs_results_write(const vnfs_results* res, const char* out_dir) {
  if (vnfs_status s = require(res && out_dir, "null argument")) return s;
  return guarded([&] { vnfs::write_reports(res->runs, out_dir); });
}

void vnfs_results_free(vnfs_results* res) { delete res; }

vnfs_status vnfs_report(const char* in_dir, const char* emit, char** out) {
  if (vnfs_status s = require(in_dir && emit && out, "null argument"))
    return s;
  return guarded(
      [&] { *out = dup_string(vnfs::aggregate_reports(in_dir, emit)); });
}

} // extern "C"
