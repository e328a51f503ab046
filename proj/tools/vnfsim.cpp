// vnfsim: command-line driver for the vnfscale library.
//
// Deliberately speaks only the public C API (vnfscale/vnfscale.h), so it
// doubles as a living example of driving the library from a C-level binding.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vnfscale/vnfscale.h"

namespace {

int die(vnfs_status s, const char* where) {
  std::fprintf(stderr, "vnfsim: %s: %s\n", where, vnfs_last_error());
  return static_cast<int>(s);
}

bool parse_seed_range(const std::string& text, uint64_t& begin,
                      uint64_t& end) {
  size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      begin = end = std::stoull(text);
    } else {
      begin = std::stoull(text.substr(0, dots));
      end = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return end >= begin;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path);
  if (!in) {
    ok = false;
    return {};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  ok = true;
  return ss.str();
}

struct SimulateArgs {
  std::string config_path;
  std::string trace = "synthetic";
  std::string algo = "ssc_online";
  std::string seeds = "1..1";
  std::string out_dir;
  std::string preplan_path;
  double pmr = 0.0;
  double deploy_op_ratio = 0.0;
  double peak = 0.0;
  int chain = 1;
  int threads = 0;
  bool no_verify = false;
  long long rate_step = 1;
  // synthetic-trace shape
  int synth_chains = 0;  // 0 = match config
  int horizon = 2016;
  int slots_per_day = 288;
  double daily_amplitude = 0.6;
  double weekly_amplitude = 0.15;
  double noise_sigma = 0.3;
  uint64_t trace_seed = 1;
};

int cmd_simulate(const SimulateArgs& a) {
  uint64_t seed_begin = 0, seed_end = 0;
  if (!parse_seed_range(a.seeds, seed_begin, seed_end)) {
    std::fprintf(stderr, "vnfsim: bad --seeds '%s' (want N or A..B)\n",
                 a.seeds.c_str());
    return 2;
  }

  vnfs_config* cfg = nullptr;
  if (vnfs_status s = vnfs_config_load(a.config_path.c_str(), &cfg))
    return die(s, "loading config");

  vnfs_trace* tr = nullptr;
  vnfs_status s = VNFS_OK;
  if (a.trace == "synthetic") {
    int chains = a.synth_chains;
    if (chains <= 0) vnfs_config_counts(cfg, nullptr, &chains, nullptr);
    double peak = a.peak > 0.0 ? a.peak : 400000.0;
    std::ostringstream params;
    params << "{\"num_chains\":" << chains << ",\"horizon\":" << a.horizon
           << ",\"slots_per_day\":" << a.slots_per_day
           << ",\"daily_amplitude\":" << a.daily_amplitude
           << ",\"weekly_amplitude\":" << a.weekly_amplitude
           << ",\"noise_sigma\":" << a.noise_sigma << ",\"peak_mbps\":" << peak
           << ",\"pmr\":" << a.pmr << ",\"seed\":" << a.trace_seed << "}";
    s = vnfs_trace_synthesize(params.str().c_str(), &tr);
    if (s) {
      vnfs_config_free(cfg);
      return die(s, "synthesizing trace");
    }
  } else {
    s = vnfs_trace_load_csv(a.trace.c_str(), 0, &tr);
    if (s) {
      vnfs_config_free(cfg);
      return die(s, "loading trace");
    }
    if (a.pmr > 0.0) {
      vnfs_trace* reshaped = nullptr;
      s = vnfs_trace_rescale_pmr(tr, a.pmr, &reshaped);
      vnfs_trace_free(tr);
      if (s) {
        vnfs_config_free(cfg);
        return die(s, "reshaping trace");
      }
      tr = reshaped;
    }
    if (a.peak > 0.0) {
      vnfs_trace* scaled = nullptr;
      s = vnfs_trace_scale_peak(tr, a.peak, &scaled);
      vnfs_trace_free(tr);
      if (s) {
        vnfs_config_free(cfg);
        return die(s, "scaling trace");
      }
      tr = scaled;
    }
  }

  vnfs_preplan* plan = nullptr;
  if (!a.preplan_path.empty()) {
    bool ok = false;
    std::string text = read_file(a.preplan_path, ok);
    if (!ok) {
      std::fprintf(stderr, "vnfsim: cannot read %s\n", a.preplan_path.c_str());
      vnfs_trace_free(tr);
      vnfs_config_free(cfg);
      return 2;
    }
    if ((s = vnfs_preplan_from_json(text.c_str(), &plan))) {
      vnfs_trace_free(tr);
      vnfs_config_free(cfg);
      return die(s, "loading pre-plan");
    }
  }

  std::ostringstream opts;
  opts << "{\"algo\":\"" << a.algo << "\",\"chain_id\":" << a.chain
       << ",\"seed_begin\":" << seed_begin << ",\"seed_end\":" << seed_end
       << ",\"deploy_op_ratio\":" << a.deploy_op_ratio
       << ",\"threads\":" << a.threads
       << ",\"verify\":" << (a.no_verify ? "false" : "true")
       << ",\"preplan_rate_step\":" << a.rate_step << "}";

  vnfs_results* res = nullptr;
  s = vnfs_simulate(cfg, tr, opts.str().c_str(), plan, &res);
  vnfs_preplan_free(plan);
  vnfs_trace_free(tr);
  vnfs_config_free(cfg);
  if (s) return die(s, "simulating");

  if ((s = vnfs_results_write(res, a.out_dir.c_str()))) {
    vnfs_results_free(res);
    return die(s, "writing reports");
  }
  size_t count = 0;
  vnfs_results_count(res, &count);
  for (size_t k = 0; k < count; ++k) {
    double total = 0.0;
    uint64_t digest = 0;
    size_t violations = 0;
    vnfs_results_total_cost(res, k, &total);
    vnfs_results_digest(res, k, &digest);
    vnfs_results_violations(res, k, &violations);
    std::printf("%s seed=%" PRIu64 " total=%.6f digest=%016" PRIx64
                " violations=%zu\n",
                a.algo.c_str(), seed_begin + k, total, digest, violations);
  }
  std::printf("wrote %zu run(s) to %s\n", count, a.out_dir.c_str());
  vnfs_results_free(res);
  return 0;
}

int cmd_preplan(const std::string& config_path, int chain, long long rate_step,
                const std::string& out_path) {
  vnfs_config* cfg = nullptr;
  if (vnfs_status s = vnfs_config_load(config_path.c_str(), &cfg))
    return die(s, "loading config");
  vnfs_preplan* plan = nullptr;
  vnfs_status s = vnfs_preplan_compute(cfg, chain, rate_step, &plan);
  vnfs_config_free(cfg);
  if (s) return die(s, "pre-planning");

  long long alpha = 0;
  vnfs_preplan_alpha_max(plan, &alpha);
  char* text = nullptr;
  if ((s = vnfs_preplan_to_json(plan, &text))) {
    vnfs_preplan_free(plan);
    return die(s, "serializing pre-plan");
  }
  std::ofstream out(out_path);
  if (!out) {
    std::fprintf(stderr, "vnfsim: cannot write %s\n", out_path.c_str());
    vnfs_string_free(text);
    vnfs_preplan_free(plan);
    return 2;
  }
  out << text << '\n';
  vnfs_string_free(text);
  vnfs_preplan_free(plan);
  std::printf("alpha_max=%lld written to %s\n", alpha, out_path.c_str());
  return 0;
}

int cmd_report(const std::string& in_dir, const std::string& emit) {
  char* text = nullptr;
  if (vnfs_status s = vnfs_report(in_dir.c_str(), emit.c_str(), &text))
    return die(s, "aggregating reports");
  std::fputs(text, stdout);
  std::fputc('\n', stdout);
  vnfs_string_free(text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"vnfsim: simulate online scaling of VNF service chains"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a scaling policy");
  simulate->add_option("--config", sim.config_path, "config JSON")->required();
  simulate->add_option("--trace", sim.trace,
                       "trace CSV path, or 'synthetic' (default)");
  simulate->add_option("--algo", sim.algo,
                       "ssc_online|msc_online|static|myopic|offline_lb|"
                       "exhaustive");
  simulate->add_option("--seeds", sim.seeds, "seed or inclusive range A..B");
  simulate->add_option("--pmr", sim.pmr,
                       "reshape trace to this peak-to-mean ratio");
  simulate->add_option("--deploy-op-ratio", sim.deploy_op_ratio,
                       "override deploy_cost = ratio * op_cost");
  simulate->add_option("--out", sim.out_dir, "report directory")->required();
  simulate->add_option("--chain", sim.chain, "chain driven by ssc_online");
  simulate->add_option("--peak", sim.peak, "rescale trace peak (Mbps)");
  simulate->add_option("--preplan", sim.preplan_path, "reuse pre-plan JSON");
  simulate->add_option("--threads", sim.threads, "worker pool size");
  simulate->add_flag("--no-verify", sim.no_verify,
                     "skip per-slot invariant checks");
  simulate->add_option("--rate-step", sim.rate_step,
                       "pre-plan search granularity (Mbps)");
  simulate->add_option("--horizon", sim.horizon, "synthetic: slots");
  simulate->add_option("--synth-chains", sim.synth_chains,
                       "synthetic: chain count (default: match config)");
  simulate->add_option("--slots-per-day", sim.slots_per_day,
                       "synthetic: slots per day");
  simulate->add_option("--daily-amplitude", sim.daily_amplitude,
                       "synthetic: diurnal swing in [0,1)");
  simulate->add_option("--weekly-amplitude", sim.weekly_amplitude,
                       "synthetic: weekly swing in [0,1)");
  simulate->add_option("--noise-sigma", sim.noise_sigma,
                       "synthetic: lognormal noise sigma");
  simulate->add_option("--trace-seed", sim.trace_seed, "synthetic: seed");

  std::string pp_config, pp_out;
  int pp_chain = 1;
  long long pp_step = 1;
  CLI::App* preplan =
      app.add_subcommand("preplan", "compute a chain's pre-plan");
  preplan->add_option("--config", pp_config, "config JSON")->required();
  preplan->add_option("--chain", pp_chain, "chain id");
  preplan->add_option("--rate-step", pp_step, "search granularity (Mbps)");
  preplan->add_option("--out", pp_out, "output JSON path")->required();

  std::string rep_in, rep_emit = "csv";
  CLI::App* report = app.add_subcommand("report", "aggregate run reports");
  report->add_option("--in", rep_in, "report directory")->required();
  report->add_option("--emit", rep_emit, "csv|json");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) return cmd_simulate(sim);
  if (preplan->parsed()) return cmd_preplan(pp_config, pp_chain, pp_step, pp_out);
  if (report->parsed()) return cmd_report(rep_in, rep_emit);
  return 0;
}
