/* vnfscale: online scaling of VNF service chains - public C API.
 *
 * Every object is an opaque handle created/destroyed by this API; every call
 * returns a status code, with a thread-local human-readable message available
 * through vnfs_last_error(). Strings returned through char** are owned by the
 * caller and released with vnfs_string_free().
 */
#ifndef VNFSCALE_VNFSCALE_H
#define VNFSCALE_VNFSCALE_H

#include <stddef.h>
#include <stdint.h>

#if defined(VNFS_BUILDING_SHARED)
#define VNFS_API __attribute__((visibility("default")))
#else
#define VNFS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vnfs_status {
  VNFS_OK = 0,
  VNFS_ERR_INVALID = 1,            /* bad arguments or dimensions */
  VNFS_ERR_CONFIG = 2,             /* malformed configuration */
  VNFS_ERR_TRACE = 3,              /* malformed trace data */
  VNFS_ERR_IO = 4,                 /* file system failure */
  VNFS_ERR_PATTERN_GUARD = 5,      /* pattern enumeration over budget */
  VNFS_ERR_SCALE_GUARD = 6,        /* exhaustive oracle beyond toy sizes */
  VNFS_ERR_ENVELOPE = 7,           /* demand exceeded the pre-planned max */
  VNFS_ERR_OVERLOAD = 8,           /* demand does not fit the cluster */
  VNFS_ERR_UNREACHABLE_TARGET = 9, /* requested ratio not attainable */
  VNFS_ERR_INTERNAL = 10
} vnfs_status;

typedef struct vnfs_config vnfs_config;
typedef struct vnfs_trace vnfs_trace;
typedef struct vnfs_preplan vnfs_preplan;
typedef struct vnfs_results vnfs_results;

/* Message describing the most recent failure on this thread. */
VNFS_API const char* vnfs_last_error(void);

VNFS_API void vnfs_string_free(char* s);

/* ---- configuration ---- */
VNFS_API vnfs_status vnfs_config_load(const char* path, vnfs_config** out);
VNFS_API vnfs_status vnfs_config_parse(const char* json_text,
                                       vnfs_config** out);
VNFS_API vnfs_status vnfs_config_counts(const vnfs_config* cfg, int* types,
                                        int* chains, int* servers);
VNFS_API void vnfs_config_free(vnfs_config* cfg);

/* ---- traces ---- */
/* expected_chains of 0 accepts whatever the file declares. */
VNFS_API vnfs_status vnfs_trace_load_csv(const char* path, int expected_chains,
                                         vnfs_trace** out);
/* params_json keys (all optional): num_chains, horizon, slots_per_day,
 * daily_amplitude, weekly_amplitude, noise_sigma, peak_mbps, pmr, seed. */
VNFS_API vnfs_status vnfs_trace_synthesize(const char* params_json,
                                           vnfs_trace** out);
VNFS_API vnfs_status vnfs_trace_save_csv(const vnfs_trace* tr,
                                         const char* path);
VNFS_API vnfs_status vnfs_trace_dims(const vnfs_trace* tr, int* chains,
                                     int* slots);
/* Peak-to-mean ratio of the aggregate per-slot load. */
VNFS_API vnfs_status vnfs_trace_pmr(const vnfs_trace* tr, double* out);
/* Reshape to the target peak-to-mean ratio, preserving the aggregate mean. */
VNFS_API vnfs_status vnfs_trace_rescale_pmr(const vnfs_trace* tr,
                                            double target, vnfs_trace** out);
/* Linearly scale so the global peak equals `peak`. */
VNFS_API vnfs_status vnfs_trace_scale_peak(const vnfs_trace* tr, double peak,
                                           vnfs_trace** out);
VNFS_API void vnfs_trace_free(vnfs_trace* tr);

/* ---- pre-planning ---- */
/* rate_step: granularity (Mbps) of the sustainable-rate search, >= 1. */
VNFS_API vnfs_status vnfs_preplan_compute(const vnfs_config* cfg, int chain_id,
                                          long long rate_step,
                                          vnfs_preplan** out);
VNFS_API vnfs_status vnfs_preplan_alpha_max(const vnfs_preplan* plan,
                                            long long* out);
VNFS_API vnfs_status vnfs_preplan_to_json(const vnfs_preplan* plan,
                                          char** out);
VNFS_API vnfs_status vnfs_preplan_from_json(const char* text,
                                            vnfs_preplan** out);
VNFS_API void vnfs_preplan_free(vnfs_preplan* plan);

/* ---- simulation ---- */
/* options_json keys (all optional):
 *   algo:            "ssc_online" | "msc_online" | "static" | "myopic"
 *                    | "offline_lb" | "exhaustive"   (default "ssc_online")
 *   chain_id:        chain driven by ssc_online (default 1)
 *   seed_begin/seed_end: inclusive seed range (default 1..1)
 *   deploy_op_ratio: override every deploy_cost to ratio*op_cost (default off)
 *   threads:         worker pool size, 0 = hardware (default 0)
 *   verify:          per-slot invariant checking (default true)
 *   preplan_rate_step: granularity for an internally computed pre-plan
 * plan may be NULL; when given it is reused instead of recomputing. */
VNFS_API vnfs_status vnfs_simulate(const vnfs_config* cfg,
                                   const vnfs_trace* tr,
                                   const char* options_json,
                                   const vnfs_preplan* plan,
                                   vnfs_results** out);

VNFS_API vnfs_status vnfs_results_count(const vnfs_results* res, size_t* out);
VNFS_API vnfs_status vnfs_results_total_cost(const vnfs_results* res,
                                             size_t idx, double* out);
VNFS_API vnfs_status vnfs_results_digest(const vnfs_results* res, size_t idx,
                                         uint64_t* out);
VNFS_API vnfs_status vnfs_results_violations(const vnfs_results* res,
                                             size_t idx, size_t* out);
VNFS_API vnfs_status vnfs_results_to_json(const vnfs_results* res, size_t idx,
                                          char** out);
/* Write per-run JSON + per-slot CSV files and a summary.json index. */
VNFS_API vnfs_status vnfs_results_write(const vnfs_results* res,
                                        const char* out_dir);
VNFS_API void vnfs_results_free(vnfs_results* res);

/* ---- reporting ---- */
/* Aggregate all runs under in_dir; emit is "csv" or "json". */
VNFS_API vnfs_status vnfs_report(const char* in_dir, const char* emit,
                                 char** out);

#ifdef __cplusplus
}
#endif

#endif /* VNFSCALE_VNFSCALE_H */
