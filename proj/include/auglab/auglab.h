#ifndef AUGLAB_AUGLAB_H
#define AUGLAB_AUGLAB_H

/*
 * C interface to the resource-augmentation lab: paging, selfish routing
 * and speed-scaled scheduling engines plus their verification harnesses.
 *
 * Conventions:
 *   - Every function returns an auglab_status; AUGLAB_OK means success.
 *   - On failure, auglab_last_error() describes the problem (the message
 *     is thread-local and valid until the next failing call).
 *   - Objects created through auglab_*_gen/load/from functions must be
 *     released with the matching auglab_*_free.
 *   - Strings returned through char** out-parameters are heap-allocated;
 *     release them with auglab_string_free. Out-parameters may be NULL
 *     when the caller does not need the value.
 *   - Rational parameters (speeds, eps, times) are strings: "num/den",
 *     a plain integer, or a finite decimal; all parsed exactly.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AUGLAB_API __declspec(dllexport)
#else
#define AUGLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum auglab_status {
  AUGLAB_OK = 0,
  AUGLAB_ERR_INVALID = 1,    /* precondition or argument violation */
  AUGLAB_ERR_PARSE = 2,      /* malformed file or string input */
  AUGLAB_ERR_GUARD = 3,      /* brute-force size guard exceeded */
  AUGLAB_ERR_INFEASIBLE = 4, /* traffic exceeds network capacity */
  AUGLAB_ERR_UNDEFINED = 5,  /* requested ratio has no defined value */
  AUGLAB_ERR_IO = 6,         /* file system failure */
  AUGLAB_ERR_INTERNAL = 7
} auglab_status;

typedef struct auglab_trace auglab_trace;     /* page request sequence */
typedef struct auglab_network auglab_network; /* selfish-routing network */
typedef struct auglab_jobset auglab_jobset;   /* scheduling instance */

AUGLAB_API const char* auglab_version(void);
AUGLAB_API const char* auglab_last_error(void);
AUGLAB_API void auglab_string_free(char* text);
AUGLAB_API void auglab_trace_free(auglab_trace* trace);
AUGLAB_API void auglab_network_free(auglab_network* net);
AUGLAB_API void auglab_jobset_free(auglab_jobset* jobs);

/* ---------------- paging ---------------- */

AUGLAB_API auglab_status auglab_trace_from_requests(const int32_t* requests,
                                                    size_t count,
                                                    int32_t universe,
                                                    auglab_trace** out);
AUGLAB_API auglab_status auglab_trace_load_file(const char* path,
                                                auglab_trace** out);
AUGLAB_API auglab_status auglab_trace_save_file(const auglab_trace* trace,
                                                const char* path);
AUGLAB_API auglab_status auglab_trace_length(const auglab_trace* trace,
                                             size_t* out);
AUGLAB_API auglab_status auglab_trace_universe(const auglab_trace* trace,
                                               int32_t* out);

AUGLAB_API auglab_status auglab_trace_gen_cyclic(int cache_size, size_t length,
                                                 auglab_trace** out);
/* policy: "lru" or "fifo" */
AUGLAB_API auglab_status auglab_trace_gen_adaptive(const char* policy,
                                                   int cache_size,
                                                   size_t length,
                                                   auglab_trace** out);
AUGLAB_API auglab_status auglab_trace_gen_locality(int32_t universe,
                                                   size_t length,
                                                   uint64_t seed,
                                                   double locality, int window,
                                                   auglab_trace** out);

/* policy: "lru", "fifo" or "fif". record_json: {policy, k, faults, len}. */
AUGLAB_API auglab_status auglab_page_simulate(const auglab_trace* trace,
                                              const char* policy,
                                              int cache_size, uint64_t* faults,
                                              char** record_json);
AUGLAB_API auglab_status auglab_page_opt_bruteforce(const auglab_trace* trace,
                                                    int cache_size,
                                                    int32_t max_universe,
                                                    size_t max_length,
                                                    uint64_t* faults);
AUGLAB_API auglab_status auglab_page_blocks(const auglab_trace* trace,
                                            int cache_size, size_t* count,
                                            char** blocks_json);
AUGLAB_API auglab_status auglab_page_curve(const auglab_trace* trace,
                                           const char* policy,
                                           const int* cache_sizes,
                                           size_t count, int threads,
                                           char** curve_json);
AUGLAB_API auglab_status auglab_page_verify_ra(const auglab_trace* trace,
                                               const char* policy, int k,
                                               int h, int* pass,
                                               char** report_json);
AUGLAB_API auglab_status auglab_page_loose_classify(const auglab_trace* trace,
                                                    int n, double eps,
                                                    double delta, int* pass,
                                                    char** json);

/* ---------------- routing ---------------- */

AUGLAB_API auglab_status auglab_network_from_json(const char* json_text,
                                                  auglab_network** out);
AUGLAB_API auglab_status auglab_network_load_file(const char* path,
                                                  auglab_network** out);
AUGLAB_API auglab_status auglab_network_save_file(const auglab_network* net,
                                                  const char* path);
AUGLAB_API auglab_status auglab_network_to_json(const auglab_network* net,
                                                char** json);

AUGLAB_API auglab_status auglab_network_pigou(int degree,
                                              auglab_network** out);
AUGLAB_API auglab_status auglab_network_mm1(double capacity, double rate,
                                            auglab_network** out);
AUGLAB_API auglab_status auglab_network_two_commodity(auglab_network** out);
AUGLAB_API auglab_status auglab_network_gen_random(uint64_t seed,
                                                   auglab_network** out);
AUGLAB_API auglab_status auglab_network_gen_parallel(uint64_t seed,
                                                     auglab_network** out);
AUGLAB_API auglab_status auglab_network_scale_rates(const auglab_network* net,
                                                    double factor,
                                                    auglab_network** out);
AUGLAB_API auglab_status auglab_network_make_slower(const auglab_network* net,
                                                    auglab_network** out);

/* optimal = 0 solves for the equilibrium flow, 1 for the minimum-cost
 * flow. tol <= 0 picks the default (1e-6). flow_json: {edge_flows,
 * objective, cost, gap, ...}. */
AUGLAB_API auglab_status auglab_route_solve(const auglab_network* net,
                                            int optimal, double tol,
                                            double* cost, double* gap,
                                            char** flow_json);
AUGLAB_API auglab_status auglab_route_poa(const auglab_network* net,
                                          double tol, double* poa,
                                          char** json);
AUGLAB_API auglab_status auglab_route_verify_rt(const auglab_network* net,
                                                const double* deltas,
                                                size_t count, double slack,
                                                double tol, int* pass,
                                                char** json);
AUGLAB_API auglab_status auglab_route_verify_bicrit(const auglab_network* net,
                                                    double slack, double tol,
                                                    int* pass, char** json);
AUGLAB_API auglab_status auglab_route_loose(const auglab_network* net,
                                            double rate, int samples,
                                            double beta, double tol,
                                            double* alpha_hat, char** json);
AUGLAB_API auglab_status auglab_route_curve(const auglab_network* net,
                                            int optimal, const double* rates,
                                            size_t count, double tol,
                                            int threads, char** curve_json);

/* ---------------- scheduling ---------------- */

AUGLAB_API auglab_status auglab_jobset_from_json(const char* json_text,
                                                 auglab_jobset** out);
AUGLAB_API auglab_status auglab_jobset_load_file(const char* path,
                                                 auglab_jobset** out);
AUGLAB_API auglab_status auglab_jobset_save_file(const auglab_jobset* jobs,
                                                 const char* path);
AUGLAB_API auglab_status auglab_jobset_to_json(const auglab_jobset* jobs,
                                               char** json);
AUGLAB_API auglab_status auglab_jobset_gen_example(const char* eps,
                                                   const char* delta,
                                                   auglab_jobset** out);
AUGLAB_API auglab_status auglab_jobset_gen_random(uint64_t seed, int max_jobs,
                                                  auglab_jobset** out);

/* policy: "srpt" or "setf"; speed: rational string. The flow time and
 * maximum idle time come back as exact rational strings. */
AUGLAB_API auglab_status auglab_sched_simulate(const auglab_jobset* jobs,
                                               const char* policy,
                                               const char* speed,
                                               char** timeline_json,
                                               char** total_flow,
                                               char** max_idle);
AUGLAB_API auglab_status auglab_sched_verify_kp00(const auglab_jobset* jobs,
                                                  const char* eps, int* pass,
                                                  char** json);
AUGLAB_API auglab_status auglab_sched_verify_pointwise(
    const auglab_jobset* jobs, const char* eps, int* pass, char** json);
AUGLAB_API auglab_status auglab_sched_verify_idle(const auglab_jobset* jobs,
                                                  const char* eps, int* pass,
                                                  char** json);
/* at: rational time, or NULL for the end of the schedule. */
AUGLAB_API auglab_status auglab_sched_interference(const auglab_jobset* jobs,
                                                   const char* speed,
                                                   const char* at,
                                                   char** json);
AUGLAB_API auglab_status auglab_sched_curve(const auglab_jobset* jobs,
                                            const char* policy,
                                            const char* const* speeds,
                                            size_t count, int threads,
                                            char** curve_json);

/* ---------------- shared ---------------- */

/* Converts any curve JSON produced above into "resource,value" CSV. */
AUGLAB_API auglab_status auglab_curve_to_csv(const char* curve_json,
                                             char** csv);

#ifdef __cplusplus
}
#endif

#endif /* AUGLAB_AUGLAB_H */
