/* C interface to the lada consensus-simulation core.
 *
 * Every constructor returns LADA_OK and stores a handle through the out
 * parameter, or returns a nonzero error code (lada_last_error() describes the
 * failure for the calling thread). Handles are freed with the matching
 * *_free function; NULL is always safe to free. Distinct handles may be used
 * from distinct threads; a single handle is not synchronized.
 */
#ifndef LADA_H
#define LADA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define LADA_API __attribute__((visibility("default")))

enum {
  LADA_OK = 0,
  LADA_ERR_INVALID_ARGUMENT = 1,
  LADA_ERR_DISCONNECTED = 2,
  LADA_ERR_EMPTY_SECTOR = 3,
  LADA_ERR_EMPTY_CLUSTER = 4,
  LADA_ERR_NOT_CONVERGED = 5,
  LADA_ERR_TOO_LARGE = 6,
  LADA_ERR_DEGENERATE = 7,
  LADA_ERR_NO_CUT = 8,
  LADA_ERR_IO = 9
};

enum {
  LADA_MESSAGES_LADA = 0,
  LADA_MESSAGES_CLADA = 1,
  LADA_MESSAGES_CENTRALIZED_GRID = 2
};

typedef struct lada_network lada_network;
typedef struct lada_chain lada_chain;
typedef struct lada_dist lada_dist;
typedef struct lada_run lada_run;
typedef struct lada_clustering lada_clustering;

LADA_API const char* lada_version(void);
/* message for the most recent failing call on this thread */
LADA_API const char* lada_last_error(void);
LADA_API void lada_string_free(char* text);

/* ---- networks ---------------------------------------------------------- */
LADA_API int lada_make_grid(int k, lada_network** out);
LADA_API int lada_sample_geometric(int n, double r, uint64_t seed, int max_resample,
                                   lada_network** out);
LADA_API void lada_network_free(lada_network* net);
LADA_API int lada_network_node_count(const lada_network* net);
LADA_API double lada_network_range(const lada_network* net);
LADA_API uint64_t lada_network_seed_used(const lada_network* net);
LADA_API int lada_network_resamples(const lada_network* net);
LADA_API int lada_network_is_connected(const lada_network* net, int* connected);
/* classify directional neighborhoods now (chain builders do this lazily);
 * fails with LADA_ERR_EMPTY_SECTOR if some direction of some node is empty */
LADA_API int lada_network_classify(lada_network* net);
LADA_API int lada_network_to_json(const lada_network* net, char** out_json);

/* turning-probability presets */
LADA_API double lada_default_turning_probability(double r);
LADA_API double lada_advance_turning_probability(double r);

/* ---- chains ------------------------------------------------------------ */
LADA_API int lada_build_grid_chain(int k, lada_chain** out);
LADA_API int lada_build_lada_chain(lada_network* net, double p, lada_chain** out);
LADA_API int lada_build_ladau_chain(lada_network* net, double p, lada_chain** out);
LADA_API int lada_build_baseline_chain(const lada_network* net, lada_chain** out);
LADA_API void lada_chain_free(lada_chain* chain);
LADA_API int lada_chain_states(const lada_chain* chain);
LADA_API int lada_chain_nodes(const lada_chain* chain);
LADA_API int lada_chain_row_sum_deviation(const lada_chain* chain, double* out);
LADA_API int lada_chain_write_triplets(const lada_chain* chain, const char* path);

LADA_API int lada_stationary(const lada_chain* chain, double tol, int max_iter, lada_dist** out);
LADA_API void lada_dist_free(lada_dist* dist);
LADA_API int lada_dist_size(const lada_dist* dist);
/* borrowed view, valid while the handle lives */
LADA_API int lada_dist_values(const lada_dist* dist, const double** values, int* count);

LADA_API int lada_collapse(const lada_chain* chain, const lada_dist* pi, lada_chain** out);
LADA_API int lada_aggregate_stationary(const lada_chain* chain, const lada_dist* pi,
                                       lada_dist** out);
LADA_API int lada_validate_lifting(const lada_chain* lifted, const lada_chain* collapsed,
                                   const lada_dist* pi_lifted, const lada_dist* pi_collapsed,
                                   double tol, int* valid);

/* ---- consensus runs ---------------------------------------------------- */
LADA_API int lada_run_pa1(const lada_chain* chain, const double* x0, int n, double eps,
                          int max_iter, lada_run** out);
LADA_API int lada_run_pa2(const lada_chain* chain, const double* x0, int n, double eps,
                          int max_iter, lada_run** out);
LADA_API void lada_run_free(lada_run* run);
LADA_API int lada_run_converged(const lada_run* run);
LADA_API int lada_run_iterations(const lada_run* run);
LADA_API double lada_run_x_ave(const lada_run* run);
LADA_API double lada_run_mass_drift(const lada_run* run);
LADA_API double lada_run_weight_drift(const lada_run* run);
LADA_API int lada_run_error_trace(const lada_run* run, const double** values, int* count);
LADA_API int lada_run_estimates(const lada_run* run, const double** values, int* count);
LADA_API int lada_averaging_time(const lada_run* run, double eps);
LADA_API long long lada_run_messages_per_iteration(const lada_run* run);
LADA_API long long lada_run_messages_one_time(const lada_run* run);
LADA_API int lada_run_write_trace_csv(const lada_run* run, const char* path,
                                      const char* const* meta_keys,
                                      const char* const* meta_values, int meta_count);

/* ---- clustering -------------------------------------------------------- */
LADA_API int lada_tessellation_clusters(const lada_network* net, lada_clustering** out);
LADA_API int lada_distributed_clustering(const lada_network* net, uint64_t rng_seed,
                                         lada_clustering** out);
LADA_API int lada_build_induced_graph(const lada_network* net, lada_clustering* cl);
LADA_API void lada_clustering_free(lada_clustering* cl);
LADA_API int lada_clustering_count(const lada_clustering* cl);
LADA_API long long lada_clustering_adjacent_pairs(const lada_clustering* cl);
LADA_API int lada_clustering_gateway_node_count(const lada_clustering* cl);
LADA_API int lada_clustering_to_json(const lada_clustering* cl, char** out_json);
LADA_API int lada_count_messages(int scheme, int node_count, const lada_clustering* cl,
                                 long long* per_iteration, long long* one_time);

LADA_API int lada_run_clada(const lada_network* net, const lada_clustering* cl, const double* x0,
                            int n, double p, double eps, int max_iter, lada_run** out);
LADA_API int lada_run_centralized_grid(const lada_network* net, const lada_clustering* cl,
                                       const double* x0, int n, double eps, int max_iter,
                                       lada_run** out);

/* ---- chain metrics ----------------------------------------------------- */
LADA_API int lada_mixing_time(const lada_chain* chain, const lada_dist* pi, double eps, int t_max,
                              int state_cap, int* out);
LADA_API int lada_fill_time(const lada_chain* chain, const lada_dist* pi, double c, int t_max,
                            int state_cap, int* out);
LADA_API int lada_check_fill_mix_bound(const lada_chain* chain, const lada_dist* pi, double eps,
                                       double c, int t_max, int* holds);
LADA_API int lada_axis_cut_conductance(const lada_chain* chain, const lada_network* net,
                                       const lada_dist* pi, double* out);
LADA_API int lada_brute_force_conductance(const lada_chain* chain, const lada_dist* pi,
                                          double* out);
LADA_API int lada_scaling_fit(const double* xs, const double* ys, int count, double* slope,
                              double* intercept, double* r2);

#ifdef __cplusplus
}
#endif

#endif /* LADA_H */
