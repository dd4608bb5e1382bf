#include "lada.h"

#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "lada/clustering.hpp"
#include "lada/engine.hpp"
#include "lada/io.hpp"
#include "lada/lifting.hpp"
#include "lada/metrics.hpp"
#include "lada/topology.hpp"

struct lada_network {
  lada::Network net;
  std::optional<lada::DirectionalNeighborhood> nbrs;

  const lada::DirectionalNeighborhood& classified() {
    if (!nbrs) nbrs = lada::classify_neighbors(net);
    return *nbrs;
  }
};

struct lada_chain {
  lada::LiftedChain chain;
};

struct lada_dist {
  lada::Distribution dist;
};

struct lada_run {
  lada::ConsensusRun run;
};

struct lada_clustering {
  lada::Clustering cl;
};

namespace {

thread_local std::string g_lastError;

int codeOf(const lada::Error& e) { return static_cast<int>(e.code()); }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return LADA_OK;
  } catch (const lada::Error& e) {
    g_lastError = e.what();
    return codeOf(e);
  } catch (const std::exception& e) {
    g_lastError = e.what();
    return LADA_ERR_INVALID_ARGUMENT;
  }
}

int requireArgs(bool ok) {
  if (!ok) g_lastError = "null argument";
  return ok ? LADA_OK : LADA_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* lada_version(void) { return "0.1.0"; }

const char* lada_last_error(void) { return g_lastError.c_str(); }

void lada_string_free(char* text) { delete[] text; }

static char* copyString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

/* ---- networks ---------------------------------------------------------- */

int lada_make_grid(int k, lada_network** out) {
  if (int rc = requireArgs(out != nullptr)) return rc;
  return guarded([&] { *out = new lada_network{lada::make_grid(k), {}}; });
}

int lada_sample_geometric(int n, double r, uint64_t seed, int max_resample, lada_network** out) {
  if (int rc = requireArgs(out != nullptr)) return rc;
  return guarded([&] {
    *out = new lada_network{lada::sample_geometric(n, r, seed, max_resample), {}};
  });
}

void lada_network_free(lada_network* net) { delete net; }

int lada_network_node_count(const lada_network* net) { return net ? net->net.nodeCount() : 0; }

double lada_network_range(const lada_network* net) { return net ? net->net.range : 0.0; }

uint64_t lada_network_seed_used(const lada_network* net) { return net ? net->net.seed : 0; }

int lada_network_resamples(const lada_network* net) { return net ? net->net.resamples : 0; }

int lada_network_is_connected(const lada_network* net, int* connected) {
  if (int rc = requireArgs(net && connected)) return rc;
  return guarded([&] { *connected = lada::is_connected(net->net) ? 1 : 0; });
}

int lada_network_classify(lada_network* net) {
  if (int rc = requireArgs(net != nullptr)) return rc;
  return guarded([&] { net->classified(); });
}

int lada_network_to_json(const lada_network* net, char** out_json) {
  if (int rc = requireArgs(net && out_json)) return rc;
  return guarded([&] { *out_json = copyString(lada::network_to_json(net->net)); });
}

double lada_default_turning_probability(double r) {
  return lada::default_turning_probability(r);
}

double lada_advance_turning_probability(double r) {
  return lada::advance_turning_probability(r);
}

/* ---- chains ------------------------------------------------------------ */

int lada_build_grid_chain(int k, lada_chain** out) {
  if (int rc = requireArgs(out != nullptr)) return rc;
  return guarded([&] { *out = new lada_chain{lada::build_grid_chain(k)}; });
}

int lada_build_lada_chain(lada_network* net, double p, lada_chain** out) {
  if (int rc = requireArgs(net && out)) return rc;
  return guarded([&] {
    *out = new lada_chain{lada::build_lada_chain(net->net, net->classified(), p)};
  });
}

int lada_build_ladau_chain(lada_network* net, double p, lada_chain** out) {
  if (int rc = requireArgs(net && out)) return rc;
  return guarded([&] {
    *out = new lada_chain{lada::build_ladau_chain(net->net, net->classified(), p)};
  });
}

int lada_build_baseline_chain(const lada_network* net, lada_chain** out) {
  if (int rc = requireArgs(net && out)) return rc;
  return guarded([&] { *out = new lada_chain{lada::build_baseline_chain(net->net)}; });
}

void lada_chain_free(lada_chain* chain) { delete chain; }

int lada_chain_states(const lada_chain* chain) { return chain ? chain->chain.states : 0; }

int lada_chain_nodes(const lada_chain* chain) { return chain ? chain->chain.nodes : 0; }

int lada_chain_row_sum_deviation(const lada_chain* chain, double* out) {
  if (int rc = requireArgs(chain && out)) return rc;
  return guarded([&] { *out = chain->chain.maxRowSumDeviation(); });
}

int lada_chain_write_triplets(const lada_chain* chain, const char* path) {
  if (int rc = requireArgs(chain && path)) return rc;
  return guarded([&] {
    std::ofstream file(path);
    if (!file) lada::fail(lada::ErrorCode::Io, std::string("cannot open ") + path);
    lada::write_chain_triplets(chain->chain, file);
    if (!file.good()) lada::fail(lada::ErrorCode::Io, std::string("write failed: ") + path);
  });
}

int lada_stationary(const lada_chain* chain, double tol, int max_iter, lada_dist** out) {
  if (int rc = requireArgs(chain && out)) return rc;
  return guarded([&] { *out = new lada_dist{lada::stationary(chain->chain, tol, max_iter)}; });
}

void lada_dist_free(lada_dist* dist) { delete dist; }

int lada_dist_size(const lada_dist* dist) { return dist ? dist->dist.size() : 0; }

int lada_dist_values(const lada_dist* dist, const double** values, int* count) {
  if (int rc = requireArgs(dist && values && count)) return rc;
  *values = dist->dist.p.data();
  *count = dist->dist.size();
  return LADA_OK;
}

int lada_collapse(const lada_chain* chain, const lada_dist* pi, lada_chain** out) {
  if (int rc = requireArgs(chain && pi && out)) return rc;
  return guarded([&] { *out = new lada_chain{lada::collapse(chain->chain, pi->dist)}; });
}

int lada_aggregate_stationary(const lada_chain* chain, const lada_dist* pi, lada_dist** out) {
  if (int rc = requireArgs(chain && pi && out)) return rc;
  return guarded([&] {
    *out = new lada_dist{lada::aggregate_stationary(chain->chain, pi->dist)};
  });
}

int lada_validate_lifting(const lada_chain* lifted, const lada_chain* collapsed,
                          const lada_dist* pi_lifted, const lada_dist* pi_collapsed, double tol,
                          int* valid) {
  if (int rc = requireArgs(lifted && collapsed && pi_lifted && pi_collapsed && valid)) return rc;
  return guarded([&] {
    *valid = lada::validate_lifting(lifted->chain, collapsed->chain, pi_lifted->dist,
                                    pi_collapsed->dist, tol)
                 ? 1
                 : 0;
  });
}

/* ---- consensus runs ---------------------------------------------------- */

static std::vector<double> copyInput(const double* x0, int n) {
  if (!x0 || n <= 0) lada::fail(lada::ErrorCode::InvalidArgument, "x0 must be a nonempty array");
  return std::vector<double>(x0, x0 + n);
}

int lada_run_pa1(const lada_chain* chain, const double* x0, int n, double eps, int max_iter,
                 lada_run** out) {
  if (int rc = requireArgs(chain && out)) return rc;
  return guarded([&] {
    auto run = lada::run_pa1(chain->chain, copyInput(x0, n), eps, max_iter);
    lada::attach_messages(run, lada::lada_message_model(run.nodes));
    *out = new lada_run{std::move(run)};
  });
}

int lada_run_pa2(const lada_chain* chain, const double* x0, int n, double eps, int max_iter,
                 lada_run** out) {
  if (int rc = requireArgs(chain && out)) return rc;
  return guarded([&] {
    auto run = lada::run_pa2(chain->chain, copyInput(x0, n), eps, max_iter);
    lada::attach_messages(run, lada::lada_message_model(run.nodes));
    *out = new lada_run{std::move(run)};
  });
}

void lada_run_free(lada_run* run) { delete run; }

int lada_run_converged(const lada_run* run) { return run && run->run.converged ? 1 : 0; }

int lada_run_iterations(const lada_run* run) { return run ? run->run.iterations() : 0; }

double lada_run_x_ave(const lada_run* run) { return run ? run->run.xAve : 0.0; }

double lada_run_mass_drift(const lada_run* run) { return run ? run->run.massDrift : 0.0; }

double lada_run_weight_drift(const lada_run* run) { return run ? run->run.weightDrift : 0.0; }

int lada_run_error_trace(const lada_run* run, const double** values, int* count) {
  if (int rc = requireArgs(run && values && count)) return rc;
  *values = run->run.errorTrace.data();
  *count = static_cast<int>(run->run.errorTrace.size());
  return LADA_OK;
}

int lada_run_estimates(const lada_run* run, const double** values, int* count) {
  if (int rc = requireArgs(run && values && count)) return rc;
  *values = run->run.finalEstimates.data();
  *count = static_cast<int>(run->run.finalEstimates.size());
  return LADA_OK;
}

int lada_averaging_time(const lada_run* run, double eps) {
  return run ? lada::averaging_time(run->run, eps) : -1;
}

long long lada_run_messages_per_iteration(const lada_run* run) {
  return run ? run->run.messages.perIteration : 0;
}

long long lada_run_messages_one_time(const lada_run* run) {
  return run ? run->run.messages.oneTime : 0;
}

int lada_run_write_trace_csv(const lada_run* run, const char* path, const char* const* meta_keys,
                             const char* const* meta_values, int meta_count) {
  if (int rc = requireArgs(run && path)) return rc;
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> meta;
    for (int i = 0; i < meta_count; ++i) {
      if (!meta_keys || !meta_values || !meta_keys[i] || !meta_values[i])
        lada::fail(lada::ErrorCode::InvalidArgument, "bad metadata array");
      meta.emplace_back(meta_keys[i], meta_values[i]);
    }
    std::ofstream file(path);
    if (!file) lada::fail(lada::ErrorCode::Io, std::string("cannot open ") + path);
    lada::write_run_trace_csv(run->run, file, meta);
    if (!file.good()) lada::fail(lada::ErrorCode::Io, std::string("write failed: ") + path);
  });
}

/* ---- clustering -------------------------------------------------------- */

int lada_tessellation_clusters(const lada_network* net, lada_clustering** out) {
  if (int rc = requireArgs(net && out)) return rc;
  return guarded([&] {
    *out = new lada_clustering{lada::tessellation_clusters(net->net, net->net.range)};
  });
}

int lada_distributed_clustering(const lada_network* net, uint64_t rng_seed,
                                lada_clustering** out) {
  if (int rc = requireArgs(net && out)) return rc;
  return guarded([&] {
    auto cl = lada::distributed_clustering(net->net, rng_seed);
    lada::compute_cluster_adjacency(net->net, cl);
    *out = new lada_clustering{std::move(cl)};
  });
}

int lada_build_induced_graph(const lada_network* net, lada_clustering* cl) {
  if (int rc = requireArgs(net && cl)) return rc;
  return guarded([&] { lada::build_induced_graph(net->net, cl->cl, net->net.range); });
}

void lada_clustering_free(lada_clustering* cl) { delete cl; }

int lada_clustering_count(const lada_clustering* cl) { return cl ? cl->cl.clusterCount() : 0; }

long long lada_clustering_adjacent_pairs(const lada_clustering* cl) {
  return cl ? cl->cl.adjacentPairCount() : 0;
}

int lada_clustering_gateway_node_count(const lada_clustering* cl) {
  return cl ? static_cast<int>(cl->cl.gatewayNodes.size()) : 0;
}

int lada_clustering_to_json(const lada_clustering* cl, char** out_json) {
  if (int rc = requireArgs(cl && out_json)) return rc;
  return guarded([&] { *out_json = copyString(lada::clustering_to_json(cl->cl)); });
}

int lada_count_messages(int scheme, int node_count, const lada_clustering* cl,
                        long long* per_iteration, long long* one_time) {
  if (int rc = requireArgs(per_iteration && one_time)) return rc;
  return guarded([&] {
    lada::MessageScheme s;
    switch (scheme) {
      case LADA_MESSAGES_LADA: s = lada::MessageScheme::Lada; break;
      case LADA_MESSAGES_CLADA: s = lada::MessageScheme::Clada; break;
      case LADA_MESSAGES_CENTRALIZED_GRID: s = lada::MessageScheme::CentralizedGrid; break;
      default: lada::fail(lada::ErrorCode::InvalidArgument, "unknown message scheme");
    }
    auto model = lada::count_messages(s, node_count, cl ? &cl->cl : nullptr);
    *per_iteration = model.perIteration;
    *one_time = model.oneTime;
  });
}

int lada_run_clada(const lada_network* net, const lada_clustering* cl, const double* x0, int n,
                   double p, double eps, int max_iter, lada_run** out) {
  if (int rc = requireArgs(net && cl && out)) return rc;
  return guarded([&] {
    *out = new lada_run{lada::run_clada(net->net, cl->cl, copyInput(x0, n), p, eps, max_iter)};
  });
}

int lada_run_centralized_grid(const lada_network* net, const lada_clustering* cl,
                              const double* x0, int n, double eps, int max_iter, lada_run** out) {
  if (int rc = requireArgs(net && cl && out)) return rc;
  return guarded([&] {
    *out = new lada_run{
        lada::run_centralized_grid(net->net, cl->cl, copyInput(x0, n), eps, max_iter)};
  });
}

/* ---- chain metrics ----------------------------------------------------- */

int lada_mixing_time(const lada_chain* chain, const lada_dist* pi, double eps, int t_max,
                     int state_cap, int* out) {
  if (int rc = requireArgs(chain && pi && out)) return rc;
  return guarded([&] { *out = lada::mixing_time(chain->chain, pi->dist, eps, t_max, state_cap); });
}

int lada_fill_time(const lada_chain* chain, const lada_dist* pi, double c, int t_max,
                   int state_cap, int* out) {
  if (int rc = requireArgs(chain && pi && out)) return rc;
  return guarded([&] { *out = lada::fill_time(chain->chain, pi->dist, c, t_max, state_cap); });
}

int lada_check_fill_mix_bound(const lada_chain* chain, const lada_dist* pi, double eps, double c,
                              int t_max, int* holds) {
  if (int rc = requireArgs(chain && pi && holds)) return rc;
  return guarded([&] {
    *holds = lada::check_fill_mix_bound(chain->chain, pi->dist, eps, c, t_max) ? 1 : 0;
  });
}

int lada_axis_cut_conductance(const lada_chain* chain, const lada_network* net,
                              const lada_dist* pi, double* out) {
  if (int rc = requireArgs(chain && net && pi && out)) return rc;
  return guarded([&] {
    *out = lada::axis_cut_conductance(chain->chain, net->net.positions, pi->dist);
  });
}

int lada_brute_force_conductance(const lada_chain* chain, const lada_dist* pi, double* out) {
  if (int rc = requireArgs(chain && pi && out)) return rc;
  return guarded([&] { *out = lada::brute_force_conductance(chain->chain, pi->dist); });
}

int lada_scaling_fit(const double* xs, const double* ys, int count, double* slope,
                     double* intercept, double* r2) {
  if (int rc = requireArgs(xs && ys && slope && intercept && r2)) return rc;
  return guarded([&] {
    std::vector<std::pair<double, double>> points;
    for (int i = 0; i < count; ++i) points.emplace_back(xs[i], ys[i]);
    auto fit = lada::scaling_fit(points);
    *slope = fit.slope;
    *intercept = fit.intercept;
    *r2 = fit.r2;
  });
}

} // extern "C"
