// ladasim: configuration-driven experiment runner over the lada C API.
//
// One invocation sweeps a parameter grid (k or n) times a seed list for one
// algorithm, writes one CSV row per (parameter, seed) run plus a JSON summary
// with a log-log scaling fit of the median averaging times, and can dump the
// sampled topology as JSON instead of running.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lada.h"

namespace {

struct ExperimentSpec {
  std::string algorithm;
  std::vector<int> kValues;
  std::vector<int> nValues;
  std::string rRule = "2sqrtlogn";
  std::string pRule = "half-r";
  std::string x0Rule = "uniform";
  double eps = 1e-3;
  std::vector<std::uint64_t> seeds{1};
  int maxIter = 200000;
  int fixedIters = 0;  // > 0: run exactly this many iterations, no halting
  std::string metrics = "none";
  std::string outPrefix;
  std::string traceDir;
  std::string dumpNetworkPath;
  int jobs = 1;
  int stateCap = 4096;
};

struct RunResult {
  int scaleInt = 0;     // k or n
  double rOrK = 0.0;    // r for geometric runs, k for grid runs
  double p = 0.0;
  std::uint64_t seed = 0;
  int tAve = -1;        // -1 flags a run that never reached eps (or failed)
  bool failed = false;
  std::string failure;
  int tMix = -1;
  int tFill = -1;
  double phiAxis = -1.0;
  long long messagesPerIter = 0;
  double scaleParam = 0.0;  // k, or 1/r
};

[[noreturn]] void usageError(const std::string& field, const std::string& why) {
  std::cerr << "ladasim: invalid --" << field << ": " << why << "\n";
  std::exit(2);
}

bool isGridAlgorithm(const std::string& a) { return a == "grid-lada" || a == "centralized-grid"; }

bool isChainAlgorithm(const std::string& a) {
  return a == "grid-lada" || a == "lada" || a == "lada-u" || a == "baseline-metropolis";
}

double rangeFor(const ExperimentSpec& spec, int n) {
  if (spec.rRule == "sqrt2logn") return std::sqrt(2.0 * std::log(double(n)) / n);
  if (spec.rRule == "2sqrtlogn") return 2.0 * std::sqrt(std::log(double(n)) / n);
  if (spec.rRule.rfind("fixed:", 0) == 0) {
    double r = std::atof(spec.rRule.c_str() + 6);
    if (!(r > 0.0)) usageError("r-rule", "fixed range must be positive");
    return r;
  }
  usageError("r-rule", "expected sqrt2logn, 2sqrtlogn or fixed:<r>");
}

double turningFor(const ExperimentSpec& spec, double r) {
  if (spec.pRule == "half-r") return lada_default_turning_probability(r);
  if (spec.pRule == "mu-alpha") return lada_advance_turning_probability(r);
  if (spec.pRule.rfind("fixed:", 0) == 0) {
    double p = std::atof(spec.pRule.c_str() + 6);
    if (!(p > 0.0) || !(p < 1.0)) usageError("p-rule", "fixed p must be in (0,1)");
    return p;
  }
  usageError("p-rule", "expected half-r, mu-alpha or fixed:<p>");
}

bool metricsWanted(const ExperimentSpec& spec, const std::string& which) {
  if (spec.metrics == "none") return false;
  if (spec.metrics == "all") return true;
  return ("," + spec.metrics + ",").find("," + which + ",") != std::string::npos;
}

// splitmix64 stream for initial values; self-contained so experiment inputs
// are reproducible from the seed alone
struct ValueStream {
  std::uint64_t state;
  explicit ValueStream(std::uint64_t seed) : state(seed) {}
  double next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return double(z >> 11) * 0x1.0p-53;
  }
};

std::vector<double> initialValues(const ExperimentSpec& spec, int n, std::uint64_t seed) {
  std::vector<double> x0(n, 0.0);
  if (spec.x0Rule == "indicator") {
    x0[seed % n] = double(n);
  } else if (spec.x0Rule == "uniform") {
    ValueStream stream(seed * 0x9e3779b97f4a7c15ULL + 0x1234567);
    for (double& v : x0) v = stream.next();
  } else {
    usageError("x0", "expected uniform or indicator");
  }
  return x0;
}

std::string formatDouble(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string describeError(int rc) {
  std::string text = lada_last_error();
  return text.empty() ? "error code " + std::to_string(rc) : text;
}

struct Handles {
  lada_network* net = nullptr;
  lada_chain* chain = nullptr;
  lada_chain* collapsed = nullptr;
  lada_dist* pi = nullptr;
  lada_dist* nodePi = nullptr;
  lada_clustering* cl = nullptr;
  lada_run* run = nullptr;
  ~Handles() {
    lada_run_free(run);
    lada_clustering_free(cl);
    lada_dist_free(nodePi);
    lada_dist_free(pi);
    lada_chain_free(collapsed);
    lada_chain_free(chain);
    lada_network_free(net);
  }
};

int buildTopology(const ExperimentSpec& spec, int scale, std::uint64_t seed, Handles& h,
                  RunResult& res) {
  if (spec.algorithm == "grid-lada") {
    res.rOrK = scale;
    res.scaleParam = scale;
    return lada_make_grid(scale, &h.net);
  }
  double r = rangeFor(spec, scale);
  res.rOrK = r;
  res.scaleParam = 1.0 / r;
  return lada_sample_geometric(scale, r, seed, 32, &h.net);
}

void computeChainMetrics(const ExperimentSpec& spec, Handles& h, RunResult& res) {
  bool wantMix = metricsWanted(spec, "mix");
  bool wantFill = metricsWanted(spec, "fill");
  bool wantPhi = metricsWanted(spec, "phi");
  if (!wantMix && !wantFill && !wantPhi) return;
  if (!h.chain) return;

  if (lada_stationary(h.chain, 1e-11, 2000000, &h.pi) != LADA_OK) return;
  // default budget: 20x the expected O(k) / O(1/r) horizon of the chain
  int budget = std::max(200, 20 * 4 * int(std::lround(res.scaleParam)));
  if (wantMix) {
    int t = -1;
    if (lada_mixing_time(h.chain, h.pi, spec.eps, budget, spec.stateCap, &t) == LADA_OK)
      res.tMix = t;
  }
  if (wantFill) {
    int t = -1;
    if (lada_fill_time(h.chain, h.pi, 0.5, budget, spec.stateCap, &t) == LADA_OK) res.tFill = t;
  }
  if (wantPhi) {
    // conductance of the node-level chain; collapse lifted chains first
    double phi = -1.0;
    if (lada_chain_states(h.chain) != lada_chain_nodes(h.chain)) {
      if (lada_collapse(h.chain, h.pi, &h.collapsed) == LADA_OK &&
          lada_aggregate_stationary(h.chain, h.pi, &h.nodePi) == LADA_OK &&
          lada_axis_cut_conductance(h.collapsed, h.net, h.nodePi, &phi) == LADA_OK)
        res.phiAxis = phi;
    } else if (lada_axis_cut_conductance(h.chain, h.net, h.pi, &phi) == LADA_OK) {
      res.phiAxis = phi;
    }
  }
}

RunResult executeRun(const ExperimentSpec& spec, int scale, std::uint64_t seed) {
  RunResult res;
  res.scaleInt = scale;
  res.seed = seed;
  Handles h;

  int rc = buildTopology(spec, scale, seed, h, res);
  if (rc != LADA_OK) {
    res.failed = true;
    res.failure = describeError(rc);
    return res;
  }
  int n = lada_network_node_count(h.net);
  std::vector<double> x0 = initialValues(spec, n, seed);
  double r = lada_network_range(h.net);
  double p = isGridAlgorithm(spec.algorithm) ? 0.0 : turningFor(spec, r);
  res.p = spec.algorithm == "grid-lada" ? 1.0 / double(scale) : p;
  // fixed-iteration mode: an unreachable halting tolerance runs the iteration
  // to the requested horizon; t_ave is then read off the recorded trace
  double runEps = spec.fixedIters > 0 ? -1.0 : spec.eps;
  int runIters = spec.fixedIters > 0 ? spec.fixedIters : spec.maxIter;

  auto fails = [&](int code) {
    if (code == LADA_OK) return false;
    res.failed = true;
    res.failure = describeError(code);
    return true;
  };

  if (spec.algorithm == "grid-lada") {
    if (fails(lada_build_grid_chain(scale, &h.chain))) return res;
    if (fails(lada_run_pa1(h.chain, x0.data(), n, runEps, runIters, &h.run))) return res;
  } else if (spec.algorithm == "lada") {
    if (fails(lada_build_lada_chain(h.net, p, &h.chain))) return res;
    if (fails(lada_run_pa2(h.chain, x0.data(), n, runEps, runIters, &h.run))) return res;
  } else if (spec.algorithm == "lada-u") {
    if (fails(lada_build_ladau_chain(h.net, p, &h.chain))) return res;
    if (fails(lada_run_pa1(h.chain, x0.data(), n, runEps, runIters, &h.run))) return res;
  } else if (spec.algorithm == "baseline-metropolis") {
    if (fails(lada_build_baseline_chain(h.net, &h.chain))) return res;
    if (fails(lada_run_pa1(h.chain, x0.data(), n, runEps, runIters, &h.run))) return res;
  } else if (spec.algorithm == "clada") {
    if (fails(lada_distributed_clustering(h.net, seed, &h.cl))) return res;
    if (fails(lada_build_induced_graph(h.net, h.cl))) return res;
    if (fails(lada_run_clada(h.net, h.cl, x0.data(), n, p, runEps, runIters, &h.run)))
      return res;
  } else if (spec.algorithm == "centralized-grid") {
    if (fails(lada_tessellation_clusters(h.net, &h.cl))) return res;
    if (fails(lada_run_centralized_grid(h.net, h.cl, x0.data(), n, runEps, runIters,
                                        &h.run)))
      return res;
  }

  res.tAve = spec.fixedIters > 0 ? lada_averaging_time(h.run, spec.eps)
                                 : (lada_run_converged(h.run) ? lada_run_iterations(h.run) : -1);
  res.messagesPerIter = lada_run_messages_per_iteration(h.run);
  computeChainMetrics(spec, h, res);

  if (!spec.traceDir.empty()) {
    std::string path = spec.traceDir + "/trace_" + spec.algorithm + "_" +
                       std::to_string(scale) + "_" + std::to_string(seed) + ".csv";
    std::string scaleStr = std::to_string(scale);
    std::string seedStr = std::to_string(seed);
    std::string epsStr = formatDouble(spec.eps);
    std::string rStr = formatDouble(res.rOrK);
    std::string pStr = formatDouble(res.p);
    const char* keys[] = {"algorithm", "scale", "r_or_k", "p", "eps", "seed"};
    const char* values[] = {spec.algorithm.c_str(), scaleStr.c_str(), rStr.c_str(),
                            pStr.c_str(), epsStr.c_str(), seedStr.c_str()};
    if (int code = lada_run_write_trace_csv(h.run, path.c_str(), keys, values, 6))
      std::cerr << "ladasim: trace write failed: " << describeError(code) << "\n";
  }
  return res;
}

int dumpNetwork(const ExperimentSpec& spec, int scale) {
  Handles h;
  RunResult res;
  int rc = buildTopology(spec, scale, spec.seeds.front(), h, res);
  if (rc != LADA_OK) {
    std::cerr << "ladasim: " << describeError(rc) << "\n";
    return 1;
  }
  char* json = nullptr;
  if ((rc = lada_network_to_json(h.net, &json)) != LADA_OK) {
    std::cerr << "ladasim: " << describeError(rc) << "\n";
    return 1;
  }
  std::ofstream file(spec.dumpNetworkPath);
  if (!file) {
    std::cerr << "ladasim: cannot open " << spec.dumpNetworkPath << "\n";
    lada_string_free(json);
    return 1;
  }
  file << json;
  lada_string_free(json);

  if (spec.algorithm == "clada" || spec.algorithm == "centralized-grid") {
    rc = spec.algorithm == "clada"
             ? lada_distributed_clustering(h.net, spec.seeds.front(), &h.cl)
             : lada_tessellation_clusters(h.net, &h.cl);
    if (rc == LADA_OK && spec.algorithm == "clada") rc = lada_build_induced_graph(h.net, h.cl);
    if (rc != LADA_OK) {
      std::cerr << "ladasim: clustering dump failed: " << describeError(rc) << "\n";
      return 1;
    }
    char* clJson = nullptr;
    if ((rc = lada_clustering_to_json(h.cl, &clJson)) != LADA_OK) {
      std::cerr << "ladasim: " << describeError(rc) << "\n";
      return 1;
    }
    std::ofstream clFile(spec.dumpNetworkPath + ".clustering.json");
    clFile << clJson;
    lada_string_free(clJson);
  }
  std::cout << "wrote " << spec.dumpNetworkPath << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  ExperimentSpec spec;
  CLI::App app{"lifted-chain averaging experiment runner"};
  app.set_config("--config", "", "flat key=value configuration file; flags win");
  app.add_option("--algorithm", spec.algorithm,
                 "grid-lada | lada | lada-u | clada | centralized-grid | baseline-metropolis");
  app.add_option("--k", spec.kValues, "grid side lengths (grid-lada)")->delimiter(',');
  app.add_option("--n", spec.nValues, "node counts (geometric algorithms)")->delimiter(',');
  app.add_option("--r-rule", spec.rRule, "sqrt2logn | 2sqrtlogn | fixed:<r>");
  app.add_option("--p-rule", spec.pRule, "half-r | mu-alpha | fixed:<p>");
  app.add_option("--x0", spec.x0Rule, "uniform | indicator");
  app.add_option("--eps", spec.eps, "averaging tolerance");
  app.add_option("--seeds", spec.seeds, "seed list")->delimiter(',');
  app.add_option("--max-iter", spec.maxIter, "iteration budget per run");
  app.add_option("--fixed-iters", spec.fixedIters,
                 "run exactly this many iterations (no halting); t_ave is read off the trace");
  app.add_option("--metrics", spec.metrics, "none | all | comma list of mix,fill,phi");
  app.add_option("--out", spec.outPrefix, "output prefix; writes <out>.csv and <out>.json");
  app.add_option("--trace-dir", spec.traceDir, "directory for per-run error traces");
  app.add_option("--jobs", spec.jobs, "parallel runs");
  app.add_option("--dump-network", spec.dumpNetworkPath,
                 "write the first parameter point's topology as JSON and exit");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> known = {"grid-lada",        "lada", "lada-u",
                                          "clada",            "centralized-grid",
                                          "baseline-metropolis"};
  if (std::find(known.begin(), known.end(), spec.algorithm) == known.end())
    usageError("algorithm", spec.algorithm.empty() ? "missing" : "unknown " + spec.algorithm);
  if (spec.algorithm == "grid-lada") {
    if (spec.kValues.empty()) usageError("k", "grid-lada requires at least one k");
    for (int k : spec.kValues)
      if (k < 2) usageError("k", "grid side must be >= 2");
  } else {
    if (spec.nValues.empty())
      usageError("n", spec.algorithm + " requires at least one node count");
    for (int n : spec.nValues)
      if (n < 2) usageError("n", "node count must be >= 2");
  }
  if (spec.seeds.empty()) usageError("seeds", "need at least one seed");
  if (spec.metrics != "none" && !isChainAlgorithm(spec.algorithm))
    usageError("metrics", "chain metrics apply to grid-lada, lada, lada-u, baseline-metropolis");
  if (spec.jobs < 1) usageError("jobs", "must be >= 1");
  if (!(spec.eps > 0.0)) usageError("eps", "must be positive");

  const std::vector<int>& scales =
      spec.algorithm == "grid-lada" ? spec.kValues : spec.nValues;

  if (!spec.dumpNetworkPath.empty()) return dumpNetwork(spec, scales.front());

  // the full (parameter x seed) grid, executed possibly in parallel but
  // reported in deterministic order
  struct Task {
    int scale;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int scale : scales)
    for (std::uint64_t seed : spec.seeds) tasks.push_back({scale, seed});
  std::vector<RunResult> results(tasks.size());

  std::atomic<size_t> nextTask{0};
  auto worker = [&] {
    for (;;) {
      size_t idx = nextTask.fetch_add(1);
      if (idx >= tasks.size()) return;
      results[idx] = executeRun(spec, tasks[idx].scale, tasks[idx].seed);
    }
  };
  if (spec.jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < spec.jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  size_t failures = 0;
  for (const RunResult& res : results) {
    if (res.failed) {
      ++failures;
      std::cerr << "ladasim: run (scale=" << res.scaleInt << ", seed=" << res.seed
                << ") failed: " << res.failure << "\n";
    }
  }

  // CSV body
  std::ostringstream csv;
  csv << "n,r_or_k,p,seed,t_ave,t_mix,t_fill,phi_axis,messages_per_iter\n";
  for (const RunResult& res : results) {
    int n = spec.algorithm == "grid-lada" ? res.scaleInt * res.scaleInt : res.scaleInt;
    csv << n << ',' << formatDouble(res.rOrK) << ',' << formatDouble(res.p) << ',' << res.seed
        << ',' << res.tAve << ',' << res.tMix << ',' << res.tFill << ','
        << (res.phiAxis >= 0.0 ? formatDouble(res.phiAxis) : "-1") << ','
        << res.messagesPerIter << "\n";
  }

  // JSON summary with the scaling fit over per-parameter medians
  std::ostringstream json;
  json << "{\n  \"algorithm\": \"" << spec.algorithm << "\",\n";
  json << "  \"eps\": " << formatDouble(spec.eps) << ",\n";
  json << "  \"points\": [";
  std::vector<double> fitX, fitY;
  bool firstPoint = true;
  for (int scale : scales) {
    std::vector<double> times;
    double scaleParam = 0.0;
    for (const RunResult& res : results)
      if (res.scaleInt == scale && !res.failed && res.tAve >= 0) {
        times.push_back(res.tAve);
        scaleParam = res.scaleParam;
      }
    if (times.empty()) continue;
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    if (!firstPoint) json << ",";
    firstPoint = false;
    json << "\n    {\"scale\": " << scale << ", \"scale_param\": " << formatDouble(scaleParam)
         << ", \"median_t_ave\": " << formatDouble(median) << ", \"runs\": " << times.size()
         << "}";
    if (median > 0.0) {
      fitX.push_back(scaleParam);
      fitY.push_back(median);
    }
  }
  json << "\n  ]";
  if (fitX.size() >= 3) {
    double slope, intercept, r2;
    if (lada_scaling_fit(fitX.data(), fitY.data(), int(fitX.size()), &slope, &intercept, &r2) ==
        LADA_OK) {
      json << ",\n  \"fit\": {\"slope\": " << formatDouble(slope)
           << ", \"intercept\": " << formatDouble(intercept)
           << ", \"r2\": " << formatDouble(r2) << "}";
    }
  }
  json << "\n}\n";

  if (spec.outPrefix.empty()) {
    std::cout << csv.str();
    std::cout << json.str();
  } else {
    std::ofstream csvFile(spec.outPrefix + ".csv");
    csvFile << csv.str();
    std::ofstream jsonFile(spec.outPrefix + ".json");
    jsonFile << json.str();
    if (!csvFile.good() || !jsonFile.good()) {
      std::cerr << "ladasim: failed writing outputs under " << spec.outPrefix << "\n";
      return 1;
    }
    std::cout << "wrote " << spec.outPrefix << ".csv and " << spec.outPrefix << ".json\n";
  }

  return failures == results.size() ? 1 : 0;
}
