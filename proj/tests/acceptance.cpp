// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion prints the measured quantities it judged.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lada/clustering.hpp"
#include "lada/engine.hpp"
#include "lada/io.hpp"
#include "lada/lifting.hpp"
#include "lada/metrics.hpp"
#include "lada/rng.hpp"
#include "lada/topology.hpp"

using namespace lada;

namespace {

struct Harness {
  int failures = 0;
  bool currentPass = true;
  std::vector<std::string> notes;

  void note(const std::string& text) { notes.push_back(text); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      currentPass = false;
      notes.push_back("FAILED: " + what);
    }
  }

  void run(int id, const std::string& title, double timeLimitSeconds,
           const std::function<void()>& body) {
    currentPass = true;
    notes.clear();
    auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception& e) {
      currentPass = false;
      notes.push_back(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (timeLimitSeconds > 0 && elapsed > timeLimitSeconds) {
      currentPass = false;
      notes.push_back("runtime " + std::to_string(elapsed) + "s exceeds limit " +
                      std::to_string(timeLimitSeconds) + "s");
    }
    if (!currentPass) ++failures;
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", currentPass ? "PASS" : "FAIL", id,
                title.c_str(), elapsed);
    for (const std::string& n : notes) std::printf("         - %s\n", n.c_str());
    std::fflush(stdout);
  }
};

constexpr std::uint64_t kSeedBase = 777;

double rangeRule(int n) { return 2.0 * std::sqrt(std::log(double(n)) / n); }

std::vector<double> pointMass(int n, std::uint64_t seed) {
  std::vector<double> x0(n, 0.0);
  x0[(seed * 977) % n] = double(n);
  return x0;
}

std::vector<double> randomValues(int n, std::uint64_t seed) {
  Rng rng(seed * 31 + 7);
  std::vector<double> x0(n);
  for (double& v : x0) v = rng.nextDouble();
  return x0;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// dense matrix power, used where a criterion asks for explicit powers
std::vector<double> densePower(const LiftedChain& chain, int t) {
  int n = chain.states;
  std::vector<double> m(size_t(n) * n, 0.0), next(m.size());
  for (int i = 0; i < n; ++i) m[size_t(i) * n + i] = 1.0;
  for (int step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double v = m[size_t(i) * n + k];
        if (v == 0.0) continue;
        for (const auto& [j, w] : chain.rows[k]) next[size_t(i) * n + j] += v * w;
      }
    m.swap(next);
  }
  return m;
}

struct GeometricSample {
  Network net;
  DirectionalNeighborhood nbrs;
};

GeometricSample classifiedSample(int n, double r, std::uint64_t seed) {
  // classification can fail on thin samples; scan forward deterministically
  for (std::uint64_t s = seed;; ++s) {
    GeometricSample out;
    out.net = sample_geometric(n, r, s);
    try {
      out.nbrs = classify_neighbors(out.net);
      return out;
    } catch (const Error&) {}
  }
}

struct ClusteredSample {
  Network net;
  Clustering cl;
};

bool tryClusteredSample(int n, double r, std::uint64_t seed, ClusteredSample& out) {
  out.net = sample_geometric(n, r, seed);
  out.cl = distributed_clustering(out.net, seed);
  try {
    build_induced_graph(out.net, out.cl, r);
    return true;
  } catch (const Error&) {
    return false;
  }
}

ClusteredSample clusteredSample(int n, double r, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    ClusteredSample out;
    if (tryClusteredSample(n, r, s, out)) return out;
  }
}

} // namespace

int main() {
  Harness h;

  // ---------------------------------------------------------------- 1
  h.run(1, "lattice chain doubly stochastic with uniform stationary", 10.0, [&] {
    for (int k : {2, 4, 8, 16}) {
      LiftedChain chain = build_grid_chain(k);
      double rowDev = chain.maxRowSumDeviation();
      double colDev = 0.0;
      for (double s : chain.columnSums()) colDev = std::max(colDev, std::abs(s - 1.0));
      Distribution pi = stationary(chain, 1e-12);
      double uniform = 1.0 / chain.states;
      double err = 0.0;
      for (double v : pi.p) err = std::max(err, std::abs(v - uniform));
      h.note("k=" + std::to_string(k) + ": row dev " + fmt(rowDev) + ", col dev " + fmt(colDev) +
             ", max |pi - 1/(4k^2)| = " + fmt(err));
      h.require(rowDev <= 1e-12, "row sums at k=" + std::to_string(k));
      h.require(colDev <= 1e-12, "column sums at k=" + std::to_string(k));
      h.require(err <= 1e-9, "uniform stationary at k=" + std::to_string(k));
    }
  });

  // ---------------------------------------------------------------- 2
  h.run(2, "6k-step transition floor on the lattice chain", 60.0, [&] {
    for (int k : {4, 8}) {
      LiftedChain chain = build_grid_chain(k);
      auto power = densePower(chain, 6 * k);
      double minEntry = *std::min_element(power.begin(), power.end());
      double bound = std::pow(2.0, -12.0) / (4.0 * k * k);
      h.note("k=" + std::to_string(k) + ": min entry of P^(6k) = " + fmt(minEntry) +
             ", floor " + fmt(bound));
      h.require(minEntry >= bound, "transition floor at k=" + std::to_string(k));
    }
  });

  // ---------------------------------------------------------------- 3
  h.run(3, "lattice averaging time scales linearly in k", 120.0, [&] {
    // the averaging time is a supremum over inputs; probe it with point
    // masses at canonical starts and keep the worst
    auto worstTime = [&](int k, double eps) {
      LiftedChain chain = build_grid_chain(k);
      int worst = -1;
      for (int node : {gridId(0, 0, k), gridId(k / 2, 0, k), gridId(k / 2, k / 2, k)}) {
        std::vector<double> x0(size_t(k) * k, 0.0);
        x0[node] = double(k) * k;
        ConsensusRun run = run_pa1(chain, x0, eps, 100000);
        h.require(run.converged, "grid run k=" + std::to_string(k));
        worst = std::max(worst, run.iterations());
      }
      return worst;
    };
    std::vector<std::pair<double, double>> points;
    for (int k : {4, 8, 16, 32}) {
      int t = worstTime(k, 1e-3);
      points.push_back({double(k), double(t)});
      h.note("k=" + std::to_string(k) + ": T_ave(1e-3) = " + std::to_string(t));
    }
    ScalingFit fit = scaling_fit(points);
    h.note("log-log slope " + fmt(fit.slope) + " (r2 " + fmt(fit.r2) + ")");
    h.require(fit.slope >= 0.8 && fit.slope <= 1.2, "slope in [0.8, 1.2]");

    LiftedChain chain = build_grid_chain(16);
    std::vector<double> x0(256, 0.0);
    x0[0] = 256.0;
    ConsensusRun run = run_pa1(chain, x0, 1e-6, 100000);
    int t3 = averaging_time(run, 1e-3), t6 = averaging_time(run, 1e-6);
    h.note("k=16: T(1e-6)/T(1e-3) = " + std::to_string(t6) + "/" + std::to_string(t3) + " = " +
           fmt(double(t6) / t3));
    h.require(t3 > 0 && t6 > 0 && double(t6) / t3 <= 2.5, "tolerance factor <= 2.5");
  });

  // ---------------------------------------------------------------- 4
  h.run(4, "fill time bounds the mixing time on the k=8 lattice", 120.0, [&] {
    LiftedChain chain = build_grid_chain(8);
    Distribution pi = stationary(chain, 1e-13);
    for (double eps : {1e-3, 1e-6}) {
      for (double c : {0.5, 0.9}) {
        int tFill = fill_time(chain, pi, c, 3000);
        int tMix = mixing_time(chain, pi, eps, 3000);
        double bound = (std::log(1.0 / eps) / std::log(1.0 / c) + 1.0) * tFill;
        h.note("eps=" + fmt(eps) + " c=" + fmt(c) + ": T_mix " + std::to_string(tMix) +
               " <= bound " + fmt(bound) + " (T_fill " + std::to_string(tFill) + ")");
        h.require(tFill > 0 && tMix > 0 && tMix <= bound,
                  "bound at eps=" + fmt(eps) + " c=" + fmt(c));
      }
    }
  });

  // ---------------------------------------------------------------- 5
  h.run(5, "value and weight sums conserved on every run", 0.0, [&] {
    double worstMass = 0.0, worstWeight = 0.0;
    int runs = 0;
    auto absorb = [&](const ConsensusRun& run) {
      worstMass = std::max(worstMass, run.massDrift);
      worstWeight = std::max(worstWeight, run.weightDrift);
      ++runs;
    };
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      {
        LiftedChain chain = build_grid_chain(8);
        absorb(run_pa1(chain, randomValues(64, seed), 1e-3, 100000));
      }
      int n = 300;
      double r = rangeRule(n);
      GeometricSample g = classifiedSample(n, r, seed * kSeedBase + n);
      double p = default_turning_probability(r);
      absorb(run_pa2(build_lada_chain(g.net, g.nbrs, p), randomValues(n, seed), 1e-3, 100000));
      absorb(run_pa1(build_ladau_chain(g.net, g.nbrs, p), randomValues(n, seed), 1e-3, 100000));
      absorb(run_pa1(build_baseline_chain(g.net), randomValues(n, seed), 1e-3, 200000));
      ClusteredSample c = clusteredSample(n, r, seed * kSeedBase + n);
      absorb(run_clada(c.net, c.cl, randomValues(n, seed), p, 1e-3, 100000));
      // tessellation coverage needs the larger range rule
      double rt = std::sqrt(20.0 * std::log(double(n)) / n);
      for (std::uint64_t s = seed * kSeedBase + n;; ++s) {
        Network net = sample_geometric(n, rt, s);
        try {
          Clustering cl = tessellation_clusters(net, rt);
          absorb(run_centralized_grid(net, cl, randomValues(n, seed), 1e-3, 100000));
          break;
        } catch (const Error&) {}
      }
    }
    h.note(std::to_string(runs) + " runs; worst mass drift " + fmt(worstMass) +
           ", worst weight drift " + fmt(worstWeight));
    h.require(worstMass <= 1e-9, "mass conservation within 1e-9");
    h.require(worstWeight <= 1e-9, "weight conservation within 1e-9");
  });

  // ---------------------------------------------------------------- 6
  h.run(6, "directional chain beats the reversible baseline in scaling", 900.0, [&] {
    std::vector<std::pair<double, double>> ladaPts, basePts;
    std::vector<int> sizes = {250, 500, 1000, 2000};
    for (int n : sizes) {
      double r = rangeRule(n);
      std::vector<double> tLada, tBase;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GeometricSample g = classifiedSample(n, r, seed * kSeedBase + n);
        std::vector<double> x0 = pointMass(n, seed);
        LiftedChain lc = build_lada_chain(g.net, g.nbrs, default_turning_probability(r));
        ConsensusRun lr = run_pa2(lc, x0, 1e-3, 200000);
        LiftedChain bc = build_baseline_chain(g.net);
        ConsensusRun br = run_pa1(bc, x0, 1e-3, 500000);
        h.require(lr.converged && br.converged, "runs converge at n=" + std::to_string(n));
        tLada.push_back(lr.iterations());
        tBase.push_back(br.iterations());
      }
      double ml = median(tLada), mb = median(tBase);
      h.note("n=" + std::to_string(n) + " (1/r=" + fmt(1.0 / r) + "): lada median " + fmt(ml) +
             ", baseline median " + fmt(mb));
      if (n >= 500) h.require(ml < mb, "lada faster at n=" + std::to_string(n));
      ladaPts.push_back({1.0 / r, ml});
      basePts.push_back({1.0 / r, mb});
    }
    ScalingFit lf = scaling_fit(ladaPts), bf = scaling_fit(basePts);
    h.note("lada slope " + fmt(lf.slope) + " (r2 " + fmt(lf.r2) + "), baseline slope " +
           fmt(bf.slope) + " (r2 " + fmt(bf.r2) + ")");
    h.require(lf.slope >= 0.7 && lf.slope <= 1.3, "lada slope in [0.7, 1.3]");
    h.require(bf.slope >= 1.6 && bf.slope <= 2.4, "baseline slope in [1.6, 2.4]");
  });

  // ---------------------------------------------------------------- 7
  h.run(7, "lifting aggregation identities round-trip", 0.0, [&] {
    auto check = [&](const std::string& name, const LiftedChain& chain) {
      Distribution pi = stationary(chain, 1e-12);
      LiftedChain collapsed = collapse(chain, pi);
      Distribution nodePi = aggregate_stationary(chain, pi);
      bool ok = validate_lifting(chain, collapsed, pi, nodePi, 1e-9);
      h.note(name + ": validate_lifting = " + (ok ? "true" : "false"));
      h.require(ok, name + " round-trip");
    };
    check("grid k=8", build_grid_chain(8));
    int n = 400;
    double r = rangeRule(n);
    GeometricSample g = classifiedSample(n, r, kSeedBase + n);
    check("lada n=400", build_lada_chain(g.net, g.nbrs, default_turning_probability(r)));
    check("lada-u n=400", build_ladau_chain(g.net, g.nbrs, default_turning_probability(r)));
  });

  // ---------------------------------------------------------------- 8
  h.run(8, "cluster iteration reproduces the expanded-graph trajectories", 0.0, [&] {
    for (int n : {200, 500}) {
      double r = rangeRule(n);
      double p = default_turning_probability(r);
      double worst = 0.0;
      int done = 0;
      for (std::uint64_t seed = 1; done < 20; ++seed) {
        ClusteredSample c;
        if (!tryClusteredSample(n, r, seed * kSeedBase + n, c)) continue;
        ++done;
        std::vector<double> x0 = randomValues(n, seed);
        ConsensusRun clusterRun = run_clada(c.net, c.cl, x0, p, 1e-3, 100000);

        std::vector<double> equalized(n);
        for (int m = 0; m < c.cl.clusterCount(); ++m) {
          double sum = 0.0;
          for (int i : c.cl.members[m]) sum += x0[i];
          for (int i : c.cl.members[m]) equalized[i] = sum / c.cl.memberCount[m];
        }
        LiftedChain hat =
            build_lada_chain_from_sets(n, hat_graph_neighborhood(c.net, c.cl), p);
        ConsensusRun flatRun = run_pa2(hat, equalized, 1e-3, 100000);

        h.require(clusterRun.iterations() == flatRun.iterations(),
                  "halting iteration equal (n=" + std::to_string(n) + ")");
        size_t steps = std::min(clusterRun.errorTrace.size(), flatRun.errorTrace.size());
        for (size_t t = 0; t < steps; ++t)
          worst = std::max(worst, std::abs(clusterRun.errorTrace[t] - flatRun.errorTrace[t]));
        for (int i = 0; i < n; ++i)
          worst = std::max(worst,
                           std::abs(clusterRun.finalEstimates[i] - flatRun.finalEstimates[i]));
      }
      h.note("n=" + std::to_string(n) + ": 20 seeds, worst trajectory deviation " + fmt(worst));
      h.require(worst <= 1e-12, "deviation within 1e-12 at n=" + std::to_string(n));
    }
  });

  // ---------------------------------------------------------------- 9
  h.run(9, "clustering invariants over 50 samples", 0.0, [&] {
    int n = 500;
    double r = rangeRule(n);
    double invR2 = 1.0 / (r * r);
    int kLowPass = 0, clusters = 0, dm4Pass = 0, allSectorPass = 0, dm4PhysicalPass = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Network net = sample_geometric(n, r, 1000 + seed);
      Clustering cl = distributed_clustering(net, 2000 + seed);
      // total partition
      std::vector<int> count(cl.clusterCount(), 0);
      bool partition = true;
      for (int i = 0; i < n; ++i) {
        if (cl.assignment[i] < 0 || cl.assignment[i] >= cl.clusterCount())
          partition = false;
        else
          ++count[cl.assignment[i]];
      }
      for (int m = 0; m < cl.clusterCount(); ++m)
        if (count[m] != cl.memberCount[m] || cl.assignment[cl.heads[m]] != m) partition = false;
      h.require(partition, "total partition at seed " + std::to_string(seed));
      // heads pairwise farther than r apart
      bool spaced = true;
      for (int a = 0; a < cl.clusterCount() && spaced; ++a)
        for (int b = a + 1; b < cl.clusterCount(); ++b) {
          double dx = net.positions[cl.heads[a]].x - net.positions[cl.heads[b]].x;
          double dy = net.positions[cl.heads[a]].y - net.positions[cl.heads[b]].y;
          if (!(std::sqrt(dx * dx + dy * dy) > r)) {
            spaced = false;
            break;
          }
        }
      h.require(spaced, "head spacing at seed " + std::to_string(seed));
      compute_cluster_adjacency(net, cl);
      h.require(cl.clusterCount() <= 2.0 * invR2, "K <= 2/r^2 at seed " + std::to_string(seed));
      if (cl.clusterCount() >= invR2 / M_PI) ++kLowPass;
      std::vector<Vec2> heads(cl.clusterCount());
      for (int m = 0; m < cl.clusterCount(); ++m) heads[m] = net.positions[cl.heads[m]];
      auto sets = classify_positions(heads, cl.clusterAdjacency, 3.0 * r);
      for (int m = 0; m < cl.clusterCount(); ++m) {
        ++clusters;
        h.require(cl.clusterAdjacency[m].size() <= 48,
                  "d_m <= 48 at seed " + std::to_string(seed));
        if (cl.clusterAdjacency[m].size() >= 4) ++dm4PhysicalPass;
        int total = 0, minDir = 1 << 20;
        for (int l = 0; l < 4; ++l) {
          total += sets.degree(m, l);
          minDir = std::min(minDir, sets.degree(m, l));
        }
        if (total >= 4) ++dm4Pass;
        if (minDir >= 1) ++allSectorPass;
      }
    }
    double dm4Rate = 100.0 * dm4Pass / clusters;
    h.note("K lower bound rate " + std::to_string(kLowPass) + "/50; d_m>=4 rate " +
           fmt(dm4Rate) + "% over " + std::to_string(clusters) + " clusters (physical-only " +
           fmt(100.0 * dm4PhysicalPass / clusters) + "%, all-sectors " +
           fmt(100.0 * allSectorPass / clusters) + "%)");
    h.require(kLowPass >= 45, "K >= 1/(pi r^2) on >= 90% of samples");
    h.require(dm4Rate >= 90.0, "d_m >= 4 on >= 90% of clusters");
  });

  // ---------------------------------------------------------------- 10
  h.run(10, "message counts: n per iteration flat, ~1/r^2 clustered", 0.0, [&] {
    std::vector<std::pair<double, double>> ratioPts;
    double prevRatio = 1e300;
    for (int n : {250, 1000, 4000}) {
      double r = rangeRule(n);
      GeometricSample g = classifiedSample(n, r, kSeedBase + n);
      LiftedChain lc = build_lada_chain(g.net, g.nbrs, default_turning_probability(r));
      ConsensusRun lr = run_pa2(lc, pointMass(n, 1), 1e-3, 200000);
      attach_messages(lr, count_messages(MessageScheme::Lada, n, nullptr));
      h.require(lr.messages.perIteration == n, "flat messages = n at n=" + std::to_string(n));

      // per-iteration cost of the clustered scheme, median over 5 clusterings
      std::vector<double> msgs;
      int got = 0;
      for (std::uint64_t s = kSeedBase + n; got < 5; ++s) {
        ClusteredSample c;
        if (!tryClusteredSample(n, r, s, c)) continue;
        ++got;
        ConsensusRun cr = run_clada(c.net, c.cl, pointMass(n, 1),
                                    default_turning_probability(r), 1e-3, 200000);
        long long K = c.cl.clusterCount();
        long long bound = 51 * K + 2 * c.cl.adjacentPairCount();
        h.require(cr.messages.perIteration <= bound,
                  "clustered message bound at n=" + std::to_string(n));
        msgs.push_back(double(cr.messages.perIteration));
      }
      double ratio = median(msgs) / double(lr.messages.perIteration);
      h.note("n=" + std::to_string(n) + ": clustered median " + fmt(median(msgs)) +
             " msgs/iter over 5 clusterings, flat " +
             std::to_string(lr.messages.perIteration) + ", ratio " + fmt(ratio));
      h.require(ratio < prevRatio, "ratio decreases at n=" + std::to_string(n));
      prevRatio = ratio;
      ratioPts.push_back({double(n), ratio});
    }
    ScalingFit fit = scaling_fit(ratioPts);
    h.note("ratio slope vs n = " + fmt(fit.slope));
    h.require(fit.slope < 0.0, "ratio trend decreasing");
  });

  // ---------------------------------------------------------------- 11
  h.run(11, "uniform-stationary variant: doubly stochastic, comparable speed", 0.0, [&] {
    int n = 500;
    double r = std::cbrt(std::log(double(n)) / n);
    double p = default_turning_probability(r);
    std::vector<double> tU, tL;
    double colDev = 0.0, piErr = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GeometricSample g = classifiedSample(n, r, seed * kSeedBase + n);
      LiftedChain u = build_ladau_chain(g.net, g.nbrs, p);
      for (double s : u.columnSums()) colDev = std::max(colDev, std::abs(s - 1.0));
      Distribution pi = stationary(u, 1e-12);
      for (double v : pi.p) piErr = std::max(piErr, std::abs(v - 1.0 / u.states));
      std::vector<double> x0 = pointMass(n, seed);
      ConsensusRun ur = run_pa1(u, x0, 1e-3, 100000);
      h.require(ur.converged, "uniform-variant run converges");
      LiftedChain l = build_lada_chain(g.net, g.nbrs, p);
      ConsensusRun lr = run_pa2(l, x0, 1e-3, 100000);
      tU.push_back(ur.iterations());
      tL.push_back(lr.iterations());
    }
    double mu = median(tU), ml = median(tL);
    h.note("column dev " + fmt(colDev) + ", max |pi - 1/(4n)| = " + fmt(piErr));
    h.note("median T_ave(1e-3): uniform-variant " + fmt(mu) + ", ratio-variant " + fmt(ml) +
           ", factor " + fmt(mu / ml));
    h.require(colDev <= 1e-12, "doubly stochastic within 1e-12");
    h.require(piErr <= 1e-9, "uniform stationary");
    h.require(mu / ml <= 3.0, "averaging time within 3x of the ratio variant");
  });

  // ---------------------------------------------------------------- 12
  h.run(12, "conductance bounds: exhaustive vs axis cuts vs fill floor", 0.0, [&] {
    // exhaustive <= axis on tiny instances
    double worstGap = -1e300;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      int n = 10 + int(seed % 5);
      Network net = sample_geometric(n, 0.55, seed * 17 + 3);
      LiftedChain walk = build_baseline_chain(net);
      Distribution pi = stationary(walk, 1e-13);
      double exact = brute_force_conductance(walk, pi);
      double axis = axis_cut_conductance(walk, net.positions, pi);
      worstGap = std::max(worstGap, exact - axis);
      h.require(exact <= axis + 1e-12, "exhaustive <= axis cut at seed " + std::to_string(seed));
    }
    h.note("10 tiny instances, worst (exact - axis) = " + fmt(worstGap));

    // axis-cut conductance of the collapsed directional chain scales like r
    std::vector<std::pair<double, double>> phiPts;
    for (int n : {250, 500, 1000, 2000}) {
      double r = rangeRule(n);
      GeometricSample g = classifiedSample(n, r, kSeedBase + n);
      LiftedChain lc = build_lada_chain(g.net, g.nbrs, default_turning_probability(r));
      Distribution pi = stationary(lc, 1e-12);
      LiftedChain col = collapse(lc, pi);
      Distribution nodePi = aggregate_stationary(lc, pi);
      double phi = axis_cut_conductance(col, g.net.positions, nodePi);
      phiPts.push_back({r, phi});
      h.note("n=" + std::to_string(n) + ": axis-cut value " + fmt(phi));
      if (n <= 500) {
        int tFill = fill_time(lc, pi, 0.5, 600);
        double floor = (1.0 / phi) / (1.0 - 0.5) * 0.5;
        h.note("  T_fill(1/2) = " + std::to_string(tFill) + " vs floor " + fmt(floor));
        h.require(tFill > 0 && tFill >= floor, "fill floor at n=" + std::to_string(n));
      }
    }
    ScalingFit fit = scaling_fit(phiPts);
    h.note("axis-cut slope vs r = " + fmt(fit.slope) + " (r2 " + fmt(fit.r2) + ")");
    h.require(fit.slope >= 0.7 && fit.slope <= 1.3, "conductance slope in [0.7, 1.3]");
  });

  std::printf("%s: %d of 12 criteria failed\n", h.failures == 0 ? "SUCCESS" : "FAILURE",
              h.failures);
  return h.failures == 0 ? 0 : 1;
}
