#include "lada/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "lada/rng.hpp"

namespace lada {

Clustering tessellation_clusters(const Network& net, double r) {
  if (net.kind != Network::Kind::Geometric)
    fail(ErrorCode::InvalidArgument, "tessellation_clusters: expects a geometric network");
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "tessellation_clusters: r must be positive");

  int k = static_cast<int>(std::ceil(std::sqrt(5.0) / r));
  Clustering cl;
  cl.fromTessellation = true;
  cl.tessellationSide = k;
  cl.heads.assign(static_cast<size_t>(k) * k, -1);
  cl.memberCount.assign(cl.heads.size(), 0);
  cl.members.resize(cl.heads.size());
  cl.assignment.resize(net.nodeCount());

  for (int i = 0; i < net.nodeCount(); ++i) {
    int sx = std::min(static_cast<int>(net.positions[i].x * k), k - 1);
    int sy = std::min(static_cast<int>(net.positions[i].y * k), k - 1);
    int m = gridId(sx, sy, k);
    cl.assignment[i] = m;
    cl.members[m].push_back(i);
    ++cl.memberCount[m];
    if (cl.heads[m] < 0 || i < cl.heads[m]) cl.heads[m] = i;
  }
  for (size_t m = 0; m < cl.heads.size(); ++m)
    if (cl.heads[m] < 0)
      fail(ErrorCode::EmptyCluster,
           "tessellation_clusters: square " + std::to_string(m) + " of " +
               std::to_string(cl.heads.size()) + " is empty (resample or enlarge r)");
  return cl;
}

Clustering distributed_clustering(const Network& net, const std::vector<int>& seeds,
                                  std::uint64_t rngSeed) {
  int n = net.nodeCount();
  if (static_cast<int>(seeds.size()) != n)
    fail(ErrorCode::InvalidArgument, "distributed_clustering: seeds size mismatch");
  for (int s : seeds)
    if (s < 1) fail(ErrorCode::InvalidArgument, "distributed_clustering: seeds must be >= 1");
  for (int i = 0; i < n; ++i)
    for (int j : net.adjacency[i])
      if (seeds[i] == seeds[j])
        fail(ErrorCode::InvalidArgument,
             "distributed_clustering: adjacent nodes " + std::to_string(i) + " and " +
                 std::to_string(j) + " share seed " + std::to_string(seeds[i]));

  Clustering cl;
  cl.assignment.assign(n, -1);
  std::vector<int> timers(seeds);
  Rng tieBreak(rngSeed);

  int undecided = n;
  while (undecided > 0) {
    // decrement every running timer; expired nodes initiate clusters
    std::vector<int> newHeads;
    for (int i = 0; i < n; ++i) {
      if (cl.assignment[i] >= 0) continue;
      if (--timers[i] == 0) newHeads.push_back(i);
    }
    for (int h : newHeads) {
      cl.assignment[h] = cl.clusterCount();
      cl.heads.push_back(h);
      cl.members.push_back({h});
      cl.memberCount.push_back(1);
      --undecided;
    }
    // undecided neighbors join; simultaneous initiators are tie-broken at random
    for (int i = 0; i < n; ++i) {
      if (cl.assignment[i] >= 0) continue;
      std::vector<int> offers;
      for (int j : net.adjacency[i])
        if (std::binary_search(newHeads.begin(), newHeads.end(), j)) offers.push_back(j);
      if (offers.empty()) continue;
      int pick = offers.size() == 1
                     ? offers[0]
                     : offers[tieBreak.nextBounded(static_cast<std::uint64_t>(offers.size()))];
      int m = cl.assignment[pick];
      cl.assignment[i] = m;
      cl.members[m].push_back(i);
      ++cl.memberCount[m];
      timers[i] = 0;
      --undecided;
    }
  }
  for (auto& mm : cl.members) std::sort(mm.begin(), mm.end());
  return cl;
}

Clustering distributed_clustering(const Network& net, std::uint64_t rngSeed) {
  int n = net.nodeCount();
  std::vector<int> seeds(n);
  std::iota(seeds.begin(), seeds.end(), 1);
  Rng rng(rngSeed);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.nextBounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(seeds[i], seeds[j]);
  }
  return distributed_clustering(net, seeds, rngSeed + 0x9e3779b97f4a7c15ULL);
}

void compute_cluster_adjacency(const Network& net, Clustering& cl) {
  if (cl.adjacencyBuilt) return;
  int K = cl.clusterCount();
  std::map<std::pair<int, int>, std::array<int, 2>> gateway;
  for (int u = 0; u < net.nodeCount(); ++u) {
    for (int v : net.adjacency[u]) {
      int a = cl.assignment[u], b = cl.assignment[v];
      if (a >= b) continue;  // each cross pair handled once, from the lower cluster
      std::array<int, 2> link{u, v};
      auto [it, inserted] = gateway.try_emplace({a, b}, link);
      if (!inserted && link < it->second) it->second = link;
    }
  }
  cl.clusterAdjacency.assign(K, {});
  cl.gatewayPairs.clear();
  cl.gatewayLinks.clear();
  cl.gatewayNodes.clear();
  for (const auto& [pair, link] : gateway) {
    cl.clusterAdjacency[pair.first].push_back(pair.second);
    cl.clusterAdjacency[pair.second].push_back(pair.first);
    cl.gatewayPairs.push_back({pair.first, pair.second});
    cl.gatewayLinks.push_back(link);
    cl.gatewayNodes.push_back(link[0]);
    cl.gatewayNodes.push_back(link[1]);
  }
  for (auto& adj : cl.clusterAdjacency) std::sort(adj.begin(), adj.end());
  std::sort(cl.gatewayNodes.begin(), cl.gatewayNodes.end());
  cl.gatewayNodes.erase(std::unique(cl.gatewayNodes.begin(), cl.gatewayNodes.end()),
                        cl.gatewayNodes.end());
  cl.adjacencyBuilt = true;
}

void build_induced_graph(const Network& net, Clustering& cl, double r) {
  compute_cluster_adjacency(net, cl);
  std::vector<Vec2> headPos(cl.clusterCount());
  for (int m = 0; m < cl.clusterCount(); ++m) headPos[m] = net.positions[cl.heads[m]];

  cl.clusterSets = classify_positions(headPos, cl.clusterAdjacency, 3.0 * r);
  for (int m = 0; m < cl.clusterCount(); ++m)
    for (int l = 0; l < 4; ++l)
      if (cl.clusterSets.degree(m, l) == 0)
        fail(ErrorCode::EmptySector, "build_induced_graph: cluster " + std::to_string(m) +
                                         " has no direction-" + std::to_string(l) + " neighbors");

  cl.neighborNodeCount.assign(cl.clusterCount(), {0, 0, 0, 0});
  for (int m = 0; m < cl.clusterCount(); ++m) {
    for (int l = 0; l < 4; ++l) {
      long long total = 0;
      const DirectionalSets& sets = cl.clusterSets.node[m][l];
      for (int m2 : sets.physical) total += cl.memberCount[m2];
      for (int m2 : sets.virtualMatch) total += cl.memberCount[m2];
      for (int m2 : sets.virtualMismatch) total += cl.memberCount[m2];
      cl.neighborNodeCount[m][l] = total;
    }
  }
  cl.directionalBuilt = true;
}

DirectionalNeighborhood hat_graph_neighborhood(const Network& net, const Clustering& cl) {
  if (!cl.directionalBuilt)
    fail(ErrorCode::InvalidArgument, "hat_graph_neighborhood: induced graph not built");
  DirectionalNeighborhood out;
  out.node.resize(net.nodeCount());
  for (int i = 0; i < net.nodeCount(); ++i) {
    int m = cl.assignment[i];
    for (int l = 0; l < 4; ++l) {
      const DirectionalSets& sets = cl.clusterSets.node[m][l];
      auto expand = [&](const std::vector<int>& clusters, std::vector<int>& into) {
        for (int m2 : clusters)
          into.insert(into.end(), cl.members[m2].begin(), cl.members[m2].end());
        std::sort(into.begin(), into.end());
      };
      expand(sets.physical, out.node[i][l].physical);
      expand(sets.virtualMatch, out.node[i][l].virtualMatch);
      expand(sets.virtualMismatch, out.node[i][l].virtualMismatch);
    }
  }
  return out;
}

namespace {

void checkRunInput(const Network& net, const Clustering& cl, const std::vector<double>& x0) {
  if (static_cast<int>(x0.size()) != net.nodeCount())
    fail(ErrorCode::InvalidArgument, "run: x0 size does not match node count");
  if (static_cast<int>(cl.assignment.size()) != net.nodeCount())
    fail(ErrorCode::InvalidArgument, "run: clustering does not match network");
  double sum = 0.0;
  for (double v : x0) {
    if (v < 0.0) fail(ErrorCode::InvalidArgument, "run: x0 must be nonnegative");
    sum += v;
  }
  if (!(sum > 0.0)) fail(ErrorCode::InvalidArgument, "run: x0 must not be all zero");
}

} // namespace

ConsensusRun run_clada(const Network& net, const Clustering& cl, const std::vector<double>& x0,
                       double p, double eps, int maxIter) {
  if (!cl.directionalBuilt)
    fail(ErrorCode::InvalidArgument, "run_clada: induced graph not built");
  if (!(p > 0.0) || !(p < 1.0))
    fail(ErrorCode::InvalidArgument, "run_clada: turning probability must be in (0, 1)");
  checkRunInput(net, cl, x0);
  int K = cl.clusterCount();
  for (int m = 0; m < K; ++m)
    for (int l = 0; l < 4; ++l)
      if (cl.neighborNodeCount[m][l] <= 0)
        fail(ErrorCode::EmptySector, "run_clada: cluster " + std::to_string(m) +
                                         " has no member mass in direction " + std::to_string(l));

  // Cluster-level update operator, assembled straight from the head update
  // rule: the east value of m gathers member-count weighted shares from its
  // west-side neighbor clusters, with match neighbors contributing their
  // reversed value (the bounce). Stored row-per-target for a plain matvec.
  int S = 4 * K;
  auto slot = [](int m, int l) { return m * 4 + l; };
  std::vector<std::vector<std::pair<int, double>>> update(S);
  for (int m = 0; m < K; ++m) {
    for (int l = 0; l < 4; ++l) {
      auto& row = update[slot(m, l)];
      const DirectionalSets& incoming = cl.clusterSets.node[m][opposite(l)];
      auto addFrom = [&](const std::vector<int>& srcs, bool bounced) {
        for (int m2 : srcs) {
          int denomDir = bounced ? opposite(l) : l;
          double share = static_cast<double>(cl.memberCount[m2]) /
                         static_cast<double>(cl.neighborNodeCount[m2][denomDir]);
          row.emplace_back(slot(m2, bounced ? opposite(l) : l), (1.0 - p) * share);
          row.emplace_back(slot(m2, turnLeft(l)), 0.5 * p * share);
          row.emplace_back(slot(m2, turnRight(l)), 0.5 * p * share);
        }
      };
      addFrom(incoming.physical, false);
      addFrom(incoming.virtualMismatch, false);
      addFrom(incoming.virtualMatch, true);
      std::sort(row.begin(), row.end());
    }
  }
  auto applyUpdate = [&](const std::vector<double>& in, std::vector<double>& out) {
    out.assign(S, 0.0);
    for (int t = 0; t < S; ++t) {
      double acc = 0.0;
      for (const auto& [src, w] : update[t]) acc += w * in[src];
      out[t] = acc;
    }
  };

  ConsensusRun run;
  run.tag = ChainTag::LADA;
  run.nodes = net.nodeCount();
  double mass0 = std::accumulate(x0.begin(), x0.end(), 0.0);
  run.xAve = mass0 / net.nodeCount();

  std::vector<double> y(S), w(S), next(S);
  for (int m = 0; m < K; ++m) {
    double clusterSum = 0.0;
    for (int i : cl.members[m]) clusterSum += x0[i];
    for (int l = 0; l < 4; ++l) {
      y[slot(m, l)] = clusterSum / (4.0 * cl.memberCount[m]);
      w[slot(m, l)] = 0.25;
    }
  }

  std::vector<double> estimate(K);
  for (int t = 0;; ++t) {
    double err = 0.0, mass = 0.0, weight = 0.0;
    for (int m = 0; m < K; ++m) {
      double sy = 0.0, sw = 0.0;
      for (int l = 0; l < 4; ++l) {
        sy += y[slot(m, l)];
        sw += w[slot(m, l)];
      }
      if (sw <= 1e-15)
        fail(ErrorCode::Degenerate, "run_clada: weight sum vanished at cluster " +
                                        std::to_string(m) + ", iteration " + std::to_string(t));
      estimate[m] = sy / sw;
      err += cl.memberCount[m] * std::abs(estimate[m] - run.xAve);
      mass += cl.memberCount[m] * sy;
      weight += cl.memberCount[m] * sw;
    }
    run.massDrift = std::max(run.massDrift, std::abs(mass - mass0) / mass0);
    run.weightDrift =
        std::max(run.weightDrift, std::abs(weight - net.nodeCount()) / net.nodeCount());
    run.errorTrace.push_back(err / mass0);
    if (run.errorTrace.back() <= eps) {
      run.converged = true;
      break;
    }
    if (t >= maxIter) break;
    applyUpdate(y, next);
    y.swap(next);
    applyUpdate(w, next);
    w.swap(next);
  }

  run.finalEstimates.resize(net.nodeCount());
  for (int i = 0; i < net.nodeCount(); ++i) run.finalEstimates[i] = estimate[cl.assignment[i]];
  run.messages = count_messages(MessageScheme::Clada, net.nodeCount(), &cl);
  return run;
}

ConsensusRun run_centralized_grid(const Network& net, const Clustering& cl,
                                  const std::vector<double>& x0, double eps, int maxIter) {
  if (!cl.fromTessellation)
    fail(ErrorCode::InvalidArgument, "run_centralized_grid: expects a tessellation clustering");
  checkRunInput(net, cl, x0);
  int k = cl.tessellationSide;
  int K = cl.clusterCount();

  ConsensusRun run;
  run.tag = ChainTag::GridLADA;
  run.nodes = net.nodeCount();
  double mass0 = std::accumulate(x0.begin(), x0.end(), 0.0);
  run.xAve = mass0 / net.nodeCount();

  std::vector<double> y(static_cast<size_t>(4) * K, 0.0), next(y.size());
  for (int m = 0; m < K; ++m) {
    double clusterSum = 0.0;
    for (int i : cl.members[m]) clusterSum += x0[i];
    for (int l = 0; l < 4; ++l) y[liftedState(m, l)] = 0.25 * clusterSum;
  }
  // a single square aggregates everything at initialization; there is no
  // lattice chain to run
  LiftedChain chain;
  if (k >= 2) chain = build_grid_chain(k);

  double scale = static_cast<double>(k) * k / net.nodeCount();
  std::vector<double> estimate(K);
  for (int t = 0;; ++t) {
    double err = 0.0, mass = 0.0;
    for (int m = 0; m < K; ++m) {
      double sy = 0.0;
      for (int l = 0; l < 4; ++l) sy += y[liftedState(m, l)];
      estimate[m] = scale * sy;
      err += cl.memberCount[m] * std::abs(estimate[m] - run.xAve);
      mass += sy;
    }
    run.massDrift = std::max(run.massDrift, std::abs(mass - mass0) / mass0);
    run.errorTrace.push_back(err / mass0);
    if (run.errorTrace.back() <= eps) {
      run.converged = true;
      break;
    }
    if (t >= maxIter || k < 2) break;
    chain.applyTranspose(y, next);
    y.swap(next);
  }

  run.finalEstimates.resize(net.nodeCount());
  for (int i = 0; i < net.nodeCount(); ++i) run.finalEstimates[i] = estimate[cl.assignment[i]];
  run.messages = count_messages(MessageScheme::CentralizedGrid, net.nodeCount(), &cl);
  return run;
}

MessageModel count_messages(MessageScheme scheme, int nodeCount, const Clustering* cl) {
  switch (scheme) {
    case MessageScheme::Lada:
      return lada_message_model(nodeCount);
    case MessageScheme::Clada: {
      if (!cl || !cl->adjacencyBuilt)
        fail(ErrorCode::InvalidArgument, "count_messages: clustering with adjacency required");
      MessageModel m;
      m.perIteration = 2 * cl->adjacentPairCount() +
                       static_cast<long long>(cl->gatewayNodes.size()) + cl->clusterCount();
      return m;
    }
    case MessageScheme::CentralizedGrid: {
      if (!cl || !cl->fromTessellation)
        fail(ErrorCode::InvalidArgument, "count_messages: tessellation clustering required");
      int k = cl->tessellationSide;
      MessageModel m;
      m.perIteration = 2LL * (2LL * k * (k - 1)) + cl->clusterCount();
      m.oneTime = nodeCount;
      return m;
    }
  }
  fail(ErrorCode::InvalidArgument, "count_messages: unknown scheme");
}

} // namespace lada
