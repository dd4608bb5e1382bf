#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lada/engine.hpp"
#include "lada/topology.hpp"

namespace lada {

// A partition of the nodes into head-led clusters plus the induced
// cluster-level graph. Physical adjacency and gateway links are filled by
// compute_cluster_adjacency; the directional fields by build_induced_graph.
struct Clustering {
  std::vector<int> assignment;   // node -> cluster id
  std::vector<int> heads;        // cluster -> head node id
  std::vector<int> memberCount;  // cluster -> n_m
  std::vector<std::vector<int>> members;

  bool fromTessellation = false;
  int tessellationSide = 0;  // k, tessellation only

  // physical induced graph
  bool adjacencyBuilt = false;
  std::vector<std::vector<int>> clusterAdjacency;       // sorted cluster ids
  std::vector<std::array<int, 2>> gatewayPairs;         // adjacent pair (m1 < m2)
  std::vector<std::array<int, 2>> gatewayLinks;         // designated edge (u in m1, v in m2)
  std::vector<int> gatewayNodes;                        // distinct endpoints, sorted

  // directional induced graph (head positions, effective range 3r)
  bool directionalBuilt = false;
  DirectionalNeighborhood clusterSets;                  // indexed by cluster id
  std::vector<std::array<long long, 4>> neighborNodeCount;  // per cluster, per direction

  int clusterCount() const { return static_cast<int>(heads.size()); }
  long long adjacentPairCount() const { return static_cast<long long>(gatewayPairs.size()); }
};

// Assigns node (x, y) to square (floor(x*k), floor(y*k)) with k = ceil(sqrt5/r),
// clamped to k-1 on the far edges; cluster ids follow the lattice layout of
// make_grid. Every square must be occupied (EmptyCluster otherwise); the head
// is the lowest-id member.
Clustering tessellation_clusters(const Network& net, double r);

// Timer-based head election. Every node counts its seed down one per round;
// a node reaching zero undecided becomes a head, and undecided neighbors of
// the round's new heads join one of them (uniformly at random among
// simultaneous initiators, drawn from rngSeed). Seeds must be positive and
// distinct across every edge, which keeps heads pairwise non-adjacent.
Clustering distributed_clustering(const Network& net, const std::vector<int>& seeds,
                                  std::uint64_t rngSeed);

// Default seeding: a random permutation of 1..n drawn from rngSeed.
Clustering distributed_clustering(const Network& net, std::uint64_t rngSeed);

// Cluster adjacency from cross-cluster edges; per adjacent pair the
// lexicographically smallest cross edge becomes the designated gateway link.
void compute_cluster_adjacency(const Network& net, Clustering& cl);

// Directional classification of neighboring clusters by the sector rule on
// head positions, with mirror images across boundaries at effective range 3r
// (heads of adjacent clusters sit within 3r). Raises EmptySector naming
// (cluster, direction) when a sector is unpopulated. Also fills the aggregate
// member counts of each directional neighborhood.
void build_induced_graph(const Network& net, Clustering& cl, double r);

// Node-level expansion of the cluster classification: j is a type-l
// (match/mismatch) neighbor of i iff j's cluster is a type-l (match/mismatch)
// neighboring cluster of i's.
DirectionalNeighborhood hat_graph_neighborhood(const Network& net, const Clustering& cl);

// Cluster-level ratio iteration: heads hold per-direction value/weight pairs
// initialized from the cluster mean and advance them with member-count scaled
// directional sums; every member reads its head's ratio estimate.
ConsensusRun run_clada(const Network& net, const Clustering& cl, const std::vector<double>& x0,
                       double p, double eps, int maxIter);

// Tessellation-driven variant: the cluster sums ride the lattice chain of the
// tessellation and members read the occupancy-corrected fiber sum.
ConsensusRun run_centralized_grid(const Network& net, const Clustering& cl,
                                  const std::vector<double>& x0, double eps, int maxIter);

enum class MessageScheme { Lada, Clada, CentralizedGrid };

// Per-iteration transmission counts: n broadcasts for the flat algorithm;
// gateway exchanges + gateway-to-head forwards + head broadcasts for the
// cluster algorithms (plus the one-time aggregation sweep for the
// tessellation variant).
MessageModel count_messages(MessageScheme scheme, int nodeCount, const Clustering* cl);

} // namespace lada
