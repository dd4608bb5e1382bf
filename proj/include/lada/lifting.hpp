#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lada/topology.hpp"

namespace lada {

enum class ChainTag { GridLADA, LADA, LADAU, Collapsed, Baseline };

const char* tag_name(ChainTag tag);

// A sparse row-stochastic transition matrix. For the lifted constructions the
// state space is (node, direction) with state id 4*node + direction and
// collapseMap(s) = s/4; for node-level chains (Collapsed, Baseline) states are
// the nodes themselves. Rows keep their targets sorted so matrix-vector
// products are bit-reproducible.
struct LiftedChain {
  ChainTag tag = ChainTag::Collapsed;
  int states = 0;
  int nodes = 0;
  std::vector<int> collapseMap;                             // state -> node
  std::vector<std::vector<std::pair<int, double>>> rows;    // (target, probability)

  // out = P~^T in  (the value-propagation step of the linear iterations)
  void applyTranspose(const std::vector<double>& in, std::vector<double>& out) const;
  // out = in^T P~ viewed as a row distribution update (same memory pattern)
  void applyTransposeInto(const double* in, double* out) const;

  double maxRowSumDeviation() const;
  std::vector<double> columnSums() const;
  long long entryCount() const;
  double entry(int from, int to) const;  // 0 if absent
};

inline int liftedState(int node, int dir) { return node * 4 + dir; }

// Accumulating builder; parallel contributions to the same (from, to) pair sum.
class ChainBuilder {
public:
  ChainBuilder(ChainTag tag, int states, std::vector<int> collapseMap);
  void add(int from, int to, double probability);
  LiftedChain finish();

private:
  LiftedChain chain_;
};

// Lattice chain with straight-ahead probability 1-1/k, quarter-turn
// probabilities 1/(2k) each, and bounce-back at the borders (a border state
// redirects into the opposite direction of the same node). Doubly stochastic.
LiftedChain build_grid_chain(int k);

// Direction-lifted chain on a classified geometric network. Each state (j,l)
// spreads 1-p uniformly over its d_j^l forward targets -- direction-l states
// of physical/mismatch neighbors, opposite-direction states of match
// neighbors (the bounce) -- and turn mass p/2 toward each of the two
// orthogonal directions, routed through the same neighbor structure.
// Row-stochastic but in general not doubly stochastic.
LiftedChain build_lada_chain(const Network& net, const DirectionalNeighborhood& nbrs, double p);

// Same construction given only the directional sets (used for derived graphs
// whose adjacency is implied by the sets, e.g. the cluster-expanded graph).
LiftedChain build_lada_chain_from_sets(int nodeCount, const DirectionalNeighborhood& nbrs,
                                       double p);

// Uniform-stationary variant: forward mass (1-p)/d_max per target, turns stay
// on the node, and the shortfall (1-p)(1 - d_i^l/d_max) reflects into the
// opposite state of the same node. Doubly stochastic by construction.
LiftedChain build_ladau_chain(const Network& net, const DirectionalNeighborhood& nbrs, double p);

// Reversible comparator: lazy Metropolis walk targeting the uniform
// distribution, P_ij = min(1/deg(i), 1/deg(j))/2 off-diagonal.
LiftedChain build_baseline_chain(const Network& net);

// Turning-probability presets: the default p = r/2, and the expected-advance
// preset p = 1/ceil(1/mu) with mu = 4*sqrt(2)*r/(3*pi).
double default_turning_probability(double r);
double advance_turning_probability(double r);

struct Distribution {
  std::vector<double> p;
  double residual = 0.0;  // l1 norm of pi^T P - pi^T at acceptance
  int iterations = 0;

  int size() const { return static_cast<int>(p.size()); }
  double min() const;
  double max() const;
};

struct ErgodicityReport {
  bool irreducible = false;
  int period = 0;  // gcd of cycle lengths on the support graph (0 if reducible)
  bool aperiodic() const { return irreducible && period == 1; }
};

ErgodicityReport verify_ergodic(const LiftedChain& chain);

// Stationary distribution by damped power iteration on the support of the
// chain; iterates pi <- (pi + P~^T pi)/2, which has the same fixed point and
// converges for any irreducible chain. Fails NotConverged with the residual
// if the budget runs out.
Distribution stationary(const LiftedChain& chain, double tol = 1e-12, int maxIter = 2000000);

// Node marginals of a lifted stationary distribution.
Distribution aggregate_stationary(const LiftedChain& chain, const Distribution& pi);

// Node-level chain with P_uv = sum over fibers of (pi~_u / pi_u) P~_uv.
// Row-stochastic and conformant to the underlying network.
LiftedChain collapse(const LiftedChain& chain, const Distribution& pi);

// Checks the defining aggregation identities between a lifted chain and a
// node-level chain: node stationary mass within tol per node, and every
// collapsed transition entry within tol per node pair. Dimension or map
// mismatches return false rather than raising.
bool validate_lifting(const LiftedChain& lifted, const LiftedChain& collapsed,
                      const Distribution& piLifted, const Distribution& piCollapsed,
                      double tol = 1e-9);

} // namespace lada
