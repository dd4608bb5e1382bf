#include "lada/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace lada {

const char* tag_name(ChainTag tag) {
  switch (tag) {
    case ChainTag::GridLADA: return "grid-lada";
    case ChainTag::LADA: return "lada";
    case ChainTag::LADAU: return "lada-u";
    case ChainTag::Collapsed: return "collapsed";
    case ChainTag::Baseline: return "baseline";
  }
  return "?";
}

void LiftedChain::applyTranspose(const std::vector<double>& in, std::vector<double>& out) const {
  out.assign(states, 0.0);
  applyTransposeInto(in.data(), out.data());
}

void LiftedChain::applyTransposeInto(const double* in, double* out) const {
  for (int s = 0; s < states; ++s) {
    double v = in[s];
    if (v == 0.0) continue;
    for (const auto& [t, w] : rows[s]) out[t] += w * v;
  }
}

double LiftedChain::maxRowSumDeviation() const {
  double worst = 0.0;
  for (const auto& row : rows) {
    double sum = 0.0;
    for (const auto& [t, w] : row) sum += w;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

std::vector<double> LiftedChain::columnSums() const {
  std::vector<double> sums(states, 0.0);
  for (const auto& row : rows)
    for (const auto& [t, w] : row) sums[t] += w;
  return sums;
}

long long LiftedChain::entryCount() const {
  long long count = 0;
  for (const auto& row : rows) count += static_cast<long long>(row.size());
  return count;
}

double LiftedChain::entry(int from, int to) const {
  for (const auto& [t, w] : rows[from])
    if (t == to) return w;
  return 0.0;
}

ChainBuilder::ChainBuilder(ChainTag tag, int states, std::vector<int> collapseMap) {
  chain_.tag = tag;
  chain_.states = states;
  chain_.collapseMap = std::move(collapseMap);
  chain_.nodes = chain_.collapseMap.empty()
                     ? 0
                     : 1 + *std::max_element(chain_.collapseMap.begin(), chain_.collapseMap.end());
  chain_.rows.resize(states);
}

void ChainBuilder::add(int from, int to, double probability) {
  chain_.rows[from].emplace_back(to, probability);
}

LiftedChain ChainBuilder::finish() {
  for (auto& row : chain_.rows) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t keep = 0;
    for (size_t i = 0; i < row.size(); ++i) {
      if (keep > 0 && row[keep - 1].first == row[i].first) {
        row[keep - 1].second += row[i].second;
      } else {
        row[keep++] = row[i];
      }
    }
    row.resize(keep);
  }
  return std::move(chain_);
}

namespace {

std::vector<int> liftedCollapseMap(int nodeCount) {
  std::vector<int> map(static_cast<size_t>(nodeCount) * 4);
  for (int v = 0; v < nodeCount; ++v)
    for (int l = 0; l < 4; ++l) map[liftedState(v, l)] = v;
  return map;
}

std::vector<int> identityMap(int n) {
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  return map;
}

} // namespace

LiftedChain build_grid_chain(int k) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "build_grid_chain: k must be >= 2");
  int n = k * k;
  ChainBuilder builder(ChainTag::GridLADA, 4 * n, liftedCollapseMap(n));
  double straight = 1.0 - 1.0 / k;
  double turn = 1.0 / (2.0 * k);

  // step one lattice cell in direction l from (x, y); false if off the grid
  auto step = [k](int x, int y, int l, int& nx, int& ny) {
    nx = x + (l == kEast ? 1 : l == kWest ? -1 : 0);
    ny = y + (l == kNorth ? 1 : l == kSouth ? -1 : 0);
    return nx >= 0 && nx < k && ny >= 0 && ny < k;
  };

  for (int y = 0; y < k; ++y) {
    for (int x = 0; x < k; ++x) {
      int node = gridId(x, y, k);
      for (int l = 0; l < 4; ++l) {
        int from = liftedState(node, l);
        int nx, ny;
        // keep direction; bounce into the opposite state at the border
        if (step(x, y, l, nx, ny))
          builder.add(from, liftedState(gridId(nx, ny, k), l), straight);
        else
          builder.add(from, liftedState(node, opposite(l)), straight);
        // quarter turns enter the adjacent node in the turn direction; at a
        // border the movement reflects into the opposite state of this node
        for (int t : {turnLeft(l), turnRight(l)}) {
          if (step(x, y, t, nx, ny))
            builder.add(from, liftedState(gridId(nx, ny, k), t), turn);
          else
            builder.add(from, liftedState(node, opposite(t)), turn);
        }
      }
    }
  }
  return builder.finish();
}

namespace {

void checkTurningProbability(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    fail(ErrorCode::InvalidArgument, "turning probability must be in (0, 1)");
}

void checkDegrees(const DirectionalNeighborhood& nbrs) {
  for (int i = 0; i < nbrs.size(); ++i)
    for (int l = 0; l < 4; ++l)
      if (nbrs.degree(i, l) == 0)
        fail(ErrorCode::EmptySector, "chain construction: node " + std::to_string(i) +
                                         " has directional degree 0 in direction " +
                                         std::to_string(l));
}

} // namespace

LiftedChain build_lada_chain_from_sets(int nodeCount, const DirectionalNeighborhood& nbrs,
                                       double p) {
  checkTurningProbability(p);
  if (nbrs.size() != nodeCount)
    fail(ErrorCode::InvalidArgument, "build_lada_chain: neighborhood/node count mismatch");
  checkDegrees(nbrs);

  ChainBuilder builder(ChainTag::LADA, 4 * nodeCount, liftedCollapseMap(nodeCount));
  for (int j = 0; j < nodeCount; ++j) {
    for (int m = 0; m < 4; ++m) {
      int from = liftedState(j, m);
      // forward: direction-m values reach direction-m states of physical and
      // mismatch targets; match targets receive them reversed (the bounce)
      double forward = (1.0 - p) / nbrs.degree(j, m);
      for (int i : nbrs.node[j][m].physical) builder.add(from, liftedState(i, m), forward);
      for (int i : nbrs.node[j][m].virtualMismatch) builder.add(from, liftedState(i, m), forward);
      for (int i : nbrs.node[j][m].virtualMatch)
        builder.add(from, liftedState(i, opposite(m)), forward);
      // turns: mass p/2 toward each orthogonal direction l, spread over the
      // same structure that direction-l values travel through
      for (int l : {turnLeft(m), turnRight(m)}) {
        double viaForward = 0.5 * p / nbrs.degree(j, l);
        for (int i : nbrs.node[j][l].physical) builder.add(from, liftedState(i, l), viaForward);
        for (int i : nbrs.node[j][l].virtualMismatch)
          builder.add(from, liftedState(i, l), viaForward);
        double viaBounce = 0.5 * p / nbrs.degree(j, opposite(l));
        for (int i : nbrs.node[j][opposite(l)].virtualMatch)
          builder.add(from, liftedState(i, l), viaBounce);
      }
    }
  }
  return builder.finish();
}

LiftedChain build_lada_chain(const Network& net, const DirectionalNeighborhood& nbrs, double p) {
  return build_lada_chain_from_sets(net.nodeCount(), nbrs, p);
}

LiftedChain build_ladau_chain(const Network& net, const DirectionalNeighborhood& nbrs, double p) {
  checkTurningProbability(p);
  if (nbrs.size() != net.nodeCount())
    fail(ErrorCode::InvalidArgument, "build_ladau_chain: neighborhood/node count mismatch");
  checkDegrees(nbrs);
  int dMax = nbrs.maxDegree();

  ChainBuilder builder(ChainTag::LADAU, 4 * net.nodeCount(), liftedCollapseMap(net.nodeCount()));
  for (int i = 0; i < net.nodeCount(); ++i) {
    for (int l = 0; l < 4; ++l) {
      int from = liftedState(i, l);
      builder.add(from, liftedState(i, turnLeft(l)), 0.5 * p);
      builder.add(from, liftedState(i, turnRight(l)), 0.5 * p);
      double forward = (1.0 - p) / dMax;
      for (int j : nbrs.node[i][l].physical) builder.add(from, liftedState(j, l), forward);
      for (int j : nbrs.node[i][l].virtualMismatch) builder.add(from, liftedState(j, l), forward);
      for (int j : nbrs.node[i][l].virtualMatch)
        builder.add(from, liftedState(j, opposite(l)), forward);
      // remaining forward mass reflects into the opposite state of this node,
      // equalizing the incoming mass across states
      double leftover = (1.0 - p) * (1.0 - static_cast<double>(nbrs.degree(i, l)) / dMax);
      if (leftover > 0.0) builder.add(from, liftedState(i, opposite(l)), leftover);
    }
  }
  return builder.finish();
}

LiftedChain build_baseline_chain(const Network& net) {
  if (!is_connected(net)) fail(ErrorCode::Disconnected, "build_baseline_chain: network disconnected");
  int n = net.nodeCount();
  ChainBuilder builder(ChainTag::Baseline, n, identityMap(n));
  for (int i = 0; i < n; ++i) {
    double self = 1.0;
    for (int j : net.adjacency[i]) {
      double w = 0.5 * std::min(1.0 / net.adjacency[i].size(), 1.0 / net.adjacency[j].size());
      builder.add(i, j, w);
      self -= w;
    }
    builder.add(i, i, self);
  }
  return builder.finish();
}

double default_turning_probability(double r) { return 0.5 * r; }

double advance_turning_probability(double r) {
  double mu = 4.0 * std::sqrt(2.0) * r / (3.0 * M_PI);
  return 1.0 / std::ceil(1.0 / mu);
}

double Distribution::min() const {
  return p.empty() ? 0.0 : *std::min_element(p.begin(), p.end());
}

double Distribution::max() const {
  return p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
}

ErgodicityReport verify_ergodic(const LiftedChain& chain) {
  ErgodicityReport report;
  int n = chain.states;
  if (n == 0) return report;

  std::vector<std::vector<int>> fwd(n), rev(n);
  for (int s = 0; s < n; ++s) {
    for (const auto& [t, w] : chain.rows[s]) {
      if (w > 0.0) {
        fwd[s].push_back(t);
        rev[t].push_back(s);
      }
    }
  }
  auto reachesAll = [n](const std::vector<std::vector<int>>& g) {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          q.push(v);
        }
    }
    return count == n;
  };
  report.irreducible = reachesAll(fwd) && reachesAll(rev);
  if (!report.irreducible) return report;

  // period = gcd over all edges of (level(u) + 1 - level(v)) on a BFS tree;
  // standard cycle-length gcd computation for strongly connected graphs
  std::vector<int> level(n, -1);
  std::queue<int> q;
  q.push(0);
  level[0] = 0;
  long long g = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : fwd[u]) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      } else {
        g = std::gcd(g, static_cast<long long>(level[u]) + 1 - level[v]);
      }
    }
  }
  report.period = static_cast<int>(g < 0 ? -g : g);
  return report;
}

Distribution stationary(const LiftedChain& chain, double tol, int maxIter) {
  ErgodicityReport erg = verify_ergodic(chain);
  if (!erg.aperiodic())
    fail(ErrorCode::InvalidArgument,
         std::string("stationary: chain is ") +
             (erg.irreducible ? "periodic (period " + std::to_string(erg.period) + ")"
                              : "reducible"));

  int n = chain.states;
  Distribution dist;
  dist.p.assign(n, 1.0 / n);
  std::vector<double> next(n);
  for (int iter = 1; iter <= maxIter; ++iter) {
    chain.applyTranspose(dist.p, next);
    double residual = 0.0;
    for (int s = 0; s < n; ++s) residual += std::abs(next[s] - dist.p[s]);
    // damped update: same fixed point, contracts rotational modes
    for (int s = 0; s < n; ++s) dist.p[s] = 0.5 * (dist.p[s] + next[s]);
    if (residual <= tol) {
      double sum = std::accumulate(dist.p.begin(), dist.p.end(), 0.0);
      for (double& v : dist.p) v /= sum;
      dist.residual = residual;
      dist.iterations = iter;
      return dist;
    }
    dist.residual = residual;
    dist.iterations = iter;
  }
  fail(ErrorCode::NotConverged, "stationary: residual " + std::to_string(dist.residual) +
                                    " after " + std::to_string(maxIter) + " iterations");
}

Distribution aggregate_stationary(const LiftedChain& chain, const Distribution& pi) {
  if (pi.size() != chain.states)
    fail(ErrorCode::InvalidArgument, "aggregate_stationary: dimension mismatch");
  Distribution nodePi;
  nodePi.p.assign(chain.nodes, 0.0);
  for (int s = 0; s < chain.states; ++s) nodePi.p[chain.collapseMap[s]] += pi.p[s];
  nodePi.residual = pi.residual;
  nodePi.iterations = pi.iterations;
  return nodePi;
}

LiftedChain collapse(const LiftedChain& chain, const Distribution& pi) {
  if (pi.size() != chain.states)
    fail(ErrorCode::InvalidArgument, "collapse: stationary dimension mismatch");
  Distribution nodePi = aggregate_stationary(chain, pi);
  for (int v = 0; v < chain.nodes; ++v)
    if (!(nodePi.p[v] > 0.0))
      fail(ErrorCode::InvalidArgument,
           "collapse: node " + std::to_string(v) + " carries zero stationary mass");

  ChainBuilder builder(ChainTag::Collapsed, chain.nodes, identityMap(chain.nodes));
  for (int s = 0; s < chain.states; ++s) {
    int u = chain.collapseMap[s];
    double scale = pi.p[s] / nodePi.p[u];
    for (const auto& [t, w] : chain.rows[s]) builder.add(u, chain.collapseMap[t], scale * w);
  }
  return builder.finish();
}

bool validate_lifting(const LiftedChain& lifted, const LiftedChain& collapsed,
                      const Distribution& piLifted, const Distribution& piCollapsed,
                      double tol) {
  if (piLifted.size() != lifted.states || piCollapsed.size() != collapsed.states) return false;
  if (collapsed.states != lifted.nodes) return false;
  for (int s = 0; s < lifted.states; ++s)
    if (lifted.collapseMap[s] < 0 || lifted.collapseMap[s] >= collapsed.states) return false;

  // node stationary mass must aggregate fiber by fiber
  std::vector<double> mass(collapsed.states, 0.0);
  for (int s = 0; s < lifted.states; ++s) mass[lifted.collapseMap[s]] += piLifted.p[s];
  for (int v = 0; v < collapsed.states; ++v)
    if (std::abs(mass[v] - piCollapsed.p[v]) > tol) return false;

  // every collapsed transition entry must match the pi-weighted aggregation
  std::vector<double> expected(collapsed.states, 0.0);
  for (int u = 0; u < collapsed.states; ++u) {
    if (!(piCollapsed.p[u] > 0.0)) return false;
    std::fill(expected.begin(), expected.end(), 0.0);
    for (int s = 0; s < lifted.states; ++s) {
      if (lifted.collapseMap[s] != u) continue;
      double scale = piLifted.p[s] / piCollapsed.p[u];
      for (const auto& [t, w] : lifted.rows[s]) expected[lifted.collapseMap[t]] += scale * w;
    }
    std::vector<double> actual(collapsed.states, 0.0);
    for (const auto& [t, w] : collapsed.rows[u]) actual[t] += w;
    for (int v = 0; v < collapsed.states; ++v)
      if (std::abs(expected[v] - actual[v]) > tol) return false;
  }
  return true;
}

} // namespace lada
