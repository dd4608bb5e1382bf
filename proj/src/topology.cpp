#include "lada/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "lada/rng.hpp"

namespace lada {

long long Network::edgeCount() const {
  long long twice = 0;
  for (const auto& adj : adjacency) twice += static_cast<long long>(adj.size());
  return twice / 2;
}

Network make_grid(int k) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "make_grid: k must be >= 2, got " + std::to_string(k));
  Network net;
  net.kind = Network::Kind::Grid;
  net.gridSide = k;
  net.positions.resize(static_cast<size_t>(k) * k);
  net.adjacency.resize(net.positions.size());
  for (int y = 0; y < k; ++y) {
    for (int x = 0; x < k; ++x) {
      int id = gridId(x, y, k);
      net.positions[id] = {static_cast<double>(x), static_cast<double>(y)};
      auto& adj = net.adjacency[id];
      if (x + 1 < k) adj.push_back(gridId(x + 1, y, k));
      if (y + 1 < k) adj.push_back(gridId(x, y + 1, k));
      if (x > 0) adj.push_back(gridId(x - 1, y, k));
      if (y > 0) adj.push_back(gridId(x, y - 1, k));
      std::sort(adj.begin(), adj.end());
    }
  }
  return net;
}

namespace {

double dist2(const Vec2& a, const Vec2& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::vector<Vec2> drawPositions(int n, Rng& rng) {
  std::vector<Vec2> pos;
  pos.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec2 p{rng.nextDouble(), rng.nextDouble()};
    // exact coincidence with an earlier node: redraw (angle would be undefined)
    bool clash = true;
    while (clash) {
      clash = false;
      for (const Vec2& q : pos) {
        if (q.x == p.x && q.y == p.y) {
          p = {rng.nextDouble(), rng.nextDouble()};
          clash = true;
          break;
        }
      }
    }
    pos.push_back(p);
  }
  return pos;
}

void buildRangeAdjacency(Network& net, double r) {
  int n = net.nodeCount();
  net.adjacency.assign(n, {});
  double r2 = r * r;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d2 = dist2(net.positions[i], net.positions[j]);
      if (d2 > 0.0 && d2 <= r2) {
        net.adjacency[i].push_back(j);
        net.adjacency[j].push_back(i);
      }
    }
  }
  // j > i pushes keep each list sorted already; keep the sort as the contract
  for (auto& adj : net.adjacency) std::sort(adj.begin(), adj.end());
}

} // namespace

Network sample_geometric(int n, double r, std::uint64_t seed, int maxResample) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "sample_geometric: n must be >= 2");
  if (!(r > 0.0) || r > std::sqrt(2.0) + 1e-12)
    fail(ErrorCode::InvalidArgument, "sample_geometric: r must be in (0, sqrt(2)]");
  for (int attempt = 0; attempt <= maxResample; ++attempt) {
    Network net;
    net.kind = Network::Kind::Geometric;
    net.range = r;
    net.seed = seed + static_cast<std::uint64_t>(attempt);
    net.resamples = attempt;
    Rng rng(net.seed);
    net.positions = drawPositions(n, rng);
    buildRangeAdjacency(net, r);
    if (is_connected(net)) return net;
  }
  fail(ErrorCode::Disconnected,
       "sample_geometric: still disconnected after " + std::to_string(maxResample + 1) +
           " attempts (n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
}

bool is_connected(const Network& net) {
  int n = net.nodeCount();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v : net.adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

int DirectionalNeighborhood::maxDegree() const {
  int best = 0;
  for (const auto& dirs : node)
    for (const auto& s : dirs) best = std::max(best, s.degree());
  return best;
}

int DirectionalNeighborhood::minDegree() const {
  int best = node.empty() ? 0 : node[0][0].degree();
  for (const auto& dirs : node)
    for (const auto& s : dirs) best = std::min(best, s.degree());
  return best;
}

int sector_of(const Vec2& from, const Vec2& to) {
  double angle = std::atan2(to.y - from.y, to.x - from.x);
  constexpr double quarter = M_PI / 4.0;
  if (angle > -quarter && angle <= quarter) return kEast;
  if (angle > quarter && angle <= 3.0 * quarter) return kNorth;
  if (angle > -3.0 * quarter && angle <= -quarter) return kSouth;
  return kWest;  // (3pi/4, pi] and its -pi alias
}

namespace {

// Mirror images across unit-square boundaries. outward = direction pointing
// out of the square at that boundary.
struct Boundary {
  int outward;
  Vec2 (*reflect)(const Vec2&);
};

Vec2 reflectWest(const Vec2& p) { return {-p.x, p.y}; }
Vec2 reflectEast(const Vec2& p) { return {2.0 - p.x, p.y}; }
Vec2 reflectSouth(const Vec2& p) { return {p.x, -p.y}; }
Vec2 reflectNorth(const Vec2& p) { return {p.x, 2.0 - p.y}; }

constexpr Boundary kBoundaries[4] = {
    {kWest, reflectWest},
    {kEast, reflectEast},
    {kSouth, reflectSouth},
    {kNorth, reflectNorth},
};

} // namespace

DirectionalNeighborhood classify_positions(const std::vector<Vec2>& positions,
                                           const std::vector<std::vector<int>>& adjacency,
                                           double range) {
  int n = static_cast<int>(positions.size());
  DirectionalNeighborhood out;
  out.node.resize(n);
  double r2 = range * range;

  for (int i = 0; i < n; ++i) {
    const Vec2& pi = positions[i];

    for (int j : adjacency[i]) out.node[i][sector_of(pi, positions[j])].physical.push_back(j);

    // candidates for images: neighbors and the node itself
    auto consider = [&](int j, const Vec2& image, bool matchA, int dirA, bool matchB, int dirB) {
      double d2 = dist2(pi, image);
      if (d2 <= 0.0 || d2 > r2) return;
      int l = sector_of(pi, image);
      bool match = (matchA && l == dirA) || (matchB && l == dirB);
      auto& sets = out.node[i][l];
      (match ? sets.virtualMatch : sets.virtualMismatch).push_back(j);
    };

    auto eachCandidate = [&](auto&& fn) {
      fn(i);
      for (int j : adjacency[i]) fn(j);
    };

    for (const Boundary& b : kBoundaries) {
      eachCandidate([&](int j) {
        consider(j, b.reflect(positions[j]), true, b.outward, false, 0);
      });
    }
    // corner images: double reflection across each perpendicular boundary pair
    constexpr std::pair<int, int> corners[4] = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    for (auto [a, b] : corners) {
      eachCandidate([&](int j) {
        Vec2 image = kBoundaries[b].reflect(kBoundaries[a].reflect(positions[j]));
        consider(j, image, true, kBoundaries[a].outward, true, kBoundaries[b].outward);
      });
    }

    // the categories are sets: a node may appear in several (direction,
    // category) slots but at most once in each
    for (auto& sets : out.node[i]) {
      for (auto* v : {&sets.virtualMatch, &sets.virtualMismatch}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
      }
    }
  }
  return out;
}

DirectionalNeighborhood classify_neighbors(const Network& net) {
  if (net.kind != Network::Kind::Geometric)
    fail(ErrorCode::InvalidArgument, "classify_neighbors: expects a geometric network");
  DirectionalNeighborhood nbrs = classify_positions(net.positions, net.adjacency, net.range);
  for (int i = 0; i < nbrs.size(); ++i) {
    for (int l = 0; l < 4; ++l) {
      if (nbrs.degree(i, l) == 0)
        fail(ErrorCode::EmptySector, "classify_neighbors: node " + std::to_string(i) +
                                         " has no direction-" + std::to_string(l) +
                                         " neighbors (r too small for this sample)");
    }
  }
  return nbrs;
}

} // namespace lada
