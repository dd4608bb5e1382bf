#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lada/error.hpp"

namespace lada {

// Direction indices. Sector l covers angles (l*pi/2 - pi/4, l*pi/2 + pi/4].
inline constexpr int kEast = 0;
inline constexpr int kNorth = 1;
inline constexpr int kWest = 2;
inline constexpr int kSouth = 3;

constexpr int opposite(int l) { return (l + 2) & 3; }
constexpr int turnLeft(int l) { return (l + 1) & 3; }
constexpr int turnRight(int l) { return (l + 3) & 3; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// A static network: either a k x k lattice (positions are integer lattice
// coordinates) or a geometric graph on the unit square where two nodes are
// adjacent iff their distance is in (0, r].
struct Network {
  enum class Kind { Grid, Geometric };

  Kind kind = Kind::Geometric;
  int gridSide = 0;        // k, Grid only
  double range = 0.0;      // r, Geometric only
  std::uint64_t seed = 0;  // seed actually used after connectivity resampling
  int resamples = 0;       // how many redraws were needed
  std::vector<Vec2> positions;
  std::vector<std::vector<int>> adjacency;  // sorted, symmetric, no self-loops

  int nodeCount() const { return static_cast<int>(positions.size()); }
  long long edgeCount() const;
};

// Grid node ids are y*k + x, counting from the south-west corner.
Network make_grid(int k);
inline int gridId(int x, int y, int k) { return y * k + x; }

// Draws n i.i.d. uniform positions on [0,1]^2 from Rng(seed). If the graph is
// disconnected the whole sample is redrawn with seed+1, seed+2, ... up to
// maxResample extra attempts; failure past that raises Disconnected with the
// attempt count. Exact positional coincidences are redrawn for the later node.
Network sample_geometric(int n, double r, std::uint64_t seed, int maxResample = 32);

bool is_connected(const Network& net);

// Per-node, per-direction neighbor sets. "physical" neighbors fall in the
// angular sector; the virtual categories come from mirror images across nearby
// boundaries of the unit square:
//   - virtualMatch (N~):   image sector equals the reflecting boundary's
//                          outward direction; these targets receive bounced
//                          (reversed) values in the lifted chains.
//   - virtualMismatch (N^): image sector differs from the boundary direction;
//                          they only compensate sector population.
struct DirectionalSets {
  std::vector<int> physical;
  std::vector<int> virtualMatch;
  std::vector<int> virtualMismatch;

  int degree() const {
    return static_cast<int>(physical.size() + virtualMatch.size() + virtualMismatch.size());
  }
};

struct DirectionalNeighborhood {
  std::vector<std::array<DirectionalSets, 4>> node;  // [i][l]

  int size() const { return static_cast<int>(node.size()); }
  int degree(int i, int l) const { return node[i][l].degree(); }
  int maxDegree() const;
  int minDegree() const;
};

// Sector of the vector to - from, in {0,1,2,3}. Sector 0 is (-pi/4, pi/4].
int sector_of(const Vec2& from, const Vec2& to);

// Directional classification over arbitrary positions/adjacency with the given
// range (used both for nodes and, with head positions and range 3r, for
// clusters). Does not require every sector to be populated.
DirectionalNeighborhood classify_positions(const std::vector<Vec2>& positions,
                                           const std::vector<std::vector<int>>& adjacency,
                                           double range);

// Node-level classification for a geometric network. Rejects Grid networks
// (the lattice chain encodes its directions itself) and raises EmptySector
// naming (i, l) if any directional degree is zero.
DirectionalNeighborhood classify_neighbors(const Network& net);

} // namespace lada
