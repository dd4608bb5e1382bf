#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lada/lifting.hpp"
#include "lada/topology.hpp"

namespace lada {

inline constexpr int kDefaultStateCap = 4096;

// Smallest t <= tMax with max_i (1/2)||P^t(i,.) - pi||_1 <= eps, computed by
// stepping the full matrix of t-step transition rows. Returns -1 past the
// budget; refuses instances above the dense-matrix state cap.
int mixing_time(const LiftedChain& chain, const Distribution& pi, double eps, int tMax,
                int stateCap = kDefaultStateCap);

// Smallest t <= tMax with P^t(i,j) > (1-c) pi_j for every i, j; -1 past the
// budget.
int fill_time(const LiftedChain& chain, const Distribution& pi, double c, int tMax,
              int stateCap = kDefaultStateCap);

// Verifies T_mix(eps) <= (log(1/eps)/log(1/c) + 1) * T_fill(c) for this chain.
bool check_fill_mix_bound(const LiftedChain& chain, const Distribution& pi, double eps, double c,
                          int tMax, int stateCap = kDefaultStateCap);

// Minimum over axis-aligned half-plane cuts (sweeping both coordinates of the
// states' node positions, keeping only cuts with at least 1/4 stationary mass
// on each side) of Q(S, S-bar) / (pi(S) pi(S-bar)) with Q_ij = pi_i P_ij.
// An upper bound on the true conductance.
double axis_cut_conductance(const LiftedChain& chain, const std::vector<Vec2>& nodePositions,
                            const Distribution& pi);

// Exact conductance by enumerating all nonempty proper subsets; states <= 16.
double brute_force_conductance(const LiftedChain& chain, const Distribution& pi);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares on (log x, log y); needs >= 3 strictly positive points.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

struct StationaryStats {
  double min = 0.0;
  double max = 0.0;
  double ratio = 0.0;
};

StationaryStats stationary_stats(const Distribution& pi);

struct MetricsReport {
  int tMix = -1;
  int tFill = -1;
  double conductanceUpper = 0.0;
  std::optional<double> conductanceExact;
  double resistanceLower = 0.0;  // 1 / conductanceUpper
  StationaryStats stationary;
  std::optional<ScalingFit> scalingExponent;
};

} // namespace lada
