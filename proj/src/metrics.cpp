#include "lada/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lada {

namespace {

// Dense t-step transition rows, advanced one multiplication per step.
class PowerTracker {
public:
  explicit PowerTracker(const LiftedChain& chain) : chain_(chain), n_(chain.states) {
    rows_.assign(static_cast<size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) rows_[static_cast<size_t>(i) * n_ + i] = 1.0;
    scratch_.resize(n_);
  }

  void step() {
    for (int i = 0; i < n_; ++i) {
      double* row = &rows_[static_cast<size_t>(i) * n_];
      std::fill(scratch_.begin(), scratch_.end(), 0.0);
      for (int k = 0; k < n_; ++k) {
        double v = row[k];
        if (v == 0.0) continue;
        for (const auto& [t, w] : chain_.rows[k]) scratch_[t] += v * w;
      }
      std::copy(scratch_.begin(), scratch_.end(), row);
    }
  }

  double worstTotalVariation(const std::vector<double>& pi) const {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double* row = &rows_[static_cast<size_t>(i) * n_];
      double tv = 0.0;
      for (int j = 0; j < n_; ++j) tv += std::abs(row[j] - pi[j]);
      worst = std::max(worst, 0.5 * tv);
    }
    return worst;
  }

  bool filled(const std::vector<double>& pi, double c) const {
    for (int i = 0; i < n_; ++i) {
      const double* row = &rows_[static_cast<size_t>(i) * n_];
      for (int j = 0; j < n_; ++j)
        if (!(row[j] > (1.0 - c) * pi[j])) return false;
    }
    return true;
  }

  double minEntry() const { return *std::min_element(rows_.begin(), rows_.end()); }

private:
  const LiftedChain& chain_;
  int n_;
  std::vector<double> rows_;
  std::vector<double> scratch_;
};

void checkCap(const LiftedChain& chain, int stateCap, const char* what) {
  if (chain.states > stateCap)
    fail(ErrorCode::TooLarge, std::string(what) + ": " + std::to_string(chain.states) +
                                  " states exceed the dense cap of " + std::to_string(stateCap));
}

} // namespace

int mixing_time(const LiftedChain& chain, const Distribution& pi, double eps, int tMax,
                int stateCap) {
  checkCap(chain, stateCap, "mixing_time");
  if (pi.size() != chain.states)
    fail(ErrorCode::InvalidArgument, "mixing_time: stationary dimension mismatch");
  PowerTracker tracker(chain);
  for (int t = 0; t <= tMax; ++t) {
    if (t > 0) tracker.step();
    if (tracker.worstTotalVariation(pi.p) <= eps) return t;
  }
  return -1;
}

int fill_time(const LiftedChain& chain, const Distribution& pi, double c, int tMax,
              int stateCap) {
  checkCap(chain, stateCap, "fill_time");
  if (pi.size() != chain.states)
    fail(ErrorCode::InvalidArgument, "fill_time: stationary dimension mismatch");
  if (!(c > 0.0) || !(c < 1.0))
    fail(ErrorCode::InvalidArgument, "fill_time: c must be in (0, 1)");
  PowerTracker tracker(chain);
  for (int t = 0; t <= tMax; ++t) {
    if (t > 0) tracker.step();
    if (tracker.filled(pi.p, c)) return t;
  }
  return -1;
}

bool check_fill_mix_bound(const LiftedChain& chain, const Distribution& pi, double eps, double c,
                          int tMax, int stateCap) {
  int tFill = fill_time(chain, pi, c, tMax, stateCap);
  int tMix = mixing_time(chain, pi, eps, tMax, stateCap);
  if (tFill < 0 || tMix < 0)
    fail(ErrorCode::NotConverged, "check_fill_mix_bound: metric exceeded budget");
  double bound = (std::log(1.0 / eps) / std::log(1.0 / c) + 1.0) * tFill;
  return tMix <= bound;
}

double axis_cut_conductance(const LiftedChain& chain, const std::vector<Vec2>& nodePositions,
                            const Distribution& pi) {
  if (static_cast<int>(nodePositions.size()) != chain.nodes)
    fail(ErrorCode::InvalidArgument, "axis_cut_conductance: positions do not match nodes");
  if (pi.size() != chain.states)
    fail(ErrorCode::InvalidArgument, "axis_cut_conductance: stationary dimension mismatch");
  int S = chain.states;

  double best = -1.0;
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> coords;
    coords.reserve(chain.nodes);
    for (int v = 0; v < chain.nodes; ++v)
      coords.push_back(axis == 0 ? nodePositions[v].x : nodePositions[v].y);
    std::vector<double> levels(coords);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    for (size_t li = 0; li + 1 < levels.size(); ++li) {
      double threshold = levels[li];
      double massS = 0.0;
      std::vector<char> inS(S, 0);
      for (int s = 0; s < S; ++s) {
        if (coords[chain.collapseMap[s]] <= threshold) {
          inS[s] = 1;
          massS += pi.p[s];
        }
      }
      double massC = 1.0 - massS;
      if (massS < 0.25 || massC < 0.25) continue;
      double flow = 0.0;
      for (int s = 0; s < S; ++s) {
        if (!inS[s]) continue;
        for (const auto& [t, w] : chain.rows[s])
          if (!inS[t]) flow += pi.p[s] * w;
      }
      double value = flow / (massS * massC);
      if (best < 0.0 || value < best) best = value;
    }
  }
  if (best < 0.0)
    fail(ErrorCode::NoCut, "axis_cut_conductance: no cut leaves 1/4 stationary mass per side");
  return best;
}

double brute_force_conductance(const LiftedChain& chain, const Distribution& pi) {
  int S = chain.states;
  if (S > 16)
    fail(ErrorCode::TooLarge, "brute_force_conductance: more than 16 states");
  if (pi.size() != S)
    fail(ErrorCode::InvalidArgument, "brute_force_conductance: stationary dimension mismatch");

  double best = -1.0;
  for (unsigned mask = 1; mask + 1 < (1u << S); ++mask) {
    double massS = 0.0, flow = 0.0;
    for (int s = 0; s < S; ++s) {
      if (!(mask & (1u << s))) continue;
      massS += pi.p[s];
      for (const auto& [t, w] : chain.rows[s])
        if (!(mask & (1u << t))) flow += pi.p[s] * w;
    }
    double massC = 1.0 - massS;
    if (!(massS > 0.0) || !(massC > 0.0)) continue;
    double value = flow / (massS * massC);
    if (best < 0.0 || value < best) best = value;
  }
  if (best < 0.0) fail(ErrorCode::NoCut, "brute_force_conductance: no admissible subset");
  return best;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    fail(ErrorCode::InvalidArgument, "scaling_fit: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  double n = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      fail(ErrorCode::InvalidArgument, "scaling_fit: points must be strictly positive");
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  double varX = sxx - sx * sx / n;
  double varY = syy - sy * sy / n;
  double covXY = sxy - sx * sy / n;
  if (!(varX > 0.0)) fail(ErrorCode::InvalidArgument, "scaling_fit: degenerate x values");
  ScalingFit fit;
  fit.slope = covXY / varX;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r2 = varY > 0.0 ? (covXY * covXY) / (varX * varY) : 1.0;
  return fit;
}

StationaryStats stationary_stats(const Distribution& pi) {
  StationaryStats st;
  st.min = pi.min();
  st.max = pi.max();
  st.ratio = st.min > 0.0 ? st.max / st.min : 0.0;
  return st;
}

} // namespace lada
