#include "lada/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lada {

namespace {

struct Fibers {
  std::vector<std::vector<int>> statesOf;  // node -> states
};

Fibers fibersOf(const LiftedChain& chain) {
  Fibers f;
  f.statesOf.resize(chain.nodes);
  for (int s = 0; s < chain.states; ++s) f.statesOf[chain.collapseMap[s]].push_back(s);
  return f;
}

void checkInput(const LiftedChain& chain, const std::vector<double>& x0) {
  if (static_cast<int>(x0.size()) != chain.nodes)
    fail(ErrorCode::InvalidArgument, "run: x0 size does not match node count");
  double sum = 0.0;
  for (double v : x0) {
    if (v < 0.0) fail(ErrorCode::InvalidArgument, "run: x0 must be nonnegative");
    sum += v;
  }
  if (!(sum > 0.0)) fail(ErrorCode::InvalidArgument, "run: x0 must not be all zero");
}

double l1Error(const std::vector<double>& x, double xAve) {
  double err = 0.0;
  for (double v : x) err += std::abs(v - xAve);
  return err;
}

} // namespace

ConsensusRun run_pa1(const LiftedChain& chain, const std::vector<double>& x0, double eps,
                     int maxIter) {
  if (chain.tag != ChainTag::GridLADA && chain.tag != ChainTag::LADAU &&
      chain.tag != ChainTag::Baseline)
    fail(ErrorCode::InvalidArgument, "run_pa1: chain must be doubly stochastic (grid-lada, "
                                     "lada-u or baseline)");
  checkInput(chain, x0);
  Fibers fibers = fibersOf(chain);

  ConsensusRun run;
  run.tag = chain.tag;
  run.nodes = chain.nodes;

  std::vector<double> y(chain.states), next(chain.states), x(chain.nodes);
  for (int v = 0; v < chain.nodes; ++v)
    for (int s : fibers.statesOf[v]) y[s] = x0[v] / fibers.statesOf[v].size();

  double mass0 = std::accumulate(x0.begin(), x0.end(), 0.0);
  run.xAve = mass0 / chain.nodes;

  for (int t = 0;; ++t) {
    for (int v = 0; v < chain.nodes; ++v) {
      double sum = 0.0;
      for (int s : fibers.statesOf[v]) sum += y[s];
      x[v] = sum;
    }
    double mass = std::accumulate(y.begin(), y.end(), 0.0);
    run.massDrift = std::max(run.massDrift, std::abs(mass - mass0) / mass0);
    run.errorTrace.push_back(l1Error(x, run.xAve) / mass0);
    if (run.errorTrace.back() <= eps) {
      run.converged = true;
      break;
    }
    if (t >= maxIter) break;
    chain.applyTranspose(y, next);
    y.swap(next);
  }
  run.finalEstimates = x;
  run.finalValues = y;
  return run;
}

ConsensusRun run_pa2(const LiftedChain& chain, const std::vector<double>& x0, double eps,
                     int maxIter) {
  if (chain.tag != ChainTag::LADA && chain.tag != ChainTag::Collapsed)
    fail(ErrorCode::InvalidArgument, "run_pa2: chain must be lada or collapsed");
  checkInput(chain, x0);
  Fibers fibers = fibersOf(chain);

  ConsensusRun run;
  run.tag = chain.tag;
  run.nodes = chain.nodes;

  std::vector<double> y(chain.states), w(chain.states), next(chain.states), x(chain.nodes);
  for (int v = 0; v < chain.nodes; ++v) {
    double share = 1.0 / fibers.statesOf[v].size();
    for (int s : fibers.statesOf[v]) {
      y[s] = x0[v] * share;
      w[s] = share;
    }
  }

  double mass0 = std::accumulate(x0.begin(), x0.end(), 0.0);
  run.xAve = mass0 / chain.nodes;

  for (int t = 0;; ++t) {
    for (int v = 0; v < chain.nodes; ++v) {
      double sy = 0.0, sw = 0.0;
      for (int s : fibers.statesOf[v]) {
        sy += y[s];
        sw += w[s];
      }
      if (sw <= 1e-15)
        fail(ErrorCode::Degenerate, "run_pa2: weight sum vanished at node " + std::to_string(v) +
                                        ", iteration " + std::to_string(t));
      x[v] = sy / sw;
    }
    double mass = std::accumulate(y.begin(), y.end(), 0.0);
    double weight = std::accumulate(w.begin(), w.end(), 0.0);
    run.massDrift = std::max(run.massDrift, std::abs(mass - mass0) / mass0);
    run.weightDrift = std::max(run.weightDrift, std::abs(weight - chain.nodes) / chain.nodes);
    run.errorTrace.push_back(l1Error(x, run.xAve) / mass0);
    if (run.errorTrace.back() <= eps) {
      run.converged = true;
      break;
    }
    if (t >= maxIter) break;
    chain.applyTranspose(y, next);
    y.swap(next);
    chain.applyTranspose(w, next);
    w.swap(next);
  }
  run.finalEstimates = x;
  run.finalValues = y;
  run.finalWeights = w;
  return run;
}

int averaging_time(const ConsensusRun& run, double eps) {
  for (size_t t = 0; t < run.errorTrace.size(); ++t)
    if (run.errorTrace[t] <= eps) return static_cast<int>(t);
  return -1;
}

MessageModel lada_message_model(int nodeCount) {
  return MessageModel{nodeCount, 0};
}

void attach_messages(ConsensusRun& run, const MessageModel& model) { run.messages = model; }

} // namespace lada
