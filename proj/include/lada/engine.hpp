#pragma once

#include <vector>

#include "lada/lifting.hpp"

namespace lada {

// Per-iteration message accounting attached to a finished run.
struct MessageModel {
  long long perIteration = 0;
  long long oneTime = 0;  // setup traffic (e.g. initial aggregation sweep)
};

// Result of a linear-iteration averaging run. errorTrace[t] is
// ||x(t) - xAve 1||_1 / ||x(0)||_1 starting at t = 0; the run stops at the
// first entry <= eps or after maxIter iterations (converged = false then).
struct ConsensusRun {
  ChainTag tag = ChainTag::Collapsed;
  int nodes = 0;
  double xAve = 0.0;
  bool converged = false;
  std::vector<double> errorTrace;
  std::vector<double> finalEstimates;  // x at the final iteration
  std::vector<double> finalValues;     // per-state y at the final iteration
  std::vector<double> finalWeights;    // per-state w (ratio runs only)
  double massDrift = 0.0;    // max_t |sum y(t) - sum x(0)| / sum x(0)
  double weightDrift = 0.0;  // max_t |sum w(t) - n| / n (ratio runs only)
  MessageModel messages;

  int iterations() const { return static_cast<int>(errorTrace.size()) - 1; }
};

// Value-copy iteration for doubly stochastic chains: per-state values start at
// x0(v)/b_v, advance by P~^T, and each node reads the sum over its fiber.
ConsensusRun run_pa1(const LiftedChain& chain, const std::vector<double>& x0, double eps,
                     int maxIter);

// Value/weight pair iteration for general row-stochastic chains: both vectors
// advance by P~^T and each node reads the ratio of its fiber sums.
ConsensusRun run_pa2(const LiftedChain& chain, const std::vector<double>& x0, double eps,
                     int maxIter);

// First iteration whose recorded error is <= eps, or -1 if the trace never
// gets there.
int averaging_time(const ConsensusRun& run, double eps);

MessageModel lada_message_model(int nodeCount);
void attach_messages(ConsensusRun& run, const MessageModel& model);

} // namespace lada
