#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lada/clustering.hpp"
#include "lada/engine.hpp"
#include "lada/lifting.hpp"
#include "lada/metrics.hpp"
#include "lada/topology.hpp"

namespace lada {

std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);

std::string clustering_to_json(const Clustering& cl);

// Sparse triplet text: a small header (tag, states, collapse map), then one
// "row col value" line per entry in row order.
void write_chain_triplets(const LiftedChain& chain, std::ostream& out);
LiftedChain read_chain_triplets(std::istream& in);

// Per-run trace: "# key=value" metadata comments, then t,l1_error,
// messages_cumulative rows.
void write_run_trace_csv(const ConsensusRun& run, std::ostream& out,
                         const std::vector<std::pair<std::string, std::string>>& metadata);

std::string metrics_report_to_json(const MetricsReport& report);

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

} // namespace lada
