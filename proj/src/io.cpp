#include "lada/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace lada {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string network_to_json(const Network& net) {
  json doc;
  if (net.kind == Network::Kind::Grid) {
    doc["kind"] = "grid";
    doc["k"] = net.gridSide;
  } else {
    doc["kind"] = "geometric";
    doc["n"] = net.nodeCount();
    doc["r"] = net.range;
    doc["seed"] = net.seed;
    doc["resamples"] = net.resamples;
  }
  json positions = json::array();
  for (const Vec2& p : net.positions) positions.push_back({p.x, p.y});
  doc["positions"] = std::move(positions);
  json edges = json::array();
  for (int i = 0; i < net.nodeCount(); ++i)
    for (int j : net.adjacency[i])
      if (i < j) edges.push_back({i, j});
  doc["edges"] = std::move(edges);
  return doc.dump(2);
}

Network network_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::Io, std::string("network_from_json: ") + e.what());
  }
  Network net;
  try {
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "grid") {
      net.kind = Network::Kind::Grid;
      net.gridSide = doc.at("k").get<int>();
    } else if (kind == "geometric") {
      net.kind = Network::Kind::Geometric;
      net.range = doc.at("r").get<double>();
      net.seed = doc.at("seed").get<std::uint64_t>();
      net.resamples = doc.at("resamples").get<int>();
    } else {
      fail(ErrorCode::Io, "network_from_json: unknown kind " + kind);
    }
    for (const auto& p : doc.at("positions"))
      net.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    net.adjacency.resize(net.positions.size());
    for (const auto& e : doc.at("edges")) {
      int i = e.at(0).get<int>(), j = e.at(1).get<int>();
      net.adjacency.at(i).push_back(j);
      net.adjacency.at(j).push_back(i);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::Io, std::string("network_from_json: ") + e.what());
  }
  for (auto& adj : net.adjacency) std::sort(adj.begin(), adj.end());
  return net;
}

std::string clustering_to_json(const Clustering& cl) {
  json doc;
  doc["K"] = cl.clusterCount();
  doc["assignment"] = cl.assignment;
  doc["heads"] = cl.heads;
  json gateways = json::array();
  for (const auto& link : cl.gatewayLinks) gateways.push_back({link[0], link[1]});
  doc["gateways"] = std::move(gateways);
  if (cl.fromTessellation) doc["tessellation_side"] = cl.tessellationSide;
  return doc.dump(2);
}

void write_chain_triplets(const LiftedChain& chain, std::ostream& out) {
  out << "tag " << tag_name(chain.tag) << "\n";
  out << "states " << chain.states << "\n";
  out << "collapse";
  for (int v : chain.collapseMap) out << ' ' << v;
  out << "\n";
  for (int s = 0; s < chain.states; ++s)
    for (const auto& [t, w] : chain.rows[s])
      out << s << ' ' << t << ' ' << format_double(w) << "\n";
}

LiftedChain read_chain_triplets(std::istream& in) {
  std::string keyword, tagText;
  int states = 0;
  if (!(in >> keyword >> tagText) || keyword != "tag")
    fail(ErrorCode::Io, "read_chain_triplets: missing tag header");
  if (!(in >> keyword >> states) || keyword != "states" || states <= 0)
    fail(ErrorCode::Io, "read_chain_triplets: missing states header");
  if (!(in >> keyword) || keyword != "collapse")
    fail(ErrorCode::Io, "read_chain_triplets: missing collapse header");
  std::vector<int> map(states);
  for (int& v : map)
    if (!(in >> v)) fail(ErrorCode::Io, "read_chain_triplets: truncated collapse map");

  ChainTag tag = ChainTag::Collapsed;
  for (ChainTag t : {ChainTag::GridLADA, ChainTag::LADA, ChainTag::LADAU, ChainTag::Collapsed,
                     ChainTag::Baseline})
    if (tagText == tag_name(t)) tag = t;

  ChainBuilder builder(tag, states, std::move(map));
  int r, c;
  double w;
  while (in >> r >> c >> w) {
    if (r < 0 || r >= states || c < 0 || c >= states)
      fail(ErrorCode::Io, "read_chain_triplets: entry out of range");
    builder.add(r, c, w);
  }
  return builder.finish();
}

void write_run_trace_csv(const ConsensusRun& run, std::ostream& out,
                         const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
  out << "# converged=" << (run.converged ? "true" : "false") << "\n";
  out << "t,l1_error,messages_cumulative\n";
  long long cumulative = run.messages.oneTime;
  for (size_t t = 0; t < run.errorTrace.size(); ++t) {
    if (t > 0) cumulative += run.messages.perIteration;
    out << t << ',' << format_double(run.errorTrace[t]) << ',' << cumulative << "\n";
  }
}

std::string metrics_report_to_json(const MetricsReport& report) {
  json doc;
  doc["t_mix"] = report.tMix;
  doc["t_fill"] = report.tFill;
  doc["conductance_upper"] = report.conductanceUpper;
  if (report.conductanceExact) doc["conductance_exact"] = *report.conductanceExact;
  doc["resistance_lower"] = report.resistanceLower;
  doc["stationary"] = {{"min", report.stationary.min},
                       {"max", report.stationary.max},
                       {"ratio", report.stationary.ratio}};
  if (report.scalingExponent)
    doc["scaling"] = {{"slope", report.scalingExponent->slope},
                      {"intercept", report.scalingExponent->intercept},
                      {"r2", report.scalingExponent->r2}};
  return doc.dump(2);
}

} // namespace lada
