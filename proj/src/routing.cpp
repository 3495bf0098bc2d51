#include "wsn/routing.hpp"

#include <cmath>
#include <ostream>
#include <queue>
#include <string>
#include <utility>

#include "wsn/error.hpp"

namespace wsn {

std::string_view cost_variant_name(CostVariant v) {
  return v == CostVariant::kPdtm ? "pdtm" : "ddtm";
}

CostVariant parse_cost_variant(std::string_view name) {
  if (name == "pdtm" || name == "PDTM") return CostVariant::kPdtm;
  if (name == "ddtm" || name == "DDTM") return CostVariant::kDdtm;
  fail(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

void CostMethod::validate() const {
  require(alpha > 1.0 && alpha <= 2.0, ErrorCode::kInvalidArgument,
          "PDTM alpha must lie in (1, 2]");
  require(sink_energy > 0.0, ErrorCode::kInvalidArgument, "sink_energy must be > 0");
}

double pdtm_cost(int relay_degree, double d, int level, double energy, double alpha) {
  require(energy > 0.0, ErrorCode::kInvalidArgument, "relay has no residual energy");
  require(d >= 0.0, ErrorCode::kInvalidArgument, "distance must be >= 0");
  const double path = alpha == 2.0 ? d * d : std::pow(d, alpha);
  return static_cast<double>(relay_degree) * path * static_cast<double>(level + 1) / energy;
}

double edge_weight_pdtm(const NetworkGraph& graph, int relay, int sender, const CostMethod& method) {
  const Node& r = graph.node(relay);
  const Node& s = graph.node(sender);
  const bool is_sink = relay == graph.sink_id();
  if (!is_sink && (!r.alive || r.residual_energy <= 0.0))
    fail(ErrorCode::kInvalidArgument, "dead relay " + std::to_string(relay) + " cannot carry an edge");
  const double energy = is_sink ? method.sink_energy : r.residual_energy;
  return pdtm_cost(r.relay_degree, distance(r.pos, s.pos), r.level, energy, method.alpha);
}

double edge_weight_ddtm(const NetworkGraph& graph, int relay, int sender) {
  const double d = distance(graph.node(relay).pos, graph.node(sender).pos);
  return d * d;
}

WeightedDigraph build_weighted_digraph(const NetworkGraph& graph, const CostMethod& method) {
  WeightedDigraph dg;
  dg.n = static_cast<int>(graph.size());
  for (const auto& relay : graph.nodes()) {
    if (!relay.alive || relay.level == kUnreachable) continue;
    for (const auto& nb : graph.neighbors(relay.id)) {
      const Node& sender = graph.node(nb.id);
      if (!sender.alive || sender.level == kUnreachable || relay.level > sender.level) continue;
      const double w = method.variant == CostVariant::kPdtm
                           ? edge_weight_pdtm(graph, relay.id, sender.id, method)
                           : nb.distance * nb.distance;
      dg.edges.push_back({relay.id, sender.id, w});
    }
  }
  return dg;
}

int RoutingTree::depth(int v) const {
  if (!reachable(v)) return -1;
  int hops = 0;
  for (int u = v; parent[static_cast<std::size_t>(u)] != kNoParent; u = parent[static_cast<std::size_t>(u)])
    ++hops;
  return hops;
}

RoutingTree dijkstra(const WeightedDigraph& dg, int source) {
  require(dg.n > 0, ErrorCode::kInvalidArgument, "graph has no nodes");
  require(source >= 0 && source < dg.n, ErrorCode::kOutOfRange, "source out of range");
  std::vector<std::vector<std::pair<int, double>>> out(static_cast<std::size_t>(dg.n));
  for (const auto& e : dg.edges) {
    if (e.weight < 0.0 || std::isnan(e.weight))
      fail(ErrorCode::kInvalidArgument, "graph contains negative edge(s)");
    require(e.from >= 0 && e.from < dg.n && e.to >= 0 && e.to < dg.n, ErrorCode::kOutOfRange,
            "edge endpoint out of range");
    out[static_cast<std::size_t>(e.from)].emplace_back(e.to, e.weight);
  }

  RoutingTree tree;
  tree.dist.assign(static_cast<std::size_t>(dg.n), kUnreachableCost);
  tree.parent.assign(static_cast<std::size_t>(dg.n), kNoParent);
  std::vector<bool> settled(static_cast<std::size_t>(dg.n), false);
  tree.dist[static_cast<std::size_t>(source)] = 0.0;

  using Entry = std::pair<double, int>;  // (dist, id): ties pop lowest id first
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[static_cast<std::size_t>(u)]) continue;
    settled[static_cast<std::size_t>(u)] = true;
    for (const auto& [v, w] : out[static_cast<std::size_t>(u)]) {
      const auto vi = static_cast<std::size_t>(v);
      if (settled[vi]) continue;
      const double candidate = d + w;
      if (candidate < tree.dist[vi] || (candidate == tree.dist[vi] && u < tree.parent[vi])) {
        const bool improved = candidate < tree.dist[vi];
        tree.dist[vi] = candidate;
        tree.parent[vi] = u;
        if (improved) queue.emplace(candidate, v);
      }
    }
  }
  return tree;
}

RoutingTree build_routing_tree(NetworkGraph& graph, const CostMethod& method) {
  assign_levels(graph);
  compute_relay_degrees(graph);
  return dijkstra(build_weighted_digraph(graph, method), graph.sink_id());
}

void write_routing_tree(std::ostream& out, const NetworkGraph& graph, const RoutingTree& tree) {
  out << "# id parent dist level\n";
  for (const auto& node : graph.nodes()) {
    const auto i = static_cast<std::size_t>(node.id);
    out << node.id << ' ' << tree.parent[i] << ' ';
    if (tree.reachable(node.id))
      out << tree.dist[i];
    else
      out << "inf";
    out << ' ' << (node.level == kUnreachable ? -1 : node.level) << '\n';
  }
}

}  // namespace wsn
