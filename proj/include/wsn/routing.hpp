#ifndef WSN_ROUTING_HPP_
#define WSN_ROUTING_HPP_

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include "wsn/network.hpp"

namespace wsn {

enum class CostVariant { kPdtm, kDdtm };

std::string_view cost_variant_name(CostVariant v);
CostVariant parse_cost_variant(std::string_view name);

struct CostMethod {
  CostVariant variant = CostVariant::kPdtm;
  double alpha = 2.0;
  /// Stands in for the sink's residual energy in PDTM weights. The default
  /// (infinite) makes every edge leaving the sink free.
  double sink_energy = std::numeric_limits<double>::infinity();

  void validate() const;
};

/// Parametric connection cost of relaying through a node:
/// relay_degree * d^alpha * (level + 1) / energy.
double pdtm_cost(int relay_degree, double d, int level, double energy, double alpha);

/// PDTM weight of the edge relay -> sender. The sink's energy is replaced by
/// method.sink_energy. Throws if the relay is a sensor with no energy left.
double edge_weight_pdtm(const NetworkGraph& graph, int relay, int sender, const CostMethod& method);

/// DDTM weight: squared distance.
double edge_weight_ddtm(const NetworkGraph& graph, int relay, int sender);

struct WeightedEdge {
  int from;
  int to;
  double weight;
};

struct WeightedDigraph {
  int n = 0;
  std::vector<WeightedEdge> edges;
};

/// One edge i -> j per alive, reachable neighbor pair with level(i) <= level(j),
/// weighted with i as the relay. Levels and relay degrees must be current.
WeightedDigraph build_weighted_digraph(const NetworkGraph& graph, const CostMethod& method);

inline constexpr int kNoParent = -1;
inline constexpr double kUnreachableCost = std::numeric_limits<double>::infinity();

struct RoutingTree {
  std::vector<double> dist;   // cumulative cost from the sink, or infinity
  std::vector<int> parent;    // next hop toward the sink, or kNoParent

  bool reachable(int v) const { return dist[static_cast<std::size_t>(v)] != kUnreachableCost; }
  /// Hop count along parent pointers; -1 when unreachable.
  int depth(int v) const;
};

/// Single-source shortest paths. Rejects negative weights before relaxing.
/// Ties on equal cost go to the lowest-id predecessor settled first.
RoutingTree dijkstra(const WeightedDigraph& dg, int source);

/// Levels -> relay degrees -> weighted digraph -> Dijkstra from the sink.
RoutingTree build_routing_tree(NetworkGraph& graph, const CostMethod& method);

/// Text table: id parent dist level (unreachable as -1 / inf).
void write_routing_tree(std::ostream& out, const NetworkGraph& graph, const RoutingTree& tree);

}  // namespace wsn

#endif  // WSN_ROUTING_HPP_
