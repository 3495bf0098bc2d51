#ifndef WSN_NETWORK_HPP_
#define WSN_NETWORK_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace wsn {

/// Level sentinel for nodes with no alive path to the sink.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b) noexcept;

struct Area {
  double width = 600.0;
  double height = 300.0;
};

struct Node {
  int id = 0;
  Position pos;
  double residual_energy = 0.0;
  int level = kUnreachable;
  int relay_degree = 0;
  bool alive = true;
  int pending_packets = 0;
};

struct Neighbor {
  int id;
  double distance;
};

struct DeploymentConfig {
  int n_nodes = 50;
  double tx_radius = 100.0;
  Area area;
  Position sink_position{50.0, 50.0};
  std::uint64_t rng_seed = 1;
  double initial_energy = 100000.0;

  void validate() const;
};

/// Nodes plus the unit-disk neighbor relation. The sink is never charged
/// energy and is always alive; exactly one sink per graph.
class NetworkGraph {
 public:
  NetworkGraph(std::vector<Node> nodes, int sink_id, double tx_radius, Area area);

  std::size_t size() const noexcept { return nodes_.size(); }
  int sink_id() const noexcept { return sink_id_; }
  double tx_radius() const noexcept { return tx_radius_; }
  const Area& area() const noexcept { return area_; }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(int i) const;
  Node& node(int i);

  /// Nodes within tx_radius of i (inclusive), excluding i, ascending by id.
  std::span<const Neighbor> neighbors(int i) const;

  /// Recomputes adjacency from positions. O(n^2).
  void rebuild_adjacency();

  /// True when at least one alive sensor lies within range of the sink.
  bool sink_has_alive_neighbor() const;

  /// Number of sensors (sink excluded) that are dead or carry kUnreachable.
  int dead_or_disconnected() const;

 private:
  void check_id(int i) const;

  std::vector<Node> nodes_;
  int sink_id_;
  double tx_radius_;
  Area area_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Sink at config.sink_position (id 0) plus n_nodes - 1 sensors at integer
/// grid points drawn uniformly from [0, width] x [0, height].
NetworkGraph deploy_random(const DeploymentConfig& config);

/// Breadth-first hop count from the sink over alive nodes. Dead or
/// disconnected nodes get kUnreachable.
void assign_levels(NetworkGraph& graph);

/// relay_degree(i) = number of alive neighbors j with level(j) >= level(i).
/// Dead and unreachable nodes get 0.
void compute_relay_degrees(NetworkGraph& graph);

double mean_neighbor_count(const NetworkGraph& graph);
/// Mean neighbor distance over all sensor adjacency entries; 0 if none.
double mean_neighbor_distance(const NetworkGraph& graph);

/// Text table, one node per line: id x y energy level relay_degree alive.
/// Unreachable levels print as -1.
void write_snapshot(std::ostream& out, const NetworkGraph& graph);

}  // namespace wsn

#endif  // WSN_NETWORK_HPP_
