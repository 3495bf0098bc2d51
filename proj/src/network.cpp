#include "wsn/network.hpp"

#include <cmath>
#include <deque>
#include <ostream>
#include <string>

#include "wsn/error.hpp"
#include "wsn/rng.hpp"

namespace wsn {

double distance(const Position& a, const Position& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void DeploymentConfig::validate() const {
  require(n_nodes >= 2, ErrorCode::kInvalidArgument, "n_nodes must be >= 2");
  require(tx_radius > 0.0, ErrorCode::kInvalidArgument, "tx_radius must be > 0");
  require(area.width > 0.0 && area.height > 0.0, ErrorCode::kInvalidArgument,
          "area dimensions must be > 0");
  require(initial_energy > 0.0, ErrorCode::kInvalidArgument, "initial_energy must be > 0");
  require(sink_position.x >= 0.0 && sink_position.x <= area.width &&
              sink_position.y >= 0.0 && sink_position.y <= area.height,
          ErrorCode::kInvalidArgument, "sink position lies outside the area");
}

NetworkGraph::NetworkGraph(std::vector<Node> nodes, int sink_id, double tx_radius, Area area)
    : nodes_(std::move(nodes)), sink_id_(sink_id), tx_radius_(tx_radius), area_(area) {
  require(!nodes_.empty(), ErrorCode::kInvalidArgument, "graph needs at least one node");
  require(sink_id_ >= 0 && static_cast<std::size_t>(sink_id_) < nodes_.size(),
          ErrorCode::kOutOfRange, "sink id out of range");
  require(tx_radius_ > 0.0, ErrorCode::kInvalidArgument, "tx_radius must be > 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i].id = static_cast<int>(i);
  nodes_[sink_id_].alive = true;
  rebuild_adjacency();
}

void NetworkGraph::check_id(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= nodes_.size())
    fail(ErrorCode::kOutOfRange, "node id " + std::to_string(i) + " out of range");
}

const Node& NetworkGraph::node(int i) const {
  check_id(i);
  return nodes_[i];
}

Node& NetworkGraph::node(int i) {
  check_id(i);
  return nodes_[i];
}

std::span<const Neighbor> NetworkGraph::neighbors(int i) const {
  check_id(i);
  return adjacency_[i];
}

void NetworkGraph::rebuild_adjacency() {
  const std::size_t n = nodes_.size();
  adjacency_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(nodes_[i].pos, nodes_[j].pos);
      if (d <= tx_radius_) {
        adjacency_[i].push_back({static_cast<int>(j), d});
        adjacency_[j].push_back({static_cast<int>(i), d});
      }
    }
  }
  // j ascends in the inner loop and i < j rows are appended in ascending i,
  // so every list is already sorted by id.
}

bool NetworkGraph::sink_has_alive_neighbor() const {
  for (const auto& nb : adjacency_[sink_id_])
    if (nodes_[nb.id].alive) return true;
  return false;
}

int NetworkGraph::dead_or_disconnected() const {
  int count = 0;
  for (const auto& node : nodes_) {
    if (node.id == sink_id_) continue;
    if (!node.alive || node.level == kUnreachable) ++count;
  }
  return count;
}

NetworkGraph deploy_random(const DeploymentConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);
  const auto max_x = static_cast<std::int64_t>(std::floor(config.area.width));
  const auto max_y = static_cast<std::int64_t>(std::floor(config.area.height));

  std::vector<Node> nodes(static_cast<std::size_t>(config.n_nodes));
  nodes[0].pos = config.sink_position;
  nodes[0].residual_energy = config.initial_energy;
  nodes[0].level = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    nodes[i].pos.x = static_cast<double>(rng.uniform_int(0, max_x));
    nodes[i].pos.y = static_cast<double>(rng.uniform_int(0, max_y));
    nodes[i].residual_energy = config.initial_energy;
  }
  return NetworkGraph(std::move(nodes), 0, config.tx_radius, config.area);
}

void assign_levels(NetworkGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) graph.node(static_cast<int>(i)).level = kUnreachable;
  const int sink = graph.sink_id();
  graph.node(sink).level = 0;

  std::deque<int> frontier{sink};
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    const int next_level = graph.node(u).level + 1;
    for (const auto& nb : graph.neighbors(u)) {
      Node& v = graph.node(nb.id);
      if (!v.alive || v.level != kUnreachable) continue;
      v.level = next_level;
      frontier.push_back(nb.id);
    }
  }
}

void compute_relay_degrees(NetworkGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    Node& node = graph.node(static_cast<int>(i));
    node.relay_degree = 0;
    if (!node.alive || node.level == kUnreachable) continue;
    for (const auto& nb : graph.neighbors(node.id)) {
      const Node& other = graph.node(nb.id);
      if (other.alive && other.level != kUnreachable && other.level >= node.level)
        ++node.relay_degree;
    }
  }
}

double mean_neighbor_count(const NetworkGraph& graph) {
  if (graph.size() < 2) return 0.0;
  double total = 0.0;
  for (const auto& node : graph.nodes()) {
    if (node.id == graph.sink_id()) continue;
    total += static_cast<double>(graph.neighbors(node.id).size());
  }
  return total / static_cast<double>(graph.size() - 1);
}

double mean_neighbor_distance(const NetworkGraph& graph) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& node : graph.nodes()) {
    if (node.id == graph.sink_id()) continue;
    for (const auto& nb : graph.neighbors(node.id)) {
      total += nb.distance;
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

void write_snapshot(std::ostream& out, const NetworkGraph& graph) {
  out << "# id x y energy level relay_degree alive\n";
  for (const auto& node : graph.nodes()) {
    out << node.id << ' ' << node.pos.x << ' ' << node.pos.y << ' ' << node.residual_energy << ' '
        << (node.level == kUnreachable ? -1 : node.level) << ' ' << node.relay_degree << ' '
        << (node.alive ? 1 : 0) << '\n';
  }
}

}  // namespace wsn
