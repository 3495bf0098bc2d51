#include "wsn/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "wsn/error.hpp"

namespace wsn {

namespace {

/// Largest k <= wanted with k * unit <= budget.
long affordable(double budget, double unit, long wanted) {
  if (unit <= 0.0) return wanted;
  if (budget <= 0.0) return 0;
  long k = static_cast<long>(std::min<double>(static_cast<double>(wanted), std::floor(budget / unit)));
  while (k > 0 && static_cast<double>(k) * unit > budget) --k;
  while (k < wanted && static_cast<double>(k + 1) * unit <= budget) ++k;
  return k;
}

double mean_depth(const NetworkGraph& graph, const RoutingTree& tree) {
  double total = 0.0;
  long count = 0;
  for (const auto& node : graph.nodes()) {
    if (node.id == graph.sink_id() || !node.alive || !tree.reachable(node.id)) continue;
    total += tree.depth(node.id);
    ++count;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace

void SimConfig::validate() const {
  deployment.validate();
  method.validate();
  radio.validate();
  require(sense_cost >= 0.0 && local_overhead >= 0.0 && topo_overhead >= 0.0,
          ErrorCode::kInvalidArgument, "per-slot charges must be >= 0");
  require(max_timeslots >= 1, ErrorCode::kInvalidArgument, "max_timeslots must be >= 1");
  require(slot_duration > 0.0, ErrorCode::kInvalidArgument, "slot_duration must be > 0");
}

Simulation::Simulation(const SimConfig& config) : Simulation(config, deploy_random(config.deployment)) {}

Simulation::Simulation(const SimConfig& config, NetworkGraph graph)
    : config_(config), graph_(std::move(graph)) {
  config_.validate();
  for (const auto& node : graph_.nodes())
    if (node.id != graph_.sink_id()) initial_energy_ += node.residual_energy;
}

double Simulation::residual_energy() const {
  double total = 0.0;
  for (const auto& node : graph_.nodes())
    if (node.id != graph_.sink_id()) total += node.residual_energy;
  return total;
}

void Simulation::rebuild_routes() {
  tree_ = build_routing_tree(graph_, config_.method);
  tree_current_ = true;
}

bool Simulation::charge(Node& node, ConstituentLedger& slot_ledger, double amount, Constituent slot,
                        long& new_dead) {
  if (amount <= 0.0) return true;
  const bool was_alive = node.alive;
  const bool paid = amount <= node.residual_energy;
  const double taken = paid ? amount : node.residual_energy;
  apply_consumption(node, slot_ledger, taken, slot);
  if (!paid) {
    node.residual_energy = 0.0;
    node.alive = false;
  }
  if (was_alive && !node.alive) ++new_dead;
  return paid;
}

void Simulation::drain(Node& node, ConstituentLedger& slot_ledger, long& new_dead) {
  const bool was_alive = node.alive;
  apply_consumption(node, slot_ledger, node.residual_energy, Constituent::kGlobal);
  node.residual_energy = 0.0;
  node.alive = false;
  if (was_alive) ++new_dead;
}

TimeslotMetrics Simulation::run_timeslot() {
  if (!tree_current_) rebuild_routes();
  tree_current_ = false;

  TimeslotMetrics m;
  m.slot = slot_;
  m.avg_hops = mean_depth(graph_, tree_);
  const int sink = graph_.sink_id();
  const auto n = graph_.size();

  // Fixed per-slot charges, then packet generation.
  for (std::size_t i = 0; i < n; ++i) {
    Node& node = graph_.node(static_cast<int>(i));
    node.pending_packets = 0;
    if (node.id == sink || !node.alive) continue;
    if (!charge(node, m.ledger, config_.local_overhead, Constituent::kLocal, m.new_dead)) continue;
    if (!charge(node, m.ledger, config_.topo_overhead, Constituent::kGlobal, m.new_dead)) continue;
    if (!node.alive) continue;
    if (!tree_.reachable(node.id) && !config_.disconnected_generate) continue;
    ++m.generated;
    if (!charge(node, m.ledger, config_.sense_cost, Constituent::kIndividual, m.new_dead) ||
        !tree_.reachable(node.id)) {
      ++m.lost;
      continue;
    }
    node.pending_packets = 1;
  }

  // Deepest nodes forward first so every relay sees all of its inbound
  // traffic before its own turn.
  std::vector<int> order;
  std::vector<int> depth(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int id = static_cast<int>(i);
    if (id == sink || !tree_.reachable(id)) continue;
    depth[i] = tree_.depth(id);
    order.push_back(id);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto da = depth[static_cast<std::size_t>(a)];
    const auto db = depth[static_cast<std::size_t>(b)];
    return da != db ? da > db : a < b;
  });

  double queue_total = 0.0;
  for (const int id : order) {
    Node& sender = graph_.node(id);
    const long held = sender.pending_packets;
    if (held == 0) continue;
    sender.pending_packets = 0;
    if (!sender.alive) {
      m.lost += held;
      continue;
    }
    Node& parent = graph_.node(tree_.parent[static_cast<std::size_t>(id)]);
    if (!parent.alive) {
      m.lost += held;
      continue;
    }

    ++m.transmissions;
    queue_total += static_cast<double>(held);
    const double unit_tx = tx_energy(config_.radio, distance(sender.pos, parent.pos), 1);
    const long sent = affordable(sender.residual_energy, unit_tx, held);
    const double before_tx = sender.residual_energy;
    charge(sender, m.ledger, unit_tx * static_cast<double>(sent), Constituent::kGlobal, m.new_dead);
    if (sent < held) {
      drain(sender, m.ledger, m.new_dead);
      m.lost += held - sent;
    }
    m.tx_energy += before_tx - sender.residual_energy;
    m.packets_sent += sent;
    if (sent == 0) continue;

    if (parent.id == sink) {
      m.delivered += sent;
      continue;
    }
    const double unit_rx = rx_energy(config_.radio, 1);
    const long received = affordable(parent.residual_energy, unit_rx, sent);
    const double before_rx = parent.residual_energy;
    charge(parent, m.ledger, unit_rx * static_cast<double>(received), Constituent::kGlobal, m.new_dead);
    if (received < sent) drain(parent, m.ledger, m.new_dead);
    m.rx_energy += before_rx - parent.residual_energy;
    if (received < sent) {
      m.lost += sent + parent.pending_packets;
      parent.pending_packets = 0;
      continue;
    }
    if (!parent.alive) {
      // Drained to exactly zero by reception: holds nothing it can forward.
      m.lost += sent + parent.pending_packets;
      parent.pending_packets = 0;
      continue;
    }
    parent.pending_packets += static_cast<int>(sent);
  }

  m.avg_queue = m.transmissions == 0 ? 0.0 : queue_total / static_cast<double>(m.transmissions);
  m.energy_consumed = m.ledger.raw_total();
  ledger_ += m.ledger;
  ++slot_;
  return m;
}

ExperimentRecord run_experiment(const SimConfig& config) {
  return run_experiment(config, deploy_random(config.deployment));
}

ExperimentRecord run_experiment(const SimConfig& config, NetworkGraph graph) {
  ExperimentRecord record;
  record.config = config;
  Simulation sim(config, std::move(graph));

  record.initial_energy = sim.initial_energy();
  record.avg_neighbors = mean_neighbor_count(sim.graph());
  record.avg_distance = mean_neighbor_distance(sim.graph());
  for (const auto& node : sim.graph().nodes()) record.layout.push_back(node.pos);

  bool first = true;
  while (sim.completed_slots() < config.max_timeslots && sim.graph().sink_has_alive_neighbor()) {
    sim.rebuild_routes();
    if (first) {
      record.avg_hops = mean_depth(sim.graph(), sim.tree());
      first = false;
    }
    record.slots.push_back(sim.run_timeslot());
  }

  auto& totals = record.totals;
  for (const auto& s : record.slots) {
    totals.generated += s.generated;
    totals.delivered += s.delivered;
    totals.lost += s.lost;
    totals.ledger += s.ledger;
  }
  totals.energy_consumed = totals.ledger.raw_total();
  totals.lifetime = static_cast<double>(record.slots.size()) * config.slot_duration;

  assign_levels(sim.graph());
  totals.dead_nodes_at_end = sim.graph().dead_or_disconnected();
  for (const auto& node : sim.graph().nodes()) record.final_residuals.push_back(node.residual_energy);
  return record;
}

MethodComparison compare_methods(const SimConfig& config) {
  MethodComparison cmp;
  SimConfig pdtm = config;
  pdtm.method.variant = CostVariant::kPdtm;
  SimConfig ddtm = config;
  ddtm.method.variant = CostVariant::kDdtm;
  const NetworkGraph layout = deploy_random(config.deployment);
  cmp.pdtm = run_experiment(pdtm, layout);
  cmp.ddtm = run_experiment(ddtm, layout);
  cmp.delta_delivered = cmp.pdtm.totals.delivered - cmp.ddtm.totals.delivered;
  cmp.delta_lost = cmp.pdtm.totals.lost - cmp.ddtm.totals.lost;
  cmp.delta_dead = cmp.pdtm.totals.dead_nodes_at_end - cmp.ddtm.totals.dead_nodes_at_end;
  cmp.delta_lifetime = cmp.pdtm.totals.lifetime - cmp.ddtm.totals.lifetime;
  return cmp;
}

void write_record(std::ostream& out, const ExperimentRecord& record) {
  const auto& c = record.config;
  out << "# method=" << cost_variant_name(c.method.variant) << " alpha=" << c.method.alpha
      << " sink_energy=" << c.method.sink_energy << '\n'
      << "# seed=" << c.deployment.rng_seed << " n_nodes=" << c.deployment.n_nodes
      << " tx_radius=" << c.deployment.tx_radius << " area=" << c.deployment.area.width << 'x'
      << c.deployment.area.height << " sink=" << c.deployment.sink_position.x << ','
      << c.deployment.sink_position.y << " initial_energy=" << c.deployment.initial_energy << '\n'
      << "# e_amp=" << c.radio.e_amp << " e_elec=" << c.radio.e_elec
      << " radio_alpha=" << c.radio.alpha << " packet_bits=" << c.radio.packet_bits
      << " sense_cost=" << c.sense_cost << " local_overhead=" << c.local_overhead
      << " topo_overhead=" << c.topo_overhead << " max_timeslots=" << c.max_timeslots
      << " slot_duration=" << c.slot_duration << '\n';
  out << "slot,generated,delivered,lost,new_dead,energy\n";
  for (const auto& s : record.slots)
    out << s.slot << ',' << s.generated << ',' << s.delivered << ',' << s.lost << ',' << s.new_dead
        << ',' << s.energy_consumed << '\n';
  const auto& t = record.totals;
  out << "total," << t.generated << ',' << t.delivered << ',' << t.lost << ','
      << t.dead_nodes_at_end << ',' << t.energy_consumed << '\n';
  out << "# lifetime=" << t.lifetime << '\n';
}

}  // namespace wsn
