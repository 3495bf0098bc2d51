#ifndef WSN_SIMULATION_HPP_
#define WSN_SIMULATION_HPP_

#include <iosfwd>
#include <vector>

#include "wsn/energy.hpp"
#include "wsn/network.hpp"
#include "wsn/routing.hpp"

namespace wsn {

struct SimConfig {
  DeploymentConfig deployment;
  CostMethod method;
  RadioParams radio;
  double sense_cost = 0.0;      // per generated packet, individual ledger
  double local_overhead = 0.0;  // per alive sensor per slot, local ledger
  double topo_overhead = 0.0;   // per alive sensor per slot, global ledger
  int max_timeslots = 10000;
  /// When set, alive sensors with no route still generate a packet each slot
  /// and it is booked as lost. Off: a disconnected sensor is treated as dead
  /// and stays silent.
  bool disconnected_generate = false;
  double slot_duration = 1.0;   // time units per completed slot

  void validate() const;
};

struct TimeslotMetrics {
  int slot = 0;
  long generated = 0;
  long delivered = 0;
  long lost = 0;
  long new_dead = 0;
  double energy_consumed = 0.0;
  ConstituentLedger ledger;
  /// Mean tree depth of alive, reachable sensors when the slot started.
  double avg_hops = 0.0;
  /// Mean packets held by a node at the moment it transmits.
  double avg_queue = 0.0;
  long transmissions = 0;   // sender turns that attempted a transmission
  long packets_sent = 0;    // packet-hops actually transmitted
  double tx_energy = 0.0;
  double rx_energy = 0.0;
};

struct ExperimentTotals {
  long generated = 0;
  long delivered = 0;
  long lost = 0;
  int dead_nodes_at_end = 0;  // dead plus disconnected sensors
  double lifetime = 0.0;
  double energy_consumed = 0.0;
  ConstituentLedger ledger;
};

struct ExperimentRecord {
  SimConfig config;
  /// Deployment statistics taken before the first slot.
  double avg_neighbors = 0.0;
  double avg_distance = 0.0;
  double avg_hops = 0.0;
  double initial_energy = 0.0;
  std::vector<Position> layout;
  std::vector<TimeslotMetrics> slots;
  ExperimentTotals totals;
  std::vector<double> final_residuals;
};

/// One run's mutable state. Slots must be executed in order; not thread-safe.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);
  Simulation(const SimConfig& config, NetworkGraph graph);

  const NetworkGraph& graph() const noexcept { return graph_; }
  NetworkGraph& graph() noexcept { return graph_; }
  const RoutingTree& tree() const noexcept { return tree_; }
  const ConstituentLedger& ledger() const noexcept { return ledger_; }
  /// Sum of sensor residual energies at construction.
  double initial_energy() const noexcept { return initial_energy_; }
  double residual_energy() const;

  /// Recomputes levels, relay degrees, edge weights and the routing tree.
  void rebuild_routes();

  /// Runs one slot on the current tree (rebuilding it first if stale).
  TimeslotMetrics run_timeslot();

  int completed_slots() const noexcept { return slot_; }

 private:
  /// Charges up to `amount`, never more than the node holds. Returns true
  /// when the full amount was paid.
  bool charge(Node& node, ConstituentLedger& slot_ledger, double amount, Constituent slot,
              long& new_dead);
  /// Spends whatever the node has left (an attempt it cannot complete).
  void drain(Node& node, ConstituentLedger& slot_ledger, long& new_dead);

  SimConfig config_;
  NetworkGraph graph_;
  RoutingTree tree_;
  bool tree_current_ = false;
  ConstituentLedger ledger_;
  double initial_energy_ = 0.0;
  int slot_ = 0;
};

/// Alternates route rebuild and timeslot until the sink has no alive
/// neighbor or max_timeslots is reached.
ExperimentRecord run_experiment(const SimConfig& config);
ExperimentRecord run_experiment(const SimConfig& config, NetworkGraph graph);

struct MethodComparison {
  ExperimentRecord pdtm;
  ExperimentRecord ddtm;
  long delta_delivered = 0;   // pdtm - ddtm
  long delta_lost = 0;
  int delta_dead = 0;
  double delta_lifetime = 0.0;
};

/// Runs both cost methods on the same seeded deployment.
MethodComparison compare_methods(const SimConfig& config);

/// Delimited record: '#'-prefixed config header, one row per slot, a totals row.
void write_record(std::ostream& out, const ExperimentRecord& record);

}  // namespace wsn

#endif  // WSN_SIMULATION_HPP_
