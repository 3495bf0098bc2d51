#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "wsn/error.hpp"
#include "wsn/simulation.hpp"

using namespace wsn;
using wsn::test::make_graph;

namespace {

SimConfig default_config(int n, double tx, std::uint64_t seed) {
  SimConfig c;
  c.deployment.n_nodes = n;
  c.deployment.tx_radius = tx;
  c.deployment.rng_seed = seed;
  return c;
}

double sensor_residuals(const ExperimentRecord& rec) {
  double s = 0;
  for (std::size_t i = 1; i < rec.final_residuals.size(); ++i) s += rec.final_residuals[i];
  return s;
}

}  // namespace

TEST_CASE("single sensor delivers floor(E0 / d^2) packets") {
  SimConfig c;
  const auto rec = run_experiment(c, make_graph({{0, 0}, {3, 4}}, 10, 100));
  CHECK(rec.totals.delivered == 4);
  CHECK(rec.totals.lost == 0);
  CHECK(rec.slots.size() == 4);
  CHECK(rec.totals.lifetime == 4.0);
  CHECK(rec.totals.dead_nodes_at_end == 1);
  CHECK(rec.final_residuals[1] == 0.0);
  CHECK(rec.slots.back().new_dead == 1);
}

TEST_CASE("a budget that is not a multiple of the hop cost") {
  SimConfig c;
  const auto rec = run_experiment(c, make_graph({{0, 0}, {3, 4}}, 10, 110));
  // Four packets delivered, the fifth attempt drains the last 10 units.
  CHECK(rec.totals.delivered == 4);
  CHECK(rec.totals.lost == 1);
  CHECK(rec.slots.size() == 5);
  CHECK(rec.totals.energy_consumed == 110.0);
}

TEST_CASE("no sensor in range of the sink") {
  SimConfig c;
  const auto rec = run_experiment(c, make_graph({{0, 0}, {50, 50}}, 10));
  CHECK(rec.totals.lifetime == 0.0);
  CHECK(rec.totals.delivered == 0);
  CHECK(rec.slots.empty());
  CHECK(rec.totals.dead_nodes_at_end == 1);
}

TEST_CASE("chain ledger: relays pay for forwarded packets") {
  // sink - A (d=3) - B (d=4 from A).
  Simulation sim(SimConfig{}, make_graph({{0, 0}, {3, 0}, {7, 0}}, 5, 1000));
  const auto m = sim.run_timeslot();
  CHECK(sim.tree().parent[2] == 1);
  CHECK(m.generated == 2);
  CHECK(m.delivered == 2);
  CHECK(sim.graph().node(2).residual_energy == 1000 - 16);
  CHECK(sim.graph().node(1).residual_energy == 1000 - 2 * 9);
  CHECK(m.ledger[Constituent::kGlobal] == 34);
  CHECK(m.energy_consumed == 34);
}

TEST_CASE("receive cost is charged to the relay") {
  SimConfig c;
  c.radio.e_elec = 2;
  Simulation sim(c, make_graph({{0, 0}, {3, 0}, {7, 0}}, 5, 1000));
  sim.run_timeslot();
  CHECK(sim.graph().node(1).residual_energy == 1000 - 2 * 9 - 2);
  CHECK(sim.graph().node(2).residual_energy == 1000 - 16);
}

TEST_CASE("packets behind a dead relay are lost") {
  // A can afford exactly one hop: its own packet goes, B's is lost.
  Simulation sim(SimConfig{}, make_graph({{0, 0}, {3, 0}, {7, 0}}, 5, 1000));
  sim.graph().node(1).residual_energy = 9;
  const auto m = sim.run_timeslot();
  CHECK(m.generated == 2);
  CHECK(m.delivered == 1);
  CHECK(m.lost == 1);
  CHECK(m.new_dead == 1);
  CHECK_FALSE(sim.graph().node(1).alive);
}

TEST_CASE("per-slot overheads go to their ledger slots") {
  SimConfig c;
  c.local_overhead = 1;
  c.topo_overhead = 2;
  c.sense_cost = 0.5;
  Simulation sim(c, make_graph({{0, 0}, {3, 4}}, 10, 100));
  const auto m = sim.run_timeslot();
  CHECK(m.ledger[Constituent::kLocal] == 1);
  CHECK(m.ledger[Constituent::kGlobal] == 2 + 25);
  CHECK(m.ledger[Constituent::kIndividual] == 0.5);
  CHECK(sim.graph().node(1).residual_energy == 100 - 28.5);
}

TEST_CASE("disconnected sensors") {
  auto layout = make_graph({{0, 0}, {3, 4}, {90, 90}}, 10, 100);
  SimConfig quiet;
  const auto a = run_experiment(quiet, layout);
  CHECK(a.totals.lost == 0);
  CHECK(a.totals.generated == 4);
  CHECK(a.totals.dead_nodes_at_end == 2);

  SimConfig loud;
  loud.disconnected_generate = true;
  const auto b = run_experiment(loud, layout);
  CHECK(b.totals.generated == 8);
  CHECK(b.totals.lost == 4);
  CHECK(b.totals.delivered == 4);
}

TEST_CASE("run invariants on random layouts") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    for (auto variant : {CostVariant::kPdtm, CostVariant::kDdtm}) {
      auto c = default_config(40, 120, seed);
      c.method.variant = variant;
      c.deployment.initial_energy = 20000;
      c.radio.e_elec = seed % 2 == 0 ? 3.0 : 0.0;
      c.local_overhead = 1.5;
      Simulation sim(c);
      std::vector<double> last;
      for (const auto& node : sim.graph().nodes()) last.push_back(node.residual_energy);
      std::vector<bool> was_dead(last.size(), false);
      long generated = 0, delivered = 0, lost = 0;
      while (sim.graph().sink_has_alive_neighbor() && sim.completed_slots() < 5000) {
        sim.rebuild_routes();
        const auto m = sim.run_timeslot();
        generated += m.generated;
        delivered += m.delivered;
        lost += m.lost;
        CHECK(m.delivered + m.lost == m.generated);
        for (const auto& node : sim.graph().nodes()) {
          const auto i = static_cast<std::size_t>(node.id);
          CHECK(node.residual_energy <= last[i]);
          if (was_dead[i]) CHECK(node.residual_energy == last[i]);
          CHECK(node.alive == (node.id == 0 || node.residual_energy > 0));
          last[i] = node.residual_energy;
          was_dead[i] = !node.alive;
        }
        const double spent = sim.initial_energy() - sim.residual_energy();
        CHECK(std::abs(spent - sim.ledger().raw_total()) <= 1e-9 * sim.initial_energy());
      }
      CHECK(delivered + lost == generated);
    }
  }
}

TEST_CASE("totals equal per-slot sums and energy is conserved") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rec = run_experiment(default_config(50, 100, seed));
    long generated = 0, delivered = 0, lost = 0;
    double energy = 0;
    for (const auto& s : rec.slots) {
      generated += s.generated;
      delivered += s.delivered;
      lost += s.lost;
      energy += s.energy_consumed;
    }
    CHECK(rec.totals.generated == generated);
    CHECK(rec.totals.delivered == delivered);
    CHECK(rec.totals.lost == lost);
    CHECK(rec.totals.energy_consumed == doctest::Approx(energy).epsilon(1e-12));
    // Integer layout and costs: exact.
    CHECK(rec.initial_energy - sensor_residuals(rec) == rec.totals.ledger.raw_total());
    CHECK(rec.totals.lifetime == static_cast<double>(rec.slots.size()));
    CHECK(rec.totals.lifetime > 0);
  }
}

TEST_CASE("experiments are deterministic") {
  const auto c = default_config(50, 100, 9);
  std::ostringstream a, b;
  write_record(a, run_experiment(c));
  write_record(b, run_experiment(c));
  CHECK(a.str() == b.str());
}

TEST_CASE("max_timeslots caps a run") {
  auto c = default_config(50, 100, 3);
  c.max_timeslots = 7;
  const auto rec = run_experiment(c);
  CHECK(rec.slots.size() == 7);
  c.max_timeslots = 0;
  CHECK_THROWS_AS(run_experiment(c), Error);
}

TEST_CASE("slot duration scales lifetime") {
  SimConfig c;
  c.slot_duration = 2.5;
  const auto rec = run_experiment(c, make_graph({{0, 0}, {3, 4}}, 10, 100));
  CHECK(rec.totals.lifetime == 10.0);
}

TEST_CASE("equal-weight layouts give identical trees for both methods") {
  // Every sensor is one hop from the sink at the same distance.
  auto layout = make_graph({{10, 10}, {10, 15}, {15, 10}, {10, 5}, {5, 10}}, 6, 100);
  SimConfig pd;
  SimConfig dd;
  dd.method.variant = CostVariant::kDdtm;
  Simulation a(pd, layout), b(dd, layout);
  a.rebuild_routes();
  b.rebuild_routes();
  CHECK(a.tree().parent == b.tree().parent);
}

TEST_CASE("paired comparison shares the layout") {
  const auto cmp = compare_methods(default_config(50, 100, 4));
  CHECK(cmp.pdtm.layout.size() == cmp.ddtm.layout.size());
  for (std::size_t i = 0; i < cmp.pdtm.layout.size(); ++i) {
    CHECK(cmp.pdtm.layout[i].x == cmp.ddtm.layout[i].x);
    CHECK(cmp.pdtm.layout[i].y == cmp.ddtm.layout[i].y);
  }
  CHECK(cmp.delta_delivered == cmp.pdtm.totals.delivered - cmp.ddtm.totals.delivered);
  CHECK(cmp.pdtm.config.method.variant == CostVariant::kPdtm);
  CHECK(cmp.ddtm.config.method.variant == CostVariant::kDdtm);
}

TEST_CASE("seeded 50-node layout: pdtm delivers more and lives longer") {
  const auto cmp = compare_methods(default_config(50, 100, 2));
  CHECK(cmp.pdtm.totals.delivered > cmp.ddtm.totals.delivered);
  CHECK(cmp.pdtm.totals.lifetime > cmp.ddtm.totals.lifetime);
}

TEST_CASE("record format") {
  SimConfig c;
  std::ostringstream out;
  write_record(out, run_experiment(c, make_graph({{0, 0}, {3, 4}}, 10, 100)));
  const auto s = out.str();
  CHECK(s.find("# method=pdtm") == 0);
  CHECK(s.find("slot,generated,delivered,lost,new_dead,energy\n0,1,1,0,0,25\n") != std::string::npos);
  CHECK(s.find("3,1,1,0,1,25\ntotal,4,4,0,1,100\n# lifetime=4\n") != std::string::npos);
}
