#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "wsn/error.hpp"
#include "wsn/rng.hpp"
#include "wsn/routing.hpp"

using namespace wsn;
using wsn::test::make_graph;
using wsn::test::small_deployment;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum weight over every simple path from source, by DFS enumeration.
void enumerate(const WeightedDigraph& dg, int u, double cost, std::vector<bool>& seen, std::vector<double>& best) {
  best[static_cast<std::size_t>(u)] = std::min(best[static_cast<std::size_t>(u)], cost);
  for (const auto& e : dg.edges) {
    if (e.from != u || seen[static_cast<std::size_t>(e.to)]) continue;
    seen[static_cast<std::size_t>(e.to)] = true;
    enumerate(dg, e.to, cost + e.weight, seen, best);
    seen[static_cast<std::size_t>(e.to)] = false;
  }
}

std::vector<double> brute_force(const WeightedDigraph& dg, int source) {
  std::vector<double> best(static_cast<std::size_t>(dg.n), kInf);
  std::vector<bool> seen(static_cast<std::size_t>(dg.n), false);
  seen[static_cast<std::size_t>(source)] = true;
  enumerate(dg, source, 0.0, seen, best);
  return best;
}

WeightedDigraph random_digraph(Rng& rng, bool integer_weights) {
  WeightedDigraph dg;
  dg.n = static_cast<int>(rng.uniform_int(1, 8));
  for (int i = 0; i < dg.n; ++i)
    for (int j = 0; j < dg.n; ++j)
      if (i != j && rng.uniform01() < 0.35)
        dg.edges.push_back({i, j, integer_weights ? static_cast<double>(rng.uniform_int(0, 9)) : rng.uniform(0, 10)});
  return dg;
}

}  // namespace

TEST_CASE("pdtm cost hand values") {
  CHECK(pdtm_cost(2, 10, 1, 100, 2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(pdtm_cost(0, 37, 4, 12, 2) == 0.0);
  CHECK(pdtm_cost(3, 5, 2, 50, 2) == doctest::Approx(2.0 * pdtm_cost(3, 5, 2, 100, 2)));
  CHECK(pdtm_cost(1, 4, 0, 1, 1.5) == doctest::Approx(8.0));
  CHECK_THROWS_AS(pdtm_cost(1, 1, 0, 0, 2), Error);
}

TEST_CASE("edge weights read the relay's state") {
  auto g = make_graph({{0, 0}, {6, 8}, {12, 16}}, 10, 100);
  assign_levels(g);
  compute_relay_degrees(g);
  CostMethod m;
  // Relay 1: level 1, relay degree 1 (node 2), d = 10.
  CHECK(edge_weight_pdtm(g, 1, 2, m) == doctest::Approx(1.0 * 100 * 2 / 100));
  CHECK(edge_weight_pdtm(g, 0, 1, m) == 0.0);  // infinite sink energy
  m.sink_energy = 50;
  CHECK(edge_weight_pdtm(g, 0, 1, m) == doctest::Approx(1.0 * 100 * 1 / 50));
  CHECK(edge_weight_ddtm(g, 1, 2) == 100.0);
  g.node(1).alive = false;
  g.node(1).residual_energy = 0;
  CHECK_THROWS_AS(edge_weight_pdtm(g, 1, 2, m), Error);
}

TEST_CASE("ddtm weights") {
  auto g = make_graph({{0, 0}, {3, 0}, {3, 0}, {13, 0}}, 20);
  CHECK(edge_weight_ddtm(g, 0, 1) == 9.0);
  CHECK(edge_weight_ddtm(g, 1, 2) == 0.0);
  CHECK(edge_weight_ddtm(g, 1, 3) == 100.0);
}

TEST_CASE("cost method validation") {
  CostMethod m;
  m.alpha = 1.0;
  CHECK_THROWS_AS(m.validate(), Error);
  m.alpha = 2.5;
  CHECK_THROWS_AS(m.validate(), Error);
  m.alpha = 1.5;
  CHECK_NOTHROW(m.validate());
  CHECK(parse_cost_variant("ddtm") == CostVariant::kDdtm);
  CHECK_THROWS_AS(parse_cost_variant("lea"), Error);
}

TEST_CASE("digraph follows the level rule") {
  SUBCASE("only the sink alive") {
    auto g = make_graph({{0, 0}, {5, 0}, {0, 5}}, 10);
    g.node(1).alive = false;
    g.node(2).alive = false;
    assign_levels(g);
    compute_relay_degrees(g);
    CHECK(build_weighted_digraph(g, {}).edges.empty());
  }
  SUBCASE("chain") {
    auto g = make_graph({{0, 0}, {8, 0}, {16, 0}}, 10);
    assign_levels(g);
    compute_relay_degrees(g);
    const auto dg = build_weighted_digraph(g, {CostVariant::kDdtm});
    std::set<std::pair<int, int>> edges;
    for (const auto& e : dg.edges) edges.insert({e.from, e.to});
    CHECK(edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
  }
  SUBCASE("diamond") {
    auto g = make_graph({{0, 0}, {10, 0}, {0, 10}, {10, 10}}, 10);
    assign_levels(g);
    compute_relay_degrees(g);
    const auto dg = build_weighted_digraph(g, {});
    std::set<std::pair<int, int>> edges;
    for (const auto& e : dg.edges) edges.insert({e.from, e.to});
    CHECK(edges == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  }
  SUBCASE("same-level pairs get both directions") {
    auto g = make_graph({{0, 0}, {8, 0}, {8, 5}}, 10);
    assign_levels(g);
    compute_relay_degrees(g);
    std::set<std::pair<int, int>> edges;
    for (const auto& e : build_weighted_digraph(g, {}).edges) edges.insert({e.from, e.to});
    CHECK(edges.count({1, 2}) == 1);
    CHECK(edges.count({2, 1}) == 1);
  }
}

TEST_CASE("dijkstra on trivial and invalid inputs") {
  WeightedDigraph dg{4, {}};
  const auto t = dijkstra(dg, 2);
  CHECK(t.dist[2] == 0.0);
  CHECK(t.parent[2] == kNoParent);
  for (int v : {0, 1, 3}) {
    CHECK(t.dist[static_cast<std::size_t>(v)] == kUnreachableCost);
    CHECK(t.parent[static_cast<std::size_t>(v)] == kNoParent);
    CHECK(t.depth(v) == -1);
  }
  dg.edges = {{0, 1, 1.0}, {1, 2, -0.5}};
  CHECK_THROWS_AS(dijkstra(dg, 0), Error);
  CHECK_THROWS_AS(dijkstra(dg, 4), Error);
}

TEST_CASE("dijkstra matches exhaustive path enumeration") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const bool integer = trial % 2 == 0;
    const auto dg = random_digraph(rng, integer);
    const auto t = dijkstra(dg, 0);
    const auto want = brute_force(dg, 0);
    for (int v = 0; v < dg.n; ++v) {
      const double got = t.dist[static_cast<std::size_t>(v)];
      const double exp = want[static_cast<std::size_t>(v)];
      if (integer || !std::isfinite(exp)) {
        CHECK(got == exp);
      } else {
        CHECK(std::abs(got - exp) <= 1e-9 * std::max(1.0, exp));
      }
    }
  }
}

TEST_CASE("equal-cost parents go to the lowest id") {
  // Two relays (1 and 2) reach node 3 at the same total cost.
  WeightedDigraph dg{4, {{0, 2, 1.0}, {0, 1, 1.0}, {2, 3, 1.0}, {1, 3, 1.0}}};
  CHECK(dijkstra(dg, 0).parent[3] == 1);
  WeightedDigraph reversed{4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}};
  CHECK(dijkstra(reversed, 0).parent[3] == 1);
}

TEST_CASE("parent chains terminate at the sink with decreasing cost") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (auto variant : {CostVariant::kPdtm, CostVariant::kDdtm}) {
      auto g = deploy_random(small_deployment(60, 100, seed));
      Rng rng(seed);
      for (int i = 1; i < 60; ++i) g.node(i).residual_energy = rng.uniform(1, 1000);
      CostMethod m;
      m.variant = variant;
      const auto t = build_routing_tree(g, m);
      CHECK(t.dist[0] == 0.0);
      for (const auto& node : g.nodes()) {
        if (!t.reachable(node.id)) continue;
        int steps = 0;
        for (int v = node.id; v != 0; v = t.parent[static_cast<std::size_t>(v)]) {
          const int p = t.parent[static_cast<std::size_t>(v)];
          REQUIRE(p != kNoParent);
          CHECK(t.dist[static_cast<std::size_t>(p)] <= t.dist[static_cast<std::size_t>(v)]);
          CHECK(g.node(p).level < g.node(v).level + 1);
          REQUIRE(++steps < 60);
        }
      }
    }
  }
}

TEST_CASE("two-node network routes straight to the sink") {
  auto g = make_graph({{0, 0}, {3, 4}}, 10);
  const auto t = build_routing_tree(g, {});
  CHECK(t.parent[1] == 0);
  CHECK(t.depth(1) == 1);
}

TEST_CASE("pdtm tree is invariant to scaling all energies") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto g = deploy_random(small_deployment(40, 120, seed));
    Rng rng(seed ^ 0x55);
    for (int i = 1; i < 40; ++i) g.node(i).residual_energy = static_cast<double>(rng.uniform_int(1, 1000));
    auto scaled = g;
    const double c = std::ldexp(1.0, static_cast<int>(seed % 7) - 3) * 3.0;
    for (int i = 1; i < 40; ++i) scaled.node(i).residual_energy *= c;
    CHECK(build_routing_tree(g, {}).parent == build_routing_tree(scaled, {}).parent);
  }
}

TEST_CASE("ddtm tree ignores residual energies") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = deploy_random(small_deployment(40, 120, seed));
    auto other = g;
    Rng rng(seed);
    for (int i = 1; i < 40; ++i) other.node(i).residual_energy = rng.uniform(1, 5);
    CostMethod m{CostVariant::kDdtm};
    CHECK(build_routing_tree(g, m).parent == build_routing_tree(other, m).parent);
  }
}

TEST_CASE("pdtm routes around a depleted relay, ddtm does not") {
  // Relays 1 and 2 both reach the sink; sender 3 is slightly closer to 1.
  auto g = make_graph({{0, 0}, {0, 9}, {3, 9}, {1, 18}}, 10, 100);
  CostMethod pd;
  CostMethod dd{CostVariant::kDdtm};
  CHECK(build_routing_tree(g, pd).parent[3] == 1);
  CHECK(build_routing_tree(g, dd).parent[3] == 1);
  g.node(1).residual_energy = 10;
  CHECK(build_routing_tree(g, pd).parent[3] == 2);
  CHECK(build_routing_tree(g, dd).parent[3] == 1);
}

TEST_CASE("routing tree export") {
  auto g = make_graph({{0, 0}, {3, 4}, {100, 100}}, 10);
  const auto t = build_routing_tree(g, {});
  std::ostringstream out;
  write_routing_tree(out, g, t);
  CHECK(out.str().find("# id parent dist level") == 0);
  CHECK(out.str().find("\n1 0 0 1\n") != std::string::npos);
  CHECK(out.str().find("\n2 -1 inf -1\n") != std::string::npos);
}
