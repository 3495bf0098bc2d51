#ifndef WSN_TESTS_FIXTURES_HPP_
#define WSN_TESTS_FIXTURES_HPP_

#include <utility>
#include <vector>

#include "wsn/network.hpp"

namespace wsn::test {

/// Graph from explicit coordinates; node 0 is the sink.
inline NetworkGraph make_graph(const std::vector<std::pair<double, double>>& xy, double tx_radius,
                               double energy = 100.0) {
  std::vector<Node> nodes(xy.size());
  for (std::size_t i = 0; i < xy.size(); ++i) {
    nodes[i].pos = {xy[i].first, xy[i].second};
    nodes[i].residual_energy = energy;
  }
  return NetworkGraph(std::move(nodes), 0, tx_radius, Area{1000.0, 1000.0});
}

inline DeploymentConfig small_deployment(int n, double tx, std::uint64_t seed) {
  DeploymentConfig c;
  c.n_nodes = n;
  c.tx_radius = tx;
  c.rng_seed = seed;
  return c;
}

}  // namespace wsn::test

#endif  // WSN_TESTS_FIXTURES_HPP_
