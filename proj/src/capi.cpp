#include "wsn/wsn.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "wsn/energy.hpp"
#include "wsn/error.hpp"
#include "wsn/experiment.hpp"
#include "wsn/metrics.hpp"
#include "wsn/network.hpp"
#include "wsn/routing.hpp"
#include "wsn/settings.hpp"
#include "wsn/simulation.hpp"
#include "wsn/stats.hpp"

struct wsn_settings {
  wsn::Settings impl;
};

struct wsn_network {
  wsn::NetworkGraph graph;
};

struct wsn_record {
  wsn::ExperimentRecord impl;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
wsn_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WSN_OK;
  } catch (const wsn::Error& e) {
    g_last_error = e.what();
    return static_cast<wsn_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return WSN_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) wsn::fail(wsn::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

std::ofstream open_for_write(const char* path) {
  need(path, "path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) wsn::fail(wsn::ErrorCode::kIo, std::string("cannot write '") + path + "'");
  return out;
}

}  // namespace

extern "C" {

const char* wsn_last_error(void) { return g_last_error.c_str(); }
const char* wsn_version(void) { return "1.0.0"; }

wsn_status wsn_settings_create(wsn_settings** out) {
  return guarded([&] {
    need(out, "out");
    *out = new wsn_settings{};
  });
}

void wsn_settings_destroy(wsn_settings* s) { delete s; }

wsn_status wsn_settings_set(wsn_settings* s, const char* key, const char* value) {
  return guarded([&] {
    need(s, "settings");
    need(key, "key");
    need(value, "value");
    s->impl.set(key, value);
  });
}

wsn_status wsn_settings_get(const wsn_settings* s, const char* key, const char** value) {
  return guarded([&] {
    need(s, "settings");
    need(key, "key");
    need(value, "value");
    *value = s->impl.get(key).c_str();
  });
}

wsn_status wsn_settings_load_file(wsn_settings* s, const char* path) {
  return guarded([&] {
    need(s, "settings");
    need(path, "path");
    s->impl.load_file(path);
  });
}

size_t wsn_settings_key_count(void) { return wsn::setting_specs().size(); }

wsn_status wsn_settings_key_info(size_t i, const char** key, const char** default_value, const char** help) {
  return guarded([&] {
    const auto& specs = wsn::setting_specs();
    wsn::require(i < specs.size(), wsn::ErrorCode::kOutOfRange, "setting index out of range");
    // The spec strings are literals, so their data() is NUL-terminated.
    if (key != nullptr) *key = specs[i].key.data();
    if (default_value != nullptr) *default_value = specs[i].default_value.data();
    if (help != nullptr) *help = specs[i].help.data();
  });
}

wsn_status wsn_cmd_sweep(const wsn_settings* s, const char* out_path) {
  return guarded([&] {
    need(s, "settings");
    need(out_path, "out_path");
    wsn::cmd_sweep(s->impl, out_path);
  });
}

wsn_status wsn_cmd_dataset(const wsn_settings* s, const char* out_path) {
  return guarded([&] {
    need(s, "settings");
    need(out_path, "out_path");
    wsn::cmd_dataset(s->impl, out_path);
  });
}

wsn_status wsn_cmd_analyze(const wsn_settings* s, const char* dataset_path, const char* out_path) {
  return guarded([&] {
    need(s, "settings");
    need(dataset_path, "dataset_path");
    need(out_path, "out_path");
    wsn::cmd_analyze(s->impl, dataset_path, out_path);
  });
}

wsn_status wsn_cmd_fit_edm(const wsn_settings* s, const char* flows_path, const char* out_path) {
  return guarded([&] {
    need(s, "settings");
    need(flows_path, "flows_path");
    need(out_path, "out_path");
    wsn::cmd_fit_edm(s->impl, flows_path, out_path);
  });
}

wsn_status wsn_cmd_compare(const wsn_settings* s, const char* out_path) {
  return guarded([&] {
    need(s, "settings");
    need(out_path, "out_path");
    wsn::cmd_compare(s->impl, out_path);
  });
}

wsn_status wsn_network_deploy(const wsn_settings* s, wsn_network** out) {
  return guarded([&] {
    need(s, "settings");
    need(out, "out");
    auto graph = wsn::deploy_random(wsn::sim_config_from(s->impl).deployment);
    wsn::assign_levels(graph);
    wsn::compute_relay_degrees(graph);
    *out = new wsn_network{std::move(graph)};
  });
}

wsn_status wsn_network_create(const double* xs, const double* ys, const double* energies, size_t n,
                              double tx_radius, wsn_network** out) {
  return guarded([&] {
    need(xs, "xs");
    need(ys, "ys");
    need(energies, "energies");
    need(out, "out");
    wsn::require(n >= 1, wsn::ErrorCode::kInvalidArgument, "network needs at least one node");
    std::vector<wsn::Node> nodes(n);
    wsn::Area area{1.0, 1.0};
    for (size_t i = 0; i < n; ++i) {
      wsn::require(std::isfinite(xs[i]) && std::isfinite(ys[i]) && xs[i] >= 0.0 && ys[i] >= 0.0,
                   wsn::ErrorCode::kInvalidArgument, "coordinates must be finite and non-negative");
      wsn::require(energies[i] >= 0.0, wsn::ErrorCode::kInvalidArgument, "energies must be >= 0");
      nodes[i].pos = {xs[i], ys[i]};
      nodes[i].residual_energy = energies[i];
      nodes[i].alive = i == 0 || energies[i] > 0.0;
      area.width = std::max(area.width, xs[i]);
      area.height = std::max(area.height, ys[i]);
    }
    wsn::NetworkGraph graph(std::move(nodes), 0, tx_radius, area);
    wsn::assign_levels(graph);
    wsn::compute_relay_degrees(graph);
    *out = new wsn_network{std::move(graph)};
  });
}

void wsn_network_destroy(wsn_network* net) { delete net; }

size_t wsn_network_size(const wsn_network* net) { return net == nullptr ? 0 : net->graph.size(); }

wsn_status wsn_network_node(const wsn_network* net, size_t id, wsn_node_info* out) {
  return guarded([&] {
    need(net, "network");
    need(out, "out");
    wsn::require(id < net->graph.size(), wsn::ErrorCode::kOutOfRange, "node id out of range");
    const auto& node = net->graph.node(static_cast<int>(id));
    out->x = node.pos.x;
    out->y = node.pos.y;
    out->residual_energy = node.residual_energy;
    out->level = node.level == wsn::kUnreachable ? -1 : node.level;
    out->relay_degree = node.relay_degree;
    out->alive = node.alive ? 1 : 0;
  });
}

wsn_status wsn_network_neighbors(const wsn_network* net, size_t id, int* ids, size_t cap, size_t* count) {
  return guarded([&] {
    need(net, "network");
    need(count, "count");
    wsn::require(id < net->graph.size(), wsn::ErrorCode::kOutOfRange, "node id out of range");
    const auto nbrs = net->graph.neighbors(static_cast<int>(id));
    if (cap > 0) need(ids, "ids");
    for (size_t i = 0; i < nbrs.size() && i < cap; ++i) ids[i] = nbrs[i].id;
    *count = nbrs.size();
  });
}

wsn_status wsn_network_route(const wsn_network* net, wsn_method method, double alpha, int* parents,
                             double* costs) {
  return guarded([&] {
    need(net, "network");
    wsn::require(method == WSN_PDTM || method == WSN_DDTM, wsn::ErrorCode::kInvalidArgument, "unknown method");
    wsn::CostMethod cm;
    cm.variant = method == WSN_PDTM ? wsn::CostVariant::kPdtm : wsn::CostVariant::kDdtm;
    cm.alpha = alpha;
    cm.validate();
    wsn::NetworkGraph copy = net->graph;
    const auto tree = wsn::build_routing_tree(copy, cm);
    for (size_t i = 0; i < copy.size(); ++i) {
      if (parents != nullptr) parents[i] = tree.parent[i];
      if (costs != nullptr) costs[i] = tree.dist[i];
    }
  });
}

wsn_status wsn_network_write_snapshot(const wsn_network* net, const char* path) {
  return guarded([&] {
    need(net, "network");
    auto out = open_for_write(path);
    wsn::write_snapshot(out, net->graph);
    if (!out) wsn::fail(wsn::ErrorCode::kIo, "write failed");
  });
}

wsn_status wsn_run_experiment(const wsn_settings* s, const wsn_network* net, wsn_record** out) {
  return guarded([&] {
    need(s, "settings");
    need(out, "out");
    const auto config = wsn::sim_config_from(s->impl);
    auto rec = net == nullptr ? wsn::run_experiment(config) : wsn::run_experiment(config, net->graph);
    *out = new wsn_record{std::move(rec)};
  });
}

void wsn_record_destroy(wsn_record* rec) { delete rec; }

wsn_status wsn_record_totals(const wsn_record* rec, wsn_totals* out) {
  return guarded([&] {
    need(rec, "record");
    need(out, "out");
    const auto& t = rec->impl.totals;
    *out = {t.generated, t.delivered, t.lost, t.dead_nodes_at_end, t.lifetime, t.energy_consumed,
            static_cast<int>(rec->impl.slots.size())};
  });
}

wsn_status wsn_record_slot(const wsn_record* rec, size_t index, wsn_slot* out) {
  return guarded([&] {
    need(rec, "record");
    need(out, "out");
    wsn::require(index < rec->impl.slots.size(), wsn::ErrorCode::kOutOfRange, "slot index out of range");
    const auto& m = rec->impl.slots[index];
    *out = {m.slot, m.generated, m.delivered, m.lost, m.new_dead, m.energy_consumed};
  });
}

wsn_status wsn_record_write(const wsn_record* rec, const char* path) {
  return guarded([&] {
    need(rec, "record");
    auto out = open_for_write(path);
    wsn::write_record(out, rec->impl);
    if (!out) wsn::fail(wsn::ErrorCode::kIo, "write failed");
  });
}

wsn_status wsn_tx_energy(double e_amp, double alpha, int packet_bits, double distance, long packets,
                         double* out) {
  return guarded([&] {
    need(out, "out");
    wsn::RadioParams p;
    p.e_amp = e_amp;
    p.alpha = alpha;
    p.packet_bits = packet_bits;
    p.validate();
    *out = wsn::tx_energy(p, distance, packets);
  });
}

wsn_status wsn_pearson(const double* x, const double* y, size_t n, double* out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = wsn::pearson({x, n}, {y, n});
  });
}

wsn_status wsn_spearman(const double* x, const double* y, size_t n, double* out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = wsn::spearman({x, n}, {y, n});
  });
}

wsn_status wsn_nonlinear_corr(const double* x, const double* y, size_t n, int degree, double* out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    *out = wsn::nonlinear_corr({x, n}, {y, n}, degree);
  });
}

wsn_status wsn_p_value(double r, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = wsn::p_value_from_r(r, n);
  });
}

wsn_status wsn_evaluate(const double* actual, const double* predicted, size_t n, wsn_eval* out) {
  return guarded([&] {
    need(actual, "actual");
    need(predicted, "predicted");
    need(out, "out");
    const auto r = wsn::evaluate({actual, n}, {predicted, n});
    out->mape = r.mape ? *r.mape : std::numeric_limits<double>::quiet_NaN();
    out->pred25 = r.pred25;
    out->rmse = r.rmse;
    out->r2 = r.r2;
    out->r2_conventional = r.r2_conventional;
  });
}

}  // extern "C"
