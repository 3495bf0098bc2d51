#include "wsn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "wsn/error.hpp"
#include "wsn/forest.hpp"
#include "wsn/rng.hpp"
#include "wsn/stats.hpp"

namespace wsn {

namespace {

using json = nlohmann::ordered_json;

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Callers write
/// results into pre-sized slots, so completion order never matters.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const auto threads = static_cast<std::size_t>(std::clamp(workers, 1, 256));
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write output file '" + path + "'");
  return out;
}

void finish_output(std::ofstream& out, const std::string& text, const std::string& path) {
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

bool json_format(const Settings& settings) {
  const auto& f = settings.get("format");
  if (f == "json") return true;
  if (f == "csv") return false;
  fail(ErrorCode::kInvalidArgument, "format must be csv or json, got '" + f + "'");
}

void csv_header(std::ostream& out, const Settings& settings, std::string_view command) {
  out << "# wsnsim " << command << '\n';
  settings.echo(out);
}

json settings_json(const Settings& settings) {
  json j = json::object();
  for (const auto& [k, v] : settings.values()) j[k] = v;
  return j;
}

/// JSON has no infinity; undefined metrics become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json eval_json(const EvalReport& r) {
  return json{{"mape", r.mape ? number(*r.mape) : json(nullptr)},
              {"pred25", number(r.pred25)},
              {"rmse", number(r.rmse)},
              {"r2", number(r.r2)},
              {"r2_conventional", number(r.r2_conventional)},
              {"diagnostic", r.diagnostic}};
}

void eval_csv(std::ostream& out, const std::string& label, std::size_t features, const EvalReport& r) {
  out << label << ',' << features << ',';
  if (r.mape)
    out << *r.mape;
  else
    out << "nan";
  out << ',' << r.pred25 << ',' << r.rmse << ',' << r.r2 << ',' << r.r2_conventional << '\n';
}

std::vector<CostVariant> parse_methods(const std::vector<std::string>& names) {
  std::vector<CostVariant> out;
  for (const auto& n : names) out.push_back(parse_cost_variant(n));
  return out;
}

}  // namespace

SimConfig sim_config_from(const Settings& s) {
  SimConfig c;
  c.deployment.n_nodes = static_cast<int>(s.get_int("nodes"));
  c.deployment.tx_radius = s.get_real("tx_radius");
  c.deployment.area = {s.get_real("area_width"), s.get_real("area_height")};
  c.deployment.sink_position = {s.get_real("sink_x"), s.get_real("sink_y")};
  c.deployment.rng_seed = s.get_unsigned("seed");
  c.deployment.initial_energy = s.get_real("initial_energy");
  c.radio.e_amp = s.get_real("e_amp");
  c.radio.e_elec = s.get_real("e_elec");
  c.radio.alpha = s.get_real("radio_alpha");
  c.radio.packet_bits = static_cast<int>(s.get_int("packet_bits"));
  c.method.variant = parse_cost_variant(s.get("method"));
  c.method.alpha = s.get_real("pdtm_alpha");
  c.method.sink_energy = s.get_real("sink_energy");
  c.sense_cost = s.get_real("sense_cost");
  c.local_overhead = s.get_real("local_overhead");
  c.topo_overhead = s.get_real("topo_overhead");
  c.max_timeslots = static_cast<int>(s.get_int("max_timeslots"));
  c.slot_duration = s.get_real("slot_duration");
  c.disconnected_generate = s.get_bool("disconnected_generate");
  c.validate();
  return c;
}

void SweepSpec::validate() const {
  require(!node_counts.empty() && !tx_radii.empty() && !methods.empty(), ErrorCode::kInvalidArgument,
          "sweep lists must be non-empty");
  require(graphs_per_cell >= 1, ErrorCode::kInvalidArgument, "graphs_per_cell must be >= 1");
  for (int n : node_counts) require(n >= 2, ErrorCode::kInvalidArgument, "node counts must be >= 2");
  for (double tx : tx_radii) require(tx > 0.0, ErrorCode::kInvalidArgument, "radii must be > 0");
}

SweepSpec sweep_spec_from(const Settings& s) {
  SweepSpec spec;
  spec.node_counts.clear();
  for (auto n : s.get_int_list("node_counts")) spec.node_counts.push_back(static_cast<int>(n));
  spec.tx_radii = s.get_real_list("tx_radii");
  spec.graphs_per_cell = static_cast<int>(s.get_int("graphs_per_cell"));
  spec.base_seed = s.get_unsigned("seed");
  spec.methods = parse_methods(s.get_word_list("methods"));
  spec.validate();
  return spec;
}

std::uint64_t sweep_cell_seed(std::uint64_t base_seed, int n_nodes, double tx_radius, int index) {
  return hash_seed({base_seed, static_cast<std::uint64_t>(n_nodes), std::bit_cast<std::uint64_t>(tx_radius),
                    static_cast<std::uint64_t>(index)});
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SimConfig& base, int workers) {
  spec.validate();
  struct Cell {
    int n;
    double tx;
    int index;
  };
  std::vector<Cell> cells;
  for (int n : spec.node_counts)
    for (double tx : spec.tx_radii)
      for (int g = 0; g < spec.graphs_per_cell; ++g) cells.push_back({n, tx, g});

  const std::size_t per_cell = spec.methods.size();
  std::vector<SweepRow> rows(cells.size() * per_cell);
  parallel_for(cells.size(), workers, [&](std::size_t c) {
    const Cell& cell = cells[c];
    SimConfig config = base;
    config.deployment.n_nodes = cell.n;
    config.deployment.tx_radius = cell.tx;
    config.deployment.rng_seed = sweep_cell_seed(spec.base_seed, cell.n, cell.tx, cell.index);
    const NetworkGraph layout = deploy_random(config.deployment);
    for (std::size_t m = 0; m < per_cell; ++m) {
      config.method.variant = spec.methods[m];
      const ExperimentRecord rec = run_experiment(config, layout);
      SweepRow& row = rows[c * per_cell + m];
      row.n_nodes = cell.n;
      row.tx_radius = cell.tx;
      row.graph_index = cell.index;
      row.seed = config.deployment.rng_seed;
      row.method = spec.methods[m];
      row.totals = rec.totals;
      row.initial_energy = rec.initial_energy;
      double residual = 0.0;
      for (std::size_t i = 0; i < rec.final_residuals.size(); ++i)
        if (static_cast<int>(i) != 0) residual += rec.final_residuals[i];
      row.final_residual = residual;
      row.avg_neighbors = rec.avg_neighbors;
      row.avg_hops = rec.avg_hops;
      row.avg_distance = rec.avg_distance;
    }
  });
  return rows;
}

void AnalyticsSweepSpec::validate() const {
  require(runs >= 1 && repeats_per_config >= 1, ErrorCode::kInvalidArgument, "runs and repeats must be >= 1");
  require(tx_min > 0.0 && tx_max > tx_min, ErrorCode::kInvalidArgument, "tx range must be non-degenerate");
  require(size_min >= 2 && size_max > size_min, ErrorCode::kInvalidArgument, "size range must be non-degenerate");
  require(sinks_min >= 1 && sinks_max > sinks_min, ErrorCode::kInvalidArgument,
          "sinks range must be non-degenerate");
  require(rx_cost_min >= 0.0 && rx_cost_max > rx_cost_min, ErrorCode::kInvalidArgument,
          "receive cost range must be non-degenerate");
  require(window_slots >= 1, ErrorCode::kInvalidArgument, "window_slots must be >= 1");
}

AnalyticsSweepSpec analytics_spec_from(const Settings& s) {
  AnalyticsSweepSpec spec;
  spec.runs = static_cast<int>(s.get_int("runs"));
  spec.repeats_per_config = static_cast<int>(s.get_int("repeats"));
  spec.tx_min = s.get_real("tx_min");
  spec.tx_max = s.get_real("tx_max");
  spec.size_min = static_cast<int>(s.get_int("size_min"));
  spec.size_max = static_cast<int>(s.get_int("size_max"));
  spec.sinks_min = static_cast<int>(s.get_int("sinks_min"));
  spec.sinks_max = static_cast<int>(s.get_int("sinks_max"));
  spec.rx_cost_min = s.get_real("rx_cost_min");
  spec.rx_cost_max = s.get_real("rx_cost_max");
  spec.window_slots = static_cast<int>(s.get_int("window_slots"));
  spec.seed = s.get_unsigned("seed");
  spec.validate();
  return spec;
}

GeneratedDataset generate_dataset(const AnalyticsSweepSpec& spec, const SimConfig& base, int workers) {
  spec.validate();
  const std::size_t width = kDatasetColumns.size();
  struct Row {
    std::vector<double> x;
    double target = 0.0;
    bool valid = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(spec.runs));

  parallel_for(rows.size(), workers, [&](std::size_t r) {
    const std::uint64_t run_seed = hash_seed({spec.seed, 0x64617461ull, r});
    Rng rng(run_seed);
    const double tx = rng.uniform(spec.tx_min, spec.tx_max);
    const int size = static_cast<int>(rng.uniform_int(spec.size_min, spec.size_max));
    const int sinks = static_cast<int>(rng.uniform_int(spec.sinks_min, spec.sinks_max));
    const double rx_cost = rng.uniform(spec.rx_cost_min, spec.rx_cost_max);

    SimConfig config = base;
    config.deployment.n_nodes = size;
    config.deployment.tx_radius = tx;
    config.radio.e_elec = rx_cost / config.radio.packet_bits;
    config.max_timeslots = spec.window_slots;

    std::vector<double> observed(width, 0.0);
    double target = 0.0;
    int used = 0;
    for (int k = 0; k < spec.repeats_per_config; ++k) {
      config.deployment.rng_seed = hash_seed({run_seed, static_cast<std::uint64_t>(k)});
      const ExperimentRecord rec = run_experiment(config);
      if (rec.totals.delivered == 0) continue;
      double tx_energy = 0.0, queue = 0.0, hops = 0.0;
      long sent = 0, turns = 0;
      for (const auto& s : rec.slots) {
        tx_energy += s.tx_energy;
        sent += s.packets_sent;
        queue += s.avg_queue * static_cast<double>(s.transmissions);
        turns += s.transmissions;
        hops += s.avg_hops;
      }
      const std::vector<double> v{tx,
                                  static_cast<double>(size),
                                  static_cast<double>(sinks),
                                  sent == 0 ? 0.0 : tx_energy / static_cast<double>(sent),
                                  turns == 0 ? 0.0 : queue / static_cast<double>(turns),
                                  rec.avg_distance,
                                  rec.avg_neighbors,
                                  rx_cost,
                                  rec.slots.empty() ? 0.0 : hops / static_cast<double>(rec.slots.size())};
      for (std::size_t c = 0; c < width; ++c) observed[c] += v[c];
      target += rec.totals.energy_consumed / static_cast<double>(rec.totals.delivered);
      ++used;
    }
    if (used == 0) return;
    for (auto& v : observed) v /= used;
    rows[r] = {std::move(observed), target / used, true};
  });

  GeneratedDataset out;
  out.data.column_names = kDatasetColumns;
  out.data.target_name = kDatasetTarget;
  for (const auto& row : rows) {
    if (!row.valid) {
      ++out.excluded;
      continue;
    }
    out.data.X.insert(out.data.X.end(), row.x.begin(), row.x.end());
    out.data.y.push_back(row.target);
  }
  return out;
}

AnalysisResult analyze_dataset(const Dataset& data, const AnalysisOptions& options) {
  data.validate();
  require(options.folds >= 2, ErrorCode::kInvalidArgument, "folds must be >= 2");
  require(data.rows() >= static_cast<std::size_t>(options.folds), ErrorCode::kInvalidArgument,
          "dataset has fewer rows than folds");

  AnalysisResult result;
  result.report = build_dependency_report(data, {options.lasso_ratio});
  select_prevalent(result.report, options.corr_threshold, options.p_threshold);

  std::vector<std::size_t> all(data.cols()), prevalent;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    all[c] = c;
    if (result.report.parameters[c].prevalent) {
      prevalent.push_back(c);
      result.prevalent_names.push_back(data.column_names[c]);
    }
  }

  const auto folds = kfold_split(data.rows(), options.folds, hash_seed({options.seed, 0x6376ull}));
  const auto cross_validate = [&](const std::vector<std::size_t>& columns) {
    const auto X = data.select(columns);
    const std::size_t width = columns.size();
    std::vector<double> predicted(data.rows());
    for (int f = 0; f < options.folds; ++f) {
      std::vector<double> train_x, train_y;
      for (std::size_t r = 0; r < data.rows(); ++r) {
        if (folds[r] == f) continue;
        train_x.insert(train_x.end(), X.begin() + static_cast<std::ptrdiff_t>(r * width),
                       X.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
        train_y.push_back(data.y[r]);
      }
      ForestOptions fo{options.n_trees, options.min_leaf, hash_seed({options.seed, static_cast<std::uint64_t>(f)})};
      const ForestModel model = ForestModel::fit(train_x, width, train_y, fo);
      for (std::size_t r = 0; r < data.rows(); ++r)
        if (folds[r] == f)
          predicted[r] = model.predict(std::span<const double>(X).subspan(r * width, width));
    }
    return evaluate(data.y, predicted);
  };

  result.all_features = cross_validate(all);
  if (!prevalent.empty()) {
    result.prevalent_only = cross_validate(prevalent);
    result.prevalent_model_fitted = true;
  }
  return result;
}

std::vector<EdmObservation> read_edm_observations(const Dataset& data) {
  require(data.cols() == kConstituentCount, ErrorCode::kParse, "EDM table needs 5 flow columns and e_overall");
  for (std::size_t c = 0; c < kConstituentCount; ++c)
    require(data.column_names[c] == kEdmColumnNames[c], ErrorCode::kParse,
            "EDM column " + std::to_string(c + 1) + " must be '" + std::string(kEdmColumnNames[c]) + "'");
  require(data.target_name == kEdmColumnNames.back(), ErrorCode::kParse, "EDM target must be 'e_overall'");
  std::vector<EdmObservation> obs(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < kConstituentCount; ++c) obs[r].flows[c] = data.X[r * kConstituentCount + c];
    obs[r].energy = data.y[r];
  }
  return obs;
}

EdmFitResult fit_edm_holdout(const std::vector<EdmObservation>& obs, double test_fraction, std::uint64_t seed) {
  require(test_fraction > 0.0 && test_fraction < 1.0, ErrorCode::kInvalidArgument,
          "test_fraction must lie in (0, 1)");
  const std::size_t m = obs.size();
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(m)));
  require(n_test >= 1 && m - n_test >= 6, ErrorCode::kInvalidArgument,
          "not enough rows for a held-out EDM fit");

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  Rng rng(hash_seed({seed, 0x65646dull}));
  for (std::size_t i = m - 1; i > 0; --i)
    std::swap(order[i], order[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);

  std::vector<EdmObservation> train, test;
  for (std::size_t i = 0; i < m; ++i) (i < n_test ? test : train).push_back(obs[order[i]]);

  EdmFitResult result;
  for (std::size_t c = 0; c < kConstituentCount; ++c)
    result.used[c] = std::any_of(obs.begin(), obs.end(), [&](const auto& o) { return o.flows[c] != 0.0; });
  result.model = edm_fit(train, result.used);
  std::vector<double> actual, predicted;
  for (const auto& o : test) {
    actual.push_back(o.energy);
    predicted.push_back(edm_predict(result.model, o.flows));
  }
  result.test = evaluate(actual, predicted);
  result.train_rows = train.size();
  result.test_rows = test.size();
  return result;
}

void cmd_sweep(const Settings& settings, const std::string& out_path) {
  const bool as_json = json_format(settings);
  const SweepSpec spec = sweep_spec_from(settings);
  const SimConfig base = sim_config_from(settings);
  auto out = open_output(out_path);
  const auto rows = run_sweep(spec, base, static_cast<int>(settings.get_int("workers")));

  std::ostringstream text;
  text << std::setprecision(12);
  if (as_json) {
    json j{{"command", "sweep"}, {"settings", settings_json(settings)}, {"rows", json::array()}};
    for (const auto& r : rows)
      j["rows"].push_back({{"n_nodes", r.n_nodes},
                           {"tx_radius", r.tx_radius},
                           {"graph_index", r.graph_index},
                           {"seed", r.seed},
                           {"method", cost_variant_name(r.method)},
                           {"generated", r.totals.generated},
                           {"delivered", r.totals.delivered},
                           {"lost", r.totals.lost},
                           {"dead_nodes", r.totals.dead_nodes_at_end},
                           {"lifetime", r.totals.lifetime},
                           {"energy", r.totals.energy_consumed},
                           {"initial_energy", r.initial_energy},
                           {"final_residual", r.final_residual},
                           {"avg_neighbors", r.avg_neighbors},
                           {"avg_hops", r.avg_hops},
                           {"avg_distance", r.avg_distance}});
    text << j.dump(2) << '\n';
  } else {
    csv_header(text, settings, "sweep");
    text << "n_nodes,tx_radius,graph_index,seed,method,generated,delivered,lost,dead_nodes,lifetime,energy,"
            "initial_energy,final_residual,avg_neighbors,avg_hops,avg_distance\n";
    for (const auto& r : rows)
      text << r.n_nodes << ',' << r.tx_radius << ',' << r.graph_index << ',' << r.seed << ','
           << cost_variant_name(r.method) << ',' << r.totals.generated << ',' << r.totals.delivered << ','
           << r.totals.lost << ',' << r.totals.dead_nodes_at_end << ',' << r.totals.lifetime << ','
           << r.totals.energy_consumed << ',' << r.initial_energy << ',' << r.final_residual << ','
           << r.avg_neighbors << ',' << r.avg_hops << ',' << r.avg_distance << '\n';
  }
  finish_output(out, text.str(), out_path);
}

void cmd_dataset(const Settings& settings, const std::string& out_path) {
  const bool as_json = json_format(settings);
  const AnalyticsSweepSpec spec = analytics_spec_from(settings);
  const SimConfig base = sim_config_from(settings);
  auto out = open_output(out_path);
  const GeneratedDataset gen = generate_dataset(spec, base, static_cast<int>(settings.get_int("workers")));

  std::ostringstream text;
  text << std::setprecision(12);
  if (as_json) {
    json j{{"command", "dataset"},
           {"settings", settings_json(settings)},
           {"excluded", gen.excluded},
           {"columns", gen.data.column_names},
           {"target", gen.data.target_name},
           {"rows", json::array()}};
    for (std::size_t r = 0; r < gen.data.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < gen.data.cols(); ++c) row.push_back(gen.data.X[r * gen.data.cols() + c]);
      row.push_back(gen.data.y[r]);
      j["rows"].push_back(std::move(row));
    }
    text << j.dump(2) << '\n';
  } else {
    csv_header(text, settings, "dataset");
    text << "# excluded=" << gen.excluded << '\n';
    write_dataset(text, gen.data);
  }
  finish_output(out, text.str(), out_path);
}

void cmd_analyze(const Settings& settings, const std::string& dataset_path, const std::string& out_path) {
  const bool as_json = json_format(settings);
  const Dataset data = read_dataset_file(dataset_path);
  AnalysisOptions options;
  options.corr_threshold = settings.get_real("corr_threshold");
  options.p_threshold = settings.get_real("p_threshold");
  options.folds = static_cast<int>(settings.get_int("folds"));
  options.n_trees = static_cast<int>(settings.get_int("n_trees"));
  options.min_leaf = static_cast<int>(settings.get_int("min_leaf"));
  options.lasso_ratio = settings.get_real("lasso_ratio");
  options.seed = settings.get_unsigned("seed");
  auto out = open_output(out_path);
  const AnalysisResult result = analyze_dataset(data, options);

  std::ostringstream text;
  text << std::setprecision(12);
  if (as_json) {
    json params = json::array();
    for (const auto& d : result.report.parameters)
      params.push_back({{"parameter", d.name},
                        {"p_value", number(d.p_value)},
                        {"pearson", number(d.pearson)},
                        {"spearman", number(d.spearman)},
                        {"corr2", number(d.corr2)},
                        {"corr3", number(d.corr3)},
                        {"lasso_coefficient", number(d.lasso_coefficient)},
                        {"lasso_score", number(d.lasso_score)},
                        {"prevalent", d.prevalent},
                        {"diagnostic", d.diagnostic}});
    json j{{"command", "analyze"},
           {"settings", settings_json(settings)},
           {"dataset", dataset_path},
           {"rows", data.rows()},
           {"lasso_lambda", result.report.lasso_lambda},
           {"parameters", params},
           {"prevalent", result.prevalent_names},
           {"evaluation", {{"all", eval_json(result.all_features)}}}};
    if (result.prevalent_model_fitted) j["evaluation"]["prevalent"] = eval_json(result.prevalent_only);
    text << j.dump(2) << '\n';
  } else {
    csv_header(text, settings, "analyze");
    text << "# dataset=" << dataset_path << " rows=" << data.rows() << '\n';
    text << "# section=dependency\n";
    write_dependency_report(text, result.report);
    text << "\n# section=evaluation\nmodel,features,mape,pred25,rmse,r2,r2_conventional\n";
    eval_csv(text, "all", data.cols(), result.all_features);
    if (result.prevalent_model_fitted)
      eval_csv(text, "prevalent", result.prevalent_names.size(), result.prevalent_only);
  }
  finish_output(out, text.str(), out_path);
}

void cmd_fit_edm(const Settings& settings, const std::string& flows_path, const std::string& out_path) {
  const bool as_json = json_format(settings);
  const auto obs = read_edm_observations(read_dataset_file(flows_path));
  auto out = open_output(out_path);
  const EdmFitResult fit = fit_edm_holdout(obs, settings.get_real("test_fraction"), settings.get_unsigned("seed"));

  std::ostringstream text;
  text << std::setprecision(12);
  if (as_json) {
    json coef{{"alpha0", fit.model.alpha[0]}};
    for (std::size_t c = 0; c < kConstituentCount; ++c)
      coef[std::string("alpha_") + std::string(kEdmColumnNames[c].substr(2))] =
          fit.used[c] ? json(fit.model.alpha[c + 1]) : json(nullptr);
    json j{{"command", "fit-edm"},
           {"settings", settings_json(settings)},
           {"flows", flows_path},
           {"train_rows", fit.train_rows},
           {"test_rows", fit.test_rows},
           {"coefficients", coef},
           {"evaluation", eval_json(fit.test)}};
    text << j.dump(2) << '\n';
  } else {
    csv_header(text, settings, "fit-edm");
    text << "# flows=" << flows_path << " train_rows=" << fit.train_rows << " test_rows=" << fit.test_rows
         << '\n';
    text << "coefficient,value,used\nalpha0," << fit.model.alpha[0] << ",1\n";
    for (std::size_t c = 0; c < kConstituentCount; ++c)
      text << "alpha_" << kEdmColumnNames[c].substr(2) << ',' << fit.model.alpha[c + 1] << ','
           << (fit.used[c] ? 1 : 0) << '\n';
    text << "\nmetric,value\n";
    if (fit.test.mape)
      text << "mape," << *fit.test.mape << '\n';
    else
      text << "mape,nan\n";
    text << "pred25," << fit.test.pred25 << "\nrmse," << fit.test.rmse << "\nr2," << fit.test.r2
         << "\nr2_conventional," << fit.test.r2_conventional << '\n';
  }
  finish_output(out, text.str(), out_path);
}

void cmd_compare(const Settings& settings, const std::string& out_path) {
  const bool as_json = json_format(settings);
  const SimConfig base = sim_config_from(settings);
  const auto pairs = static_cast<int>(settings.get_int("pairs"));
  require(pairs >= 1, ErrorCode::kInvalidArgument, "pairs must be >= 1");
  auto out = open_output(out_path);

  std::vector<MethodComparison> results(static_cast<std::size_t>(pairs));
  parallel_for(results.size(), static_cast<int>(settings.get_int("workers")), [&](std::size_t i) {
    SimConfig config = base;
    if (pairs > 1)
      config.deployment.rng_seed = sweep_cell_seed(base.deployment.rng_seed, base.deployment.n_nodes,
                                                   base.deployment.tx_radius, static_cast<int>(i));
    results[i] = compare_methods(config);
  });

  std::ostringstream text;
  text << std::setprecision(12);
  const auto totals_json = [](const ExperimentTotals& t) {
    return json{{"generated", t.generated},     {"delivered", t.delivered},
                {"lost", t.lost},               {"dead_nodes", t.dead_nodes_at_end},
                {"lifetime", t.lifetime},       {"energy", t.energy_consumed}};
  };
  if (as_json) {
    json j{{"command", "compare"}, {"settings", settings_json(settings)}, {"pairs", json::array()}};
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      j["pairs"].push_back({{"pair", i},
                            {"seed", r.pdtm.config.deployment.rng_seed},
                            {"pdtm", totals_json(r.pdtm.totals)},
                            {"ddtm", totals_json(r.ddtm.totals)},
                            {"delta", {{"delivered", r.delta_delivered},
                                       {"lost", r.delta_lost},
                                       {"dead_nodes", r.delta_dead},
                                       {"lifetime", r.delta_lifetime}}}});
    }
    text << j.dump(2) << '\n';
  } else {
    csv_header(text, settings, "compare");
    text << "pair,seed,method,generated,delivered,lost,dead_nodes,lifetime,energy\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      const auto seed = r.pdtm.config.deployment.rng_seed;
      for (const auto* rec : {&r.pdtm, &r.ddtm}) {
        const auto& t = rec->totals;
        text << i << ',' << seed << ',' << cost_variant_name(rec->config.method.variant) << ',' << t.generated
             << ',' << t.delivered << ',' << t.lost << ',' << t.dead_nodes_at_end << ',' << t.lifetime << ','
             << t.energy_consumed << '\n';
      }
      text << i << ',' << seed << ",delta,"
           << r.pdtm.totals.generated - r.ddtm.totals.generated << ',' << r.delta_delivered << ','
           << r.delta_lost << ',' << r.delta_dead << ',' << r.delta_lifetime << ','
           << r.pdtm.totals.energy_consumed - r.ddtm.totals.energy_consumed << '\n';
    }
  }
  finish_output(out, text.str(), out_path);
}

}  // namespace wsn
