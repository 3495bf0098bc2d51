#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wsn/error.hpp"
#include "wsn/experiment.hpp"
#include "wsn/rng.hpp"
#include "wsn/stats.hpp"

using namespace wsn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "wsn_experiment_tests";
  fs::create_directories(dir);
  return dir / name;
}

Settings small_sweep() {
  Settings s;
  s.set("node_counts", "20,30");
  s.set("tx_radii", "100,200");
  s.set("graphs_per_cell", "3");
  s.set("initial_energy", "5000");
  return s;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("settings") {
  Settings s;
  CHECK(s.get_int("nodes") == 50);
  CHECK(std::isinf(s.get_real("sink_energy")));
  CHECK(s.get_word_list("methods") == std::vector<std::string>{"pdtm", "ddtm"});
  CHECK_THROWS_AS(s.set("no_such_key", "1"), Error);
  CHECK_THROWS_AS(s.set("nodes", "1.5"), Error);
  CHECK_THROWS_AS(s.set("tx_radii", "100,,200"), Error);
  CHECK_THROWS_AS(s.set("disconnected_generate", "maybe"), Error);

  std::istringstream in("# comment\nnodes = 75\ntx-radius=120 # trailing\n\n");
  s.load(in);
  CHECK(s.get_int("nodes") == 75);
  CHECK(s.get_real("tx_radius") == 120);
  std::istringstream bad("nodes 75\n");
  CHECK_THROWS_AS(s.load(bad), Error);

  std::ostringstream echo;
  s.echo(echo);
  CHECK(echo.str().find("# nodes=75\n") != std::string::npos);
  CHECK(echo.str().find("# seed=1\n") != std::string::npos);
}

TEST_CASE("sim config follows the settings") {
  Settings s;
  s.set("method", "ddtm");
  s.set("e_elec", "2");
  s.set("seed", "77");
  const auto c = sim_config_from(s);
  CHECK(c.method.variant == CostVariant::kDdtm);
  CHECK(c.radio.e_elec == 2);
  CHECK(c.deployment.rng_seed == 77);
  s.set("radio_alpha", "3");
  CHECK_THROWS_AS(sim_config_from(s), Error);
}

TEST_CASE("sweep grid arithmetic and shared layouts") {
  const auto s = small_sweep();
  const auto spec = sweep_spec_from(s);
  const auto rows = run_sweep(spec, sim_config_from(s), 3);
  REQUIRE(rows.size() == 2 * 2 * 3 * 2);
  CHECK(rows[0].n_nodes == 20);
  CHECK(rows[0].tx_radius == 100);
  CHECK(rows[0].method == CostVariant::kPdtm);
  CHECK(rows[1].method == CostVariant::kDdtm);
  CHECK(rows.back().n_nodes == 30);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].seed == rows[i + 1].seed);
    CHECK(rows[i].avg_neighbors == rows[i + 1].avg_neighbors);
    CHECK(rows[i].initial_energy - rows[i].final_residual ==
          doctest::Approx(rows[i].totals.energy_consumed).epsilon(1e-12));
  }
  // Worker count does not change results.
  const auto serial = run_sweep(spec, sim_config_from(s), 1);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(serial[i].totals.delivered == rows[i].totals.delivered);
}

TEST_CASE("cell seeds ignore the method list") {
  const auto a = sweep_cell_seed(1, 100, 200.0, 4);
  CHECK(a == sweep_cell_seed(1, 100, 200.0, 4));
  CHECK(a != sweep_cell_seed(1, 100, 200.0, 5));
  CHECK(a != sweep_cell_seed(2, 100, 200.0, 4));
  auto s = small_sweep();
  s.set("methods", "ddtm");
  const auto only = run_sweep(sweep_spec_from(s), sim_config_from(s));
  const auto both = run_sweep(sweep_spec_from(small_sweep()), sim_config_from(small_sweep()));
  CHECK(only.size() * 2 == both.size());
  for (std::size_t i = 0; i < only.size(); ++i) {
    CHECK(only[i].seed == both[2 * i + 1].seed);
    CHECK(only[i].totals.delivered == both[2 * i + 1].totals.delivered);
  }
}

TEST_CASE("sweep spec validation") {
  Settings s;
  s.set("graphs_per_cell", "0");
  CHECK_THROWS_AS(sweep_spec_from(s), Error);
  Settings t;
  t.set("methods", "pdtm,leach");
  CHECK_THROWS_AS(sweep_spec_from(t), Error);
}

TEST_CASE("commands write byte-identical files on re-run") {
  auto s = small_sweep();
  const auto a = scratch("sweep_a.csv"), b = scratch("sweep_b.csv");
  cmd_sweep(s, a.string());
  s.set("workers", "4");
  cmd_sweep(s, b.string());
  const auto text = slurp(a);
  // The worker count is echoed, so compare everything after the header.
  const auto body = [](const std::string& t) { return t.substr(t.find("\nn_nodes,")); };
  CHECK(body(text) == body(slurp(b)));
  cmd_sweep(s, a.string());
  CHECK(slurp(a) == slurp(b));
  CHECK(text.find("# wsnsim sweep\n") == 0);
  CHECK(text.find("# graphs_per_cell=3\n") != std::string::npos);
  const auto rows = body(text).substr(1);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 1 + 24);
}

TEST_CASE("unwritable output fails before any run") {
  Settings s;
  s.set("graphs_per_cell", "1000000");
  try {
    cmd_sweep(s, "/nonexistent-dir/out.csv");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("json output") {
  auto s = small_sweep();
  s.set("format", "json");
  const auto p = scratch("sweep.json");
  cmd_sweep(s, p.string());
  const auto j = nlohmann::json::parse(slurp(p));
  CHECK(j["command"] == "sweep");
  CHECK(j["rows"].size() == 24);
  CHECK(j["settings"]["graphs_per_cell"] == "3");
  s.set("format", "xml");
  CHECK_THROWS_AS(cmd_sweep(s, p.string()), Error);
}

TEST_CASE("dataset generation") {
  AnalyticsSweepSpec spec;
  spec.runs = 10;
  spec.repeats_per_config = 5;
  spec.window_slots = 20;
  SimConfig base;
  base.deployment.initial_energy = 20000;
  const auto gen = generate_dataset(spec, base, 2);
  CHECK(gen.data.rows() + static_cast<std::size_t>(gen.excluded) == 10);
  CHECK(gen.data.column_names == kDatasetColumns);
  for (std::size_t r = 0; r < gen.data.rows(); ++r) {
    const double tx = gen.data.X[r * gen.data.cols()];
    CHECK(tx >= 30);
    CHECK(tx <= 250);
    CHECK(gen.data.y[r] > 0);
  }
  const auto again = generate_dataset(spec, base, 1);
  CHECK(again.data.X == gen.data.X);
  CHECK(again.data.y == gen.data.y);

  AnalyticsSweepSpec bad = spec;
  bad.tx_max = bad.tx_min;
  CHECK_THROWS_AS(generate_dataset(bad, base), Error);
}

TEST_CASE("average neighbours rise with radius across a generated dataset") {
  AnalyticsSweepSpec spec;
  spec.runs = 60;
  spec.repeats_per_config = 1;
  spec.window_slots = 5;
  const auto gen = generate_dataset(spec, SimConfig{}, 4);
  const auto tx = gen.data.column(0);
  const auto nb = gen.data.column(6);
  CHECK(spearman(tx, nb) > 0.3);
}

TEST_CASE("analysis on synthetic data") {
  Dataset d;
  d.column_names = {"a", "b", "n1", "n2", "n3", "n4"};
  d.target_name = "y";
  Rng rng(12);
  for (int r = 0; r < 300; ++r) {
    std::array<double, 6> x{};
    for (auto& v : x) v = rng.uniform(0, 1);
    d.X.insert(d.X.end(), x.begin(), x.end());
    d.y.push_back(5 + 3 * x[0] + 2 * x[1] * x[1] + 0.1 * rng.normal());
  }
  AnalysisOptions opts;
  const auto result = analyze_dataset(d, opts);
  CHECK(result.prevalent_names == std::vector<std::string>{"a", "b"});
  REQUIRE(result.prevalent_model_fitted);
  CHECK(result.all_features.r2_conventional > 0.6);
  CHECK(std::abs(result.all_features.r2_conventional - result.prevalent_only.r2_conventional) < 0.1);

  Dataset tiny = d;
  tiny.X.resize(6 * 3);
  tiny.y.resize(3);
  CHECK_THROWS_AS(analyze_dataset(tiny, opts), Error);
}

TEST_CASE("analyze and fit-edm commands") {
  const auto data = scratch("data.csv");
  {
    std::ofstream out(data);
    out << "x1,x2,y\n";
    Rng rng(5);
    for (int r = 0; r < 60; ++r) {
      const double a = rng.uniform(0, 10), b = rng.uniform(0, 10);
      out << a << ',' << b << ',' << 2 * a + rng.normal() << '\n';
    }
  }
  Settings s;
  const auto out = scratch("analysis.csv");
  cmd_analyze(s, data.string(), out.string());
  const auto text = slurp(out);
  CHECK(text.find("# section=dependency") != std::string::npos);
  CHECK(text.find("\nx1,") != std::string::npos);
  CHECK(text.find("model,features,mape,pred25,rmse,r2,r2_conventional\nall,2,") != std::string::npos);
  CHECK(text.find("\nprevalent,1,") != std::string::npos);
  const auto out2 = scratch("analysis2.csv");
  cmd_analyze(s, data.string(), out2.string());
  CHECK(slurp(out2) == text);

  const auto flows = scratch("flows.csv");
  {
    std::ofstream f(flows);
    f << "b_individual,b_local,b_global,b_environment,b_sink,e_overall\n";
    Rng rng(6);
    for (int r = 0; r < 30; ++r) {
      const double i = rng.uniform(1, 20), l = rng.uniform(1, 20), g = rng.uniform(1, 20);
      f << i << ',' << l << ',' << g << ",0,0," << 4 + 1.5 * i + 0.5 * l + 2 * g << '\n';
    }
  }
  const auto fit_out = scratch("edm.csv");
  cmd_fit_edm(s, flows.string(), fit_out.string());
  const auto fit_text = slurp(fit_out);
  CHECK(fit_text.find("train_rows=20 test_rows=10") != std::string::npos);
  CHECK(fit_text.find("\nalpha_environment,0,0\n") != std::string::npos);
  CHECK(fit_text.find("\nalpha_individual,1.5000") != std::string::npos);
  CHECK(fit_text.find("\nrmse,") != std::string::npos);

  const auto empty = scratch("empty.csv");
  write_text(empty, "");
  try {
    cmd_fit_edm(s, empty.string(), fit_out.string());
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
  const auto wrong = scratch("wrong.csv");
  write_text(wrong, "a,b,c,d,e,e_overall\n1,2,3,4,5,6\n");
  CHECK_THROWS_AS(cmd_fit_edm(s, wrong.string(), fit_out.string()), Error);
}

TEST_CASE("edm holdout on noiseless flows") {
  std::vector<EdmObservation> obs;
  Rng rng(9);
  for (int r = 0; r < 45; ++r) {
    EdmObservation o;
    for (auto& f : o.flows) f = rng.uniform(1, 30);
    o.energy = 1 + 0.2 * o.flows[0] + 0.4 * o.flows[1] + 0.6 * o.flows[2] + 0.8 * o.flows[3] + o.flows[4];
    obs.push_back(o);
  }
  const auto fit = fit_edm_holdout(obs, 1.0 / 3.0, 1);
  CHECK(fit.test_rows == 15);
  CHECK(fit.train_rows == 30);
  CHECK(fit.test.rmse < 1e-9);
  CHECK(*fit.test.mape < 1e-9);
  CHECK(fit.test.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_edm_holdout(obs, 1.0, 1), Error);
  obs.resize(7);
  CHECK_THROWS_AS(fit_edm_holdout(obs, 0.5, 1), Error);
}

TEST_CASE("compare command") {
  Settings s;
  s.set("pairs", "3");
  s.set("initial_energy", "5000");
  const auto p = scratch("compare.csv");
  cmd_compare(s, p.string());
  const auto text = slurp(p);
  CHECK(text.find("pair,seed,method,generated,delivered,lost,dead_nodes,lifetime,energy\n") != std::string::npos);
  std::size_t deltas = 0;
  for (auto pos = text.find(",delta,"); pos != std::string::npos; pos = text.find(",delta,", pos + 1)) ++deltas;
  CHECK(deltas == 3);
  s.set("pairs", "0");
  CHECK_THROWS_AS(cmd_compare(s, p.string()), Error);
}
