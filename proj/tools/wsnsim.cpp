// Command-line driver. Talks to the simulator only through the C API.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "wsn/wsn.h"

namespace {

struct SettingsDeleter {
  void operator()(wsn_settings* s) const { wsn_settings_destroy(s); }
};
using SettingsPtr = std::unique_ptr<wsn_settings, SettingsDeleter>;

int report(wsn_status st, const std::string& context) {
  if (st == WSN_OK) return 0;
  std::fprintf(stderr, "wsnsim: %s: %s\n", context.c_str(), wsn_last_error());
  return static_cast<int>(st);
}

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wireless sensor network routing simulator and energy analytics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wsn_version());

  std::string config_path;
  std::string out_path;
  std::string input_path;
  std::map<std::string, std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "file of key = value lines, applied before flags");
    sub->add_option("--out", out_path, "output file")->required();
    for (size_t i = 0; i < wsn_settings_key_count(); ++i) {
      const char* key = nullptr;
      const char* def = nullptr;
      const char* help = nullptr;
      wsn_settings_key_info(i, &key, &def, &help);
      const std::string k = key;
      sub->add_option_function<std::string>(
          flag_name(k), [&overrides, k](const std::string& v) { overrides[k] = v; },
          std::string(help) + " (default " + def + ")");
    }
  };

  auto* sweep = app.add_subcommand("sweep", "PDTM/DDTM grid over network sizes and radii");
  auto* dataset = app.add_subcommand("dataset", "random configurations for dependency analysis");
  auto* analyze = app.add_subcommand("analyze", "parameter dependencies and forest evaluation");
  auto* fit_edm = app.add_subcommand("fit-edm", "least-squares fit of the energy dissipation model");
  auto* compare = app.add_subcommand("compare", "paired PDTM and DDTM runs on shared layouts");
  for (auto* sub : {sweep, dataset, analyze, fit_edm, compare}) add_common(sub);
  analyze->add_option("dataset", input_path, "dataset CSV")->required()->check(CLI::ExistingFile);
  fit_edm->add_option("flows", input_path, "flow table CSV")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  wsn_settings* raw = nullptr;
  if (int rc = report(wsn_settings_create(&raw), "settings")) return rc;
  SettingsPtr settings(raw);
  if (!config_path.empty())
    if (int rc = report(wsn_settings_load_file(settings.get(), config_path.c_str()), config_path)) return rc;
  for (const auto& [key, value] : overrides)
    if (int rc = report(wsn_settings_set(settings.get(), key.c_str(), value.c_str()), flag_name(key))) return rc;

  const char* out = out_path.c_str();
  if (*sweep) return report(wsn_cmd_sweep(settings.get(), out), "sweep");
  if (*dataset) return report(wsn_cmd_dataset(settings.get(), out), "dataset");
  if (*analyze) return report(wsn_cmd_analyze(settings.get(), input_path.c_str(), out), "analyze");
  if (*fit_edm) return report(wsn_cmd_fit_edm(settings.get(), input_path.c_str(), out), "fit-edm");
  return report(wsn_cmd_compare(settings.get(), out), "compare");
}
