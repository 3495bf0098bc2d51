#include "wsn/settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsn/error.hpp"

namespace wsn {

namespace {

const SettingSpec* find_spec(std::string_view key) {
  for (const auto& spec : setting_specs())
    if (spec.key == key) return &spec;
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    out.push_back(trim(s.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

long long parse_int(std::string_view key, const std::string& text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::kParse, std::string(key) + ": '" + text + "' is not an integer");
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::kParse, std::string(key) + ": '" + text + "' is not an unsigned integer");
  return v;
}

double parse_real(std::string_view key, const std::string& text) {
  if (text == "inf" || text == "infinity") return INFINITY;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && !std::isnan(v)) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kParse, std::string(key) + ": '" + text + "' is not a number");
}

bool parse_bool(std::string_view key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  fail(ErrorCode::kParse, std::string(key) + ": '" + text + "' is not a boolean");
}

void check_value(const SettingSpec& spec, const std::string& value) {
  switch (spec.kind) {
    case SettingKind::kInt: parse_int(spec.key, value); break;
    case SettingKind::kUnsigned: parse_unsigned(spec.key, value); break;
    case SettingKind::kReal: parse_real(spec.key, value); break;
    case SettingKind::kBool: parse_bool(spec.key, value); break;
    case SettingKind::kWord:
      require(!value.empty(), ErrorCode::kParse, std::string(spec.key) + ": empty value");
      break;
    case SettingKind::kIntList:
    case SettingKind::kRealList:
    case SettingKind::kWordList: {
      const auto items = split_list(value);
      require(!value.empty(), ErrorCode::kParse, std::string(spec.key) + ": list must be non-empty");
      for (const auto& item : items) {
        require(!item.empty(), ErrorCode::kParse, std::string(spec.key) + ": empty list item");
        if (spec.kind == SettingKind::kIntList) parse_int(spec.key, item);
        if (spec.kind == SettingKind::kRealList) parse_real(spec.key, item);
      }
      break;
    }
  }
}

}  // namespace

const std::vector<SettingSpec>& setting_specs() {
  static const std::vector<SettingSpec> specs{
      {"seed", SettingKind::kUnsigned, "1", "base random seed"},
      {"workers", SettingKind::kInt, "1", "parallel worker threads"},
      {"format", SettingKind::kWord, "csv", "output format: csv or json"},
      // deployment and simulation
      {"nodes", SettingKind::kInt, "50", "network size for single runs (sink included)"},
      {"tx_radius", SettingKind::kReal, "100", "transmission radius for single runs"},
      {"area_width", SettingKind::kReal, "600", "deployment area width"},
      {"area_height", SettingKind::kReal, "300", "deployment area height"},
      {"sink_x", SettingKind::kReal, "50", "sink x position"},
      {"sink_y", SettingKind::kReal, "50", "sink y position"},
      {"initial_energy", SettingKind::kReal, "100000", "initial sensor energy"},
      {"e_amp", SettingKind::kReal, "1", "transmit amplifier energy per bit per distance^alpha"},
      {"e_elec", SettingKind::kReal, "0", "receiver energy per bit"},
      {"radio_alpha", SettingKind::kReal, "2", "radio path-loss exponent"},
      {"packet_bits", SettingKind::kInt, "1", "bits per packet"},
      {"method", SettingKind::kWord, "pdtm", "cost method for single runs and datasets"},
      {"pdtm_alpha", SettingKind::kReal, "2", "distance exponent in the PDTM cost"},
      {"sink_energy", SettingKind::kReal, "inf", "energy assumed for the sink in PDTM costs"},
      {"sense_cost", SettingKind::kReal, "0", "energy per generated packet"},
      {"local_overhead", SettingKind::kReal, "0", "per-slot local overhead per sensor"},
      {"topo_overhead", SettingKind::kReal, "0", "per-slot topology control cost per sensor"},
      {"max_timeslots", SettingKind::kInt, "10000", "safety cap on slots per run"},
      {"slot_duration", SettingKind::kReal, "1", "time units per slot"},
      {"disconnected_generate", SettingKind::kBool, "false",
       "disconnected sensors generate packets that are counted lost"},
      // sweep
      {"node_counts", SettingKind::kIntList, "100,150,200,250,300", "sweep network sizes"},
      {"tx_radii", SettingKind::kRealList, "100,200,300", "sweep transmission radii"},
      {"graphs_per_cell", SettingKind::kInt, "30", "random graphs per sweep cell"},
      {"methods", SettingKind::kWordList, "pdtm,ddtm", "sweep cost methods"},
      // compare
      {"pairs", SettingKind::kInt, "1", "paired PDTM/DDTM runs for compare"},
      // dataset
      {"runs", SettingKind::kInt, "1000", "dataset configurations"},
      {"repeats", SettingKind::kInt, "5", "repeats averaged per configuration"},
      {"tx_min", SettingKind::kReal, "30", "dataset transmission radius lower bound"},
      {"tx_max", SettingKind::kReal, "250", "dataset transmission radius upper bound"},
      {"size_min", SettingKind::kInt, "10", "dataset network size lower bound"},
      {"size_max", SettingKind::kInt, "200", "dataset network size upper bound"},
      {"sinks_min", SettingKind::kInt, "1", "dataset number-of-sinks lower bound"},
      {"sinks_max", SettingKind::kInt, "50", "dataset number-of-sinks upper bound"},
      {"rx_cost_min", SettingKind::kReal, "0", "dataset receive cost lower bound"},
      {"rx_cost_max", SettingKind::kReal, "2000", "dataset receive cost upper bound"},
      {"window_slots", SettingKind::kInt, "100", "observation window per dataset run"},
      // analyze
      {"corr_threshold", SettingKind::kReal, "0.35", "prevalence correlation pass mark"},
      {"p_threshold", SettingKind::kReal, "0.05", "prevalence p-value bound"},
      {"folds", SettingKind::kInt, "5", "cross-validation folds"},
      {"n_trees", SettingKind::kInt, "20", "trees per forest"},
      {"min_leaf", SettingKind::kInt, "1", "minimum samples per leaf"},
      {"lasso_ratio", SettingKind::kReal, "0.1", "Lasso penalty as a fraction of lambda_max"},
      // fit-edm
      {"test_fraction", SettingKind::kReal, "0.333333333333", "held-out share for fit-edm"},
  };
  return specs;
}

Settings::Settings() {
  for (const auto& spec : setting_specs()) values_.emplace(spec.key, spec.default_value);
}

void Settings::set(std::string_view key, std::string_view value) {
  const SettingSpec* spec = find_spec(key);
  if (spec == nullptr) fail(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(key) + "'");
  const std::string v = trim(value);
  check_value(*spec, v);
  values_[std::string(key)] = v;
}

const std::string& Settings::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(key) + "'");
  return it->second;
}

bool Settings::has_key(std::string_view key) const { return find_spec(key) != nullptr; }

long long Settings::get_int(std::string_view key) const { return parse_int(key, get(key)); }
std::uint64_t Settings::get_unsigned(std::string_view key) const { return parse_unsigned(key, get(key)); }
double Settings::get_real(std::string_view key) const { return parse_real(key, get(key)); }
bool Settings::get_bool(std::string_view key) const { return parse_bool(key, get(key)); }

std::vector<long long> Settings::get_int_list(std::string_view key) const {
  std::vector<long long> out;
  for (const auto& item : split_list(get(key))) out.push_back(parse_int(key, item));
  return out;
}

std::vector<double> Settings::get_real_list(std::string_view key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get(key))) out.push_back(parse_real(key, item));
  return out;
}

std::vector<std::string> Settings::get_word_list(std::string_view key) const { return split_list(get(key)); }

void Settings::load(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kParse, "config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    set(key, std::string_view(body).substr(eq + 1));
  }
}

void Settings::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open config file '" + path + "'");
  load(in);
}

void Settings::echo(std::ostream& out) const {
  for (const auto& [key, value] : values_) out << "# " << key << '=' << value << '\n';
}

}  // namespace wsn
