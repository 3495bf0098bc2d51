#include "wsn/energy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsn/error.hpp"

namespace wsn {

void RadioParams::validate() const {
  require(e_amp >= 0.0, ErrorCode::kInvalidArgument, "e_amp must be >= 0");
  require(e_elec >= 0.0, ErrorCode::kInvalidArgument, "e_elec must be >= 0");
  require(alpha > 1.0 && alpha <= 2.0, ErrorCode::kInvalidArgument, "alpha must lie in (1, 2]");
  require(packet_bits >= 1, ErrorCode::kInvalidArgument, "packet_bits must be >= 1");
}

double tx_energy(const RadioParams& params, double d, long packets) {
  require(d >= 0.0, ErrorCode::kInvalidArgument, "distance must be >= 0");
  require(packets >= 0, ErrorCode::kInvalidArgument, "packet count must be >= 0");
  if (d == 0.0 || packets == 0) return 0.0;
  // Exact for integer squared distances under the default alpha.
  const double path = params.alpha == 2.0 ? d * d : std::pow(d, params.alpha);
  return params.e_amp * path * params.packet_bits * static_cast<double>(packets);
}

double rx_energy(const RadioParams& params, long packets) {
  require(packets >= 0, ErrorCode::kInvalidArgument, "packet count must be >= 0");
  return params.e_elec * params.packet_bits * static_cast<double>(packets);
}

std::string_view constituent_name(Constituent c) {
  switch (c) {
    case Constituent::kIndividual: return "individual";
    case Constituent::kLocal: return "local";
    case Constituent::kGlobal: return "global";
    case Constituent::kEnvironment: return "environment";
    case Constituent::kSink: return "sink";
  }
  fail(ErrorCode::kOutOfRange, "unknown ledger slot");
}

Constituent parse_constituent(std::string_view name) {
  for (int i = 0; i < static_cast<int>(kConstituentCount); ++i) {
    const auto c = static_cast<Constituent>(i);
    if (constituent_name(c) == name) return c;
  }
  fail(ErrorCode::kOutOfRange, "unknown ledger slot '" + std::string(name) + "'");
}

Constituent constituent_from_index(int index) {
  if (index < 0 || index >= static_cast<int>(kConstituentCount))
    fail(ErrorCode::kOutOfRange, "unknown ledger slot " + std::to_string(index));
  return static_cast<Constituent>(index);
}

double ConstituentLedger::total() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < kConstituentCount; ++k) sum += weight[k] * amount[k];
  return sum;
}

double ConstituentLedger::raw_total() const {
  return std::accumulate(amount.begin(), amount.end(), 0.0);
}

ConstituentLedger& ConstituentLedger::operator+=(const ConstituentLedger& other) {
  for (std::size_t k = 0; k < kConstituentCount; ++k) amount[k] += other.amount[k];
  return *this;
}

void apply_consumption(Node& node, ConstituentLedger& ledger, double amount, Constituent slot) {
  require(amount >= 0.0, ErrorCode::kInvalidArgument, "consumption must be >= 0");
  const auto index = static_cast<int>(slot);
  constituent_from_index(index);
  if (amount == 0.0) return;
  node.residual_energy = std::max(0.0, node.residual_energy - amount);
  ledger[slot] += amount;
  if (node.residual_energy <= 0.0) node.alive = false;
}

void harvest(Node& node, ConstituentLedger& ledger, double h) {
  require(h >= 0.0, ErrorCode::kInvalidArgument, "harvested energy must be >= 0");
  if (h == 0.0) return;
  node.residual_energy += h;
  ledger[Constituent::kEnvironment] -= h;
  if (node.residual_energy > 0.0) node.alive = true;
}

bool local_energy_within_guideline(double e_local, double e_idle, double e_coll, double e_ohear) {
  return e_local <= e_idle + e_coll + e_ohear;
}

namespace {

double inflate(double numerator, double loss_probability, const char* what) {
  if (!(loss_probability < 1.0))
    fail(ErrorCode::kDegenerate, std::string(what) + " must be < 1");
  require(loss_probability >= 0.0, ErrorCode::kInvalidArgument,
          std::string(what) + " must be >= 0");
  return numerator / (1.0 - loss_probability);
}

}  // namespace

double edm_flow_individual(const EdmFlowParams& p) {
  return inflate(p.b_os + p.b_sec_ind, p.p_sense, "p_sense");
}

double edm_flow_local(const EdmFlowParams& p) {
  return inflate(p.b_sec_loc + p.b_mon + p.b_ohead_loc, p.p_coll + p.p_ohear + p.p_idle,
                 "p_coll + p_ohear + p_idle");
}

double edm_flow_global(const EdmFlowParams& p) {
  return inflate(p.b_sec_glob + p.b_topo + p.b_rout + p.b_ohead_glob, p.p_pktls, "p_pktls");
}

double edm_flow_environment(const EdmFlowParams& p) { return p.b_sec_env + p.b_ph; }

double edm_flow_sink(const EdmFlowParams& p) { return p.b_sec_snk + p.b_ohead_snk; }

EdmFlows edm_flows(const EdmFlowParams& p) {
  return {edm_flow_individual(p), edm_flow_local(p), edm_flow_global(p),
          edm_flow_environment(p), edm_flow_sink(p)};
}

double edm_predict(const EdmModel& model, const EdmFlows& flows) {
  double e = model.alpha[0];
  for (std::size_t k = 0; k < kConstituentCount; ++k) e += model.alpha[k + 1] * flows[k];
  return e;
}

EdmModel edm_fit(std::span<const EdmObservation> observations, const EdmColumnMask& columns) {
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < kConstituentCount; ++k)
    if (columns[k]) active.push_back(k);

  const auto rows = static_cast<Eigen::Index>(observations.size());
  const auto cols = static_cast<Eigen::Index>(active.size() + 1);
  require(rows >= cols && rows >= 6, ErrorCode::kInvalidArgument,
          "edm_fit needs at least 6 observations and more rows than coefficients");

  Eigen::MatrixXd design(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& obs = observations[static_cast<std::size_t>(r)];
    design(r, 0) = 1.0;
    for (std::size_t c = 0; c < active.size(); ++c)
      design(r, static_cast<Eigen::Index>(c + 1)) = obs.flows[active[c]];
    target(r) = obs.energy;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols) {
    // Columns pivoted past the rank are the ones spanned by the others.
    std::string names;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < cols; ++i) {
      const auto c = perm(i);
      if (!names.empty()) names += ", ";
      names += c == 0 ? std::string("intercept")
                      : std::string(kEdmColumnNames[active[static_cast<std::size_t>(c - 1)]]);
    }
    fail(ErrorCode::kRankDeficient, "design matrix is rank deficient; dependent columns: " + names);
  }

  const Eigen::VectorXd coef = qr.solve(target);
  EdmModel model;
  model.alpha[0] = coef(0);
  for (std::size_t c = 0; c < active.size(); ++c)
    model.alpha[active[c] + 1] = coef(static_cast<Eigen::Index>(c + 1));
  return model;
}

}  // namespace wsn
