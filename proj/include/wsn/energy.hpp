#ifndef WSN_ENERGY_HPP_
#define WSN_ENERGY_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsn/network.hpp"

namespace wsn {

/// First-order radio model. Defaults reproduce a cost of d^2 per packet with
/// free reception.
struct RadioParams {
  double e_amp = 1.0;   // energy per bit per distance^alpha
  double e_elec = 0.0;  // receiver electronics, energy per bit
  double alpha = 2.0;   // path-loss exponent, 1 < alpha <= 2
  int packet_bits = 1;

  void validate() const;
};

/// e_amp * d^alpha * packet_bits * packets.
double tx_energy(const RadioParams& params, double d, long packets);
/// e_elec * packet_bits * packets.
double rx_energy(const RadioParams& params, long packets);

enum class Constituent : int { kIndividual = 0, kLocal = 1, kGlobal = 2, kEnvironment = 3, kSink = 4 };
inline constexpr std::size_t kConstituentCount = 5;

std::string_view constituent_name(Constituent c);
/// Accepts "individual", "local", "global", "environment", "sink".
Constituent parse_constituent(std::string_view name);
/// Validates an integer slot index coming from outside the type system.
Constituent constituent_from_index(int index);

/// Energy spent per constituent over a window. The environment slot goes
/// negative when energy is harvested.
struct ConstituentLedger {
  std::array<double, kConstituentCount> amount{};
  std::array<double, kConstituentCount> weight{1.0, 1.0, 1.0, 1.0, 1.0};

  double& operator[](Constituent c) { return amount[static_cast<std::size_t>(c)]; }
  double operator[](Constituent c) const { return amount[static_cast<std::size_t>(c)]; }

  /// Weighted total, sum of weight_k * amount_k.
  double total() const;
  /// Unweighted sum; this is what residual energies must reconcile against.
  double raw_total() const;

  ConstituentLedger& operator+=(const ConstituentLedger& other);
};

/// Debits `amount` from the node (floored at 0) and books the full amount in
/// the chosen slot. A node whose residual reaches 0 is marked dead. Callers
/// that need exact conservation must not request more than the residual.
void apply_consumption(Node& node, ConstituentLedger& ledger, double amount, Constituent slot);

/// Credits harvested energy; the environment slot decreases by h. A dead
/// node that ends with positive residual is revived.
void harvest(Node& node, ConstituentLedger& ledger, double h);

/// Local-constituent guideline e_local <= e_idle + e_coll + e_ohear.
/// Diagnostic only, never enforced.
bool local_energy_within_guideline(double e_local, double e_idle, double e_coll, double e_ohear);

/// Packet counts and conditional probabilities driving the per-constituent
/// packet flows. Probabilities are plain inputs.
struct EdmFlowParams {
  double b_os = 0, b_sec_ind = 0, p_sense = 0;
  double b_sec_loc = 0, b_mon = 0, b_ohead_loc = 0, p_coll = 0, p_ohear = 0, p_idle = 0;
  double b_sec_glob = 0, b_topo = 0, b_rout = 0, b_ohead_glob = 0, p_pktls = 0;
  double b_sec_env = 0, b_ph = 0;
  double b_sec_snk = 0, b_ohead_snk = 0;
};

double edm_flow_individual(const EdmFlowParams& p);
double edm_flow_local(const EdmFlowParams& p);
double edm_flow_global(const EdmFlowParams& p);
double edm_flow_environment(const EdmFlowParams& p);
double edm_flow_sink(const EdmFlowParams& p);

/// Packet flow per constituent, indexed like Constituent.
using EdmFlows = std::array<double, kConstituentCount>;

EdmFlows edm_flows(const EdmFlowParams& p);

/// E = alpha[0] + sum_k alpha[k + 1] * flow_k.
struct EdmModel {
  std::array<double, kConstituentCount + 1> alpha{};
};

double edm_predict(const EdmModel& model, const EdmFlows& flows);

struct EdmObservation {
  EdmFlows flows{};
  double energy = 0.0;
};

/// Column mask for edm_fit; a masked-out flow gets coefficient 0.
using EdmColumnMask = std::array<bool, kConstituentCount>;
inline constexpr EdmColumnMask kAllEdmColumns{true, true, true, true, true};

/// Ordinary least squares with an intercept column, solved by column-pivoted
/// QR. Throws kRankDeficient naming the dependent columns.
EdmModel edm_fit(std::span<const EdmObservation> observations,
                 const EdmColumnMask& columns = kAllEdmColumns);

/// "b_individual" ... "b_sink" followed by "e_overall".
inline constexpr std::array<std::string_view, kConstituentCount + 1> kEdmColumnNames{
    "b_individual", "b_local", "b_global", "b_environment", "b_sink", "e_overall"};

}  // namespace wsn

#endif  // WSN_ENERGY_HPP_
