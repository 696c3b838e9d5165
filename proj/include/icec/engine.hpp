#pragma once

// ICEC cross sections for an electron acceptor A and donor D, each either an
// atom or a Morse diatomic, in the asymptotic (virtual photon) picture:
//
//   sigma = 3 c^4 / (4 pi) * sigma_PR_A(eps) sigma_PI_D(omega) / (omega^4 R_AD^6)
//
// multiplied by Franck-Condon factors of both species (fc mode) or with the
// donor factor replaced by vibrationally resolved PI tables (ab-initio mode).
// Everything here is in atomic units.

#include "icec/continuum_box.hpp"
#include "icec/franck_condon.hpp"
#include "icec/morse.hpp"
#include "icec/xs_data.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace icec {

enum class Role { acceptor, donor };
enum class SpeciesKind { atomic, diatomic };
enum class XsMode { franck_condon, ab_initio_resolved };

// One reaction partner. For the acceptor, the initial curve is A and the final
// curve A^-; for the donor, D and D^+. `pi_table` is sigma_PI of A^- (used
// through detailed balance) or of D.
struct SpeciesSpec {
  std::string name;
  Role role = Role::donor;
  SpeciesKind kind = SpeciesKind::atomic;
  // IP of A^- (acceptor) or IP of D (donor); minimum-to-minimum for diatomics.
  double ip_reference = 0.0;
  double multiplicity_ratio = 1.0; // g_{A^-} / g_A, detailed balance only
  CrossSectionTable pi_table;
  std::optional<MorseParams> initial_curve;
  std::optional<MorseParams> final_curve;
  std::optional<ResolvedPiSet> resolved;

  static SpeciesSpec atomic(std::string name, Role role, double ip, double g_ratio,
                            CrossSectionTable pi);
  // Sets the curve asymptotes so that the minimum-to-minimum gap equals `ip`
  // (initial curve asymptote fixed at zero).
  static SpeciesSpec diatomic(std::string name, Role role, double ip, double g_ratio,
                              CrossSectionTable pi, MorseParams initial, MorseParams final_curve);

  // V_inf(final) - V_inf(initial).
  double asymptote_gap() const;
  void validate() const;
};

struct EngineConfig {
  SpeciesSpec acceptor;
  SpeciesSpec donor;
  double r_ad = 0.0;
  BoxSpec box;
  XsMode mode = XsMode::franck_condon;

  void validate() const;
};

struct FinalLevel {
  enum class Kind { bound, continuum };
  Kind kind = Kind::bound;
  int index = 0; // vibrational quantum number, or continuum state index

  static FinalLevel bound(int nu) { return {Kind::bound, nu}; }
  static FinalLevel continuum(int i) { return {Kind::continuum, i}; }
  bool is_bound() const { return kind == Kind::bound; }
  auto operator<=>(const FinalLevel&) const = default;
};

struct InitialState {
  int nu_a = 0;
  int nu_d = 0;
  auto operator<=>(const InitialState&) const = default;
};

struct ChannelSpec {
  InitialState initial;
  FinalLevel final_a;
  FinalLevel final_d;
  auto operator<=>(const ChannelSpec&) const = default;
};

// sigma is bohr^2 for bound-bound channels and bohr^2 / Hartree per
// continuum axis otherwise.
struct ChannelResult {
  ChannelSpec spec;
  double omega = 0.0;
  double eps_out = 0.0;
  double sigma = 0.0;
  bool open = false;
};

struct TotalXs {
  double bound_bound = 0.0;
  double bound_dissociative = 0.0;  // A bound, D dissociates
  double dissociative_bound = 0.0;  // A dissociates, D bound
  double double_dissociative = 0.0;

  double dissociative() const { return bound_dissociative + dissociative_bound + double_dissociative; }
  double total() const { return bound_bound + dissociative(); }
};

struct ThermalWeight {
  InitialState state;
  double weight = 0.0;
};

// Vibrational structure of one species, derived once from its spec.
struct SpeciesModel {
  SpeciesKind kind = SpeciesKind::atomic;
  double gap = 0.0;              // V_inf(final) - V_inf(initial)
  std::vector<BoundLevel> initial_levels;
  std::vector<BoundLevel> final_levels;
  ContinuumSet continuum;        // final-curve continuum (empty for atoms)
  std::map<int, FcTable> fc;     // initial nu -> factors into the final curve

  double initial_energy(int nu) const;
  double final_energy(const FinalLevel& f) const;
  // |<f|nu>|^2 for bound f, |<f|nu>|^2 rho for continuum f.
  double factor(int nu, const FinalLevel& f) const;
  bool has_continuum() const { return !continuum.states.empty(); }
};

// One term of the channel sum, as seen by a ChannelVisitor.
struct Contribution {
  enum class Class { bound_bound, bound_dissociative, dissociative_bound, double_dissociative };
  Class cls = Class::bound_bound;
  ChannelResult channel;
  // Energy width carried by this term (clipped cell of the integration
  // variable); 1 for bound-bound terms.
  double width = 1.0;
  // Outer-cell factor for double-dissociative terms (sigma * outer width).
  double outer_weight = 1.0;
  // Energy of the first dissociative state of D for the same A level:
  // eps' at E_{D+} = 0. Only meaningful when D has a continuum.
  double eps_out_dissociation = 0.0;
};

using ChannelVisitor = std::function<void(const Contribution&)>;

class IcecEngine {
public:
  explicit IcecEngine(EngineConfig cfg);

  const EngineConfig& config() const { return cfg_; }
  const SpeciesModel& acceptor() const { return acceptor_; }
  const SpeciesModel& donor() const { return donor_; }

  // Adiabatic IPs of A^- and D from the lowest vibrational levels.
  double adiabatic_ip_acceptor() const { return ipa_acceptor_; }
  double adiabatic_ip_donor() const { return ipa_donor_; }
  // V_D+(R_e) - V_D(R_e) for a diatomic donor, ip_reference for an atom.
  double vertical_ip_donor() const;

  // omega = eps + IP^a_{A-} + [(E_nuA - E_0A) - (E_A- - E_0A-)]
  double transferred_energy(double eps, int nu_a, const FinalLevel& final_a) const;
  // omega = eps + (V_A + E_nuA) - (V_A- + E_A-)
  double transferred_energy_asymptotic(double eps, int nu_a, const FinalLevel& final_a) const;
  // eps' = omega - IP^a_D - [(E_D+ - E_0D+) - (E_nuD - E_0D)]
  double outgoing_energy(double omega, int nu_d, const FinalLevel& final_d) const;
  // eps' = omega + (V_D + E_nuD) - (V_D+ + E_D+)
  double outgoing_energy_asymptotic(double omega, int nu_d, const FinalLevel& final_d) const;
  // eps + initial energies - eps' - final energies, V_inf referenced.
  double energy_balance_residual(double eps, const ChannelSpec& spec) const;

  // Upper integration limits: eps' = 0 with the partner in the given state.
  double max_donor_continuum_energy(double eps, const InitialState& init, const FinalLevel& final_a) const;
  double max_acceptor_continuum_energy(double eps, const InitialState& init, const FinalLevel& final_d) const;

  // Unresolved sigma_PR of A via detailed balance at omega = eps + IP_{A-};
  // +inf at eps = 0 (threshold divergence).
  double pr_cross_section(double eps) const;

  ChannelResult channel_xs(double eps, const ChannelSpec& spec) const;
  double electronic_xs(double eps) const;
  TotalXs total_xs(double eps, const InitialState& init) const;
  double thermal_xs(double eps, double temperature) const;
  std::vector<ThermalWeight> thermal_weights(double temperature) const;

  // Walks every open term of the final-state sum (bound sums and continuum
  // integrals with their upper limits).
  void visit_channels(double eps, const InitialState& init, const ChannelVisitor& visit) const;

  // Every final-state combination, open or closed.
  std::vector<ChannelSpec> enumerate_channels(const InitialState& init) const;

  static constexpr double open_threshold_eV = 1e-9;

private:
  double base_xs(double eps, double omega, const ChannelSpec& spec) const;
  double donor_pi(double omega, const ChannelSpec& spec) const;
  void check_initial(const InitialState& init) const;

  EngineConfig cfg_;
  SpeciesModel acceptor_;
  SpeciesModel donor_;
  double ipa_acceptor_ = 0.0;
  double ipa_donor_ = 0.0;
};

} // namespace icec
