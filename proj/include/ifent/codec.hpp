/*
 * codec.hpp
 *
 * Periodic coder-controllers over a noiseless digital channel:
 * construction from spanning policies, extraction of covers and policies
 * from controllers, admissibility checking, and the data-rate notions
 * R(H), R_tv(H) and C0(H).
 */

#ifndef IFENT_CODEC_HPP_
#define IFENT_CODEC_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ifent/cover.hpp"
#include "ifent/entropy.hpp"
#include "ifent/numbers.hpp"
#include "ifent/system.hpp"

namespace ifent {

using Symbol = std::uint32_t;  // 1-based; 1 doubles as the fallback symbol

/// Coder/controller tables indexed by phase. The declared period drives
/// restarts and the rate evaluation; tables may have a shorter period of
/// their own (a table-periodic coder evaluated on a fresh window is already
/// the truncated evaluation, so re-declaring the period needs no rewrite).
/// Windows absent from the tables fall back to symbol 1 and input 0.
struct PeriodicCoderController {
  unsigned period = 1;
  unsigned num_symbols = 1;
  unsigned table_period = 1;
  /// coder[p]: state window of length p+1 -> symbol, p < table_period
  std::vector<std::map<std::vector<StateId>, Symbol>> coder;
  /// controller[p]: symbol window of length p+1 -> input
  std::vector<std::map<std::vector<Symbol>, InputId>> controller;

  /// gamma at the given phase of the declared period; window holds the
  /// states since the last period start (length phase+1)
  Symbol encode(unsigned phase, const std::vector<StateId>& window) const;
  /// delta at the given phase; window holds the symbols since the last
  /// period start
  InputId decode(unsigned phase, const std::vector<Symbol>& window) const;
};

struct AdmissibilityResult {
  bool admissible = false;
  /// shortest escaping closed-loop trajectory when inadmissible
  std::optional<Trajectory> counterexample;
};

/// Explores the finite closed-loop graph over (phase, state window) from
/// all states of Q; admissible iff no reachable state leaves Q.
AdmissibilityResult check_admissible(const FiniteSystem& sys,
                                     const TargetSet& Q,
                                     const PeriodicCoderController& H);

struct RateReport {
  /// max over feasible symbol sequences of (1/tau) sum log2 #Z, stored as
  /// the exact pair (product of #Z values, tau)
  LogRate rate;
  bool admissible = false;
  bool admissibility_checked = false;
  /// successor-symbol sets per feasible symbol prefix (lengths 1..tau)
  std::map<std::vector<Symbol>, std::set<Symbol>> z_table;
  std::optional<Trajectory> counterexample;
  std::size_t num_sequences = 0;  // #Z_tau at the declared period
};

struct RateOptions {
  bool require_admissible = true;  // throw NotAdmissible when it fails
  const TargetSet* Q = nullptr;    // needed when admissibility is checked
};

/// Transmission data rate at the declared period. Feasibility of symbol
/// sequences quantifies over all system trajectories, not only those
/// starting in Q.
RateReport transmission_rate(const FiniteSystem& sys,
                             const PeriodicCoderController& H,
                             const RateOptions& opts = {});

/// Builds the coder-controller that tracks a branch of the policy: fixed
/// enumerations of the initial and successor families, first-match coder
/// with fallback symbol 1, controller replaying the cover inputs along the
/// decoded branch. Q-admissible with R(H) <= (1/tau) log2 N(policy).
PeriodicCoderController from_spanning(const FiniteSystem& sys,
                                      const TargetSet& Q,
                                      const InvariantCover& cover,
                                      const SpanningPolicy& policy);

struct ExtractedCover {
  InvariantCover cover;
  SpanningPolicy policy;
};

/// Extracts, from a Q-admissible H, the cover of symbol-prefix-consistent
/// state sets with inputs delta(prefix), and the induced spanning policy
/// (same-level elements with equal (set,input) merge by family union).
/// Throws NotAdmissible with a counterexample.
ExtractedCover to_cover_and_spanning(const FiniteSystem& sys,
                                     const TargetSet& Q,
                                     const PeriodicCoderController& H);

struct TimeVaryingRate {
  LogRate limit;      // exact limit of the per-period average
  LogRate truncated;  // average over the first `horizon` steps
  std::vector<std::size_t> per_phase;  // #S_t for one period
};

/// Per-step coder image sizes over ALL state windows (not only feasible
/// ones), averaged; exact limit since the sizes are periodic in t.
TimeVaryingRate time_varying_rate(const FiniteSystem& sys,
                                  const PeriodicCoderController& H,
                                  unsigned horizon);

enum class GrowthClass { polynomial, exponential };

struct ZeroErrorCapacity {
  GrowthClass growth = GrowthClass::polynomial;
  bool certified = false;
  LogRate estimate;             // 0 when polynomial
  std::vector<Big> counts;      // #Z_tau for tau = 1..tau_probe
  std::string note;
};

/// Builds the symbol-prefix automaton of the closed loop and classifies
/// the growth of #Z_tau. Certified 0 when every SCC is a simple cycle;
/// certified log2 d when every reachable node branches d ways; otherwise
/// the slope at tau_probe with a warning note.
ZeroErrorCapacity zero_error_capacity(const FiniteSystem& sys,
                                      const PeriodicCoderController& H,
                                      unsigned tau_probe);

/// Re-declares the period, truncating histories at the new period
/// boundaries. Throws WindowTooShort when tau == 0.
PeriodicCoderController periodize(const PeriodicCoderController& H,
                                  unsigned tau);

/// Deterministic successor choice for closed-loop simulation.
struct Adversary {
  /// picks one element of the (sorted) successor set
  std::function<StateId(const StateSet&, unsigned step)> pick;
  static Adversary minimal_id();
  static Adversary seeded_uniform(std::uint64_t seed);
  static Adversary script(std::vector<std::size_t> choices);
};

struct SimulationTrace {
  Trajectory trajectory;
  std::vector<Symbol> symbols;
};

SimulationTrace simulate(const FiniteSystem& sys,
                         const PeriodicCoderController& H, StateId x0,
                         unsigned steps, const Adversary& adversary);

}  // namespace ifent

#endif
