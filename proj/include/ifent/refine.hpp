/*
 * refine.hpp
 *
 * Feedback refinement relations between finite systems: validity and
 * target-set compatibility checks, and the constructive cover transport
 * that realizes the entropy monotonicity.
 */

#ifndef IFENT_REFINE_HPP_
#define IFENT_REFINE_HPP_

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ifent/cover.hpp"
#include "ifent/system.hpp"

namespace ifent {

/// Strict relation R between X1 and X2 plus an input translation
/// r : U2 -> U1 (input_map[u2] = u1).
struct RefinementRelation {
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<InputId> input_map;

  StateSet image(const StateSet& s1) const;     // R(S)
  StateSet preimage(const StateSet& s2) const;  // R^{-1}(S)
};

struct FrrCheck {
  bool ok = false;
  bool strict = false;
  std::vector<StateId> unrelated;  // states of X1 without a related state
  /// first violating (x1, x2, u2) of the refinement inclusion
  std::optional<std::tuple<StateId, StateId, InputId>> violation;
  std::string message;
};

/// Checks strictness and, for every related pair and every u2, the
/// inclusion R(F1(x1, r(u2))) within F2(x2, u2).
FrrCheck check_frr(const FiniteSystem& sys1, const FiniteSystem& sys2,
                   const RefinementRelation& rel);

/// Exact equality Q1 = R^{-1}(Q2).
bool check_q_compat(const RefinementRelation& rel, const TargetSet& Q1,
                    const TargetSet& Q2);

/// Elements R^{-1}(A2) with inputs r(G2(A2)); valid invariant cover of
/// (Sigma1, Q1) under the checked preconditions (which this verifies,
/// throwing Error on failure).
InvariantCover transport_cover(const FiniteSystem& sys1,
                               const FiniteSystem& sys2,
                               const RefinementRelation& rel,
                               const TargetSet& Q1, const TargetSet& Q2,
                               const InvariantCover& cover2);

}  // namespace ifent

#endif
