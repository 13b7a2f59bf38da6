/*
 * cover.hpp
 *
 * Invariant covers of (Sigma, Q): validation, canonical constructions and
 * bounded enumeration of candidate covers.
 */

#ifndef IFENT_COVER_HPP_
#define IFENT_COVER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ifent/system.hpp"

namespace ifent {

/// Finite list of (A_i, G(A_i)) pairs with A_i a nonempty subset of Q and
/// post_set(A_i, G_i) contained in Q. Canonical order is lexicographic by
/// (set, input); elements are pairwise distinct as pairs.
struct InvariantCover {
  struct Element {
    StateSet set;
    InputId input = 0;
    auto operator<=>(const Element&) const = default;
  };
  std::vector<Element> elements;

  void canonicalize();
  std::string to_string() const;
  auto operator<=>(const InvariantCover&) const = default;
};

struct CoverCheck {
  bool ok = false;
  bool covers = false;     // union of elements contains Q
  bool invariant = false;  // every post_set(A_i, G_i) inside Q
  // first failure, when any
  std::size_t element = 0;
  StateId escaping_state = 0;
  std::string message;
};

CoverCheck check_invariant_cover(const FiniteSystem& sys, const TargetSet& Q,
                                 const InvariantCover& cover);

/// One singleton element per state of Q with its witness input.
/// Throws NotControlledInvariant.
InvariantCover singleton_cover(const FiniteSystem& sys, const TargetSet& Q);

/// For each input u the inclusion-maximal controllable set
/// A_u = {x in Q | F(x,u) subset of Q}, empty ones omitted. Any invariant
/// cover element with input u is a subset of A_u.
std::vector<InvariantCover::Element> controllable_family(
    const FiniteSystem& sys, const TargetSet& Q);

/// All candidate elements {(S,u) | S nonempty, S subset of A_u}, canonical
/// order. This is itself an invariant cover when Q is controlled invariant,
/// and it dominates every other cover pointwise in r_inv.
std::vector<InvariantCover::Element> all_cover_candidates(
    const FiniteSystem& sys, const TargetSet& Q);

struct CoverLimits {
  std::size_t max_elements = 8;
  std::uint64_t node_budget = 200000;
  bool exact = true;  // falls back to heuristic past exact_state_limit
  std::size_t exact_state_limit = 6;
};

struct CoverEnumeration {
  std::vector<InvariantCover> covers;  // deduplicated, deterministic order
  bool exact_mode = false;
  /// false when the node budget was exhausted; covers then hold the
  /// partial results.
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// Exact mode: every cover (up to reordering) whose elements are subsets of
/// some A_u, with at most max_elements elements. Heuristic mode: covers
/// built from the maximal sets A_u and singletons only.
CoverEnumeration enumerate_covers(const FiniteSystem& sys, const TargetSet& Q,
                                  const CoverLimits& limits);

}  // namespace ifent

#endif
