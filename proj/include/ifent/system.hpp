/*
 * system.hpp
 *
 * Finite uncertain transition systems: state/input alphabets as dense
 * 0-based ids, a strict set-valued transition map, target sets and
 * trajectories, plus the basic reachability and invariance checks.
 */

#ifndef IFENT_SYSTEM_HPP_
#define IFENT_SYSTEM_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace ifent {

using StateId = std::uint32_t;
using InputId = std::uint32_t;

/// Set of state ids as a sorted, duplicate-free vector. Value type with
/// canonical ordering, so equality and map keys are bit-stable.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<StateId> ids);
  explicit StateSet(std::vector<StateId> ids);

  void insert(StateId x);
  bool contains(StateId x) const;
  bool is_subset_of(const StateSet& o) const;
  bool intersects(const StateSet& o) const;
  void unite(const StateSet& o);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<StateId>& ids() const { return ids_; }
  StateId min() const { return ids_.front(); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  auto operator<=>(const StateSet&) const = default;

  std::string to_string() const;

 private:
  std::vector<StateId> ids_;
};

/// Sigma = (X, U, F) with X = [0;num_states), U = [0;num_inputs) and
/// F(x,u) = trans[x*num_inputs+u]. F is required to be strict.
struct FiniteSystem {
  std::size_t num_states = 0;
  std::size_t num_inputs = 0;
  std::vector<StateSet> trans;

  const StateSet& post(StateId x, InputId u) const;
};

struct TargetSet {
  StateSet members;
};

struct Trajectory {
  std::vector<StateId> states;  // xi(0..T)
  std::vector<InputId> inputs;  // nu(0..T-1)
  std::string to_string() const;
};

struct ValidationReport {
  struct EmptyPost {
    StateId state;
    InputId input;
  };
  std::vector<EmptyPost> empty_posts;
  std::vector<StateId> out_of_range_successors;
  bool table_complete = true;

  bool valid() const {
    return empty_posts.empty() && out_of_range_successors.empty() &&
           table_complete;
  }
  std::string to_string() const;
};

ValidationReport validate_system(const FiniteSystem& sys);

/// F(src,u) = union of F(x,u) over x in src. Throws UnknownInput.
StateSet post_set(const FiniteSystem& sys, const StateSet& src, InputId u);

struct ControlledInvariance {
  bool invariant = false;
  /// one safe input per state of Q, smallest input id on ties
  std::map<StateId, InputId> witness;
  /// states of Q with no safe input
  std::vector<StateId> stuck;
};

ControlledInvariance is_controlled_invariant(const FiniteSystem& sys,
                                             const TargetSet& Q);

bool is_deterministic(const FiniteSystem& sys);

bool is_trajectory(const FiniteSystem& sys, const Trajectory& tr);

/// Largest controlled-invariant subset of seed (safety fixpoint); may be
/// empty.
StateSet invariance_fixpoint(const FiniteSystem& sys, const StateSet& seed);

}  // namespace ifent

#endif
