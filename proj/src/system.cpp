#include "ifent/system.hpp"

#include <algorithm>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

StateSet::StateSet(std::initializer_list<StateId> ids)
    : StateSet(std::vector<StateId>(ids)) {}

StateSet::StateSet(std::vector<StateId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

void StateSet::insert(StateId x) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), x);
  if (it == ids_.end() || *it != x) ids_.insert(it, x);
}

bool StateSet::contains(StateId x) const {
  return std::binary_search(ids_.begin(), ids_.end(), x);
}

bool StateSet::is_subset_of(const StateSet& o) const {
  return std::includes(o.ids_.begin(), o.ids_.end(), ids_.begin(), ids_.end());
}

bool StateSet::intersects(const StateSet& o) const {
  auto a = ids_.begin();
  auto b = o.ids_.begin();
  while (a != ids_.end() && b != o.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

void StateSet::unite(const StateSet& o) {
  std::vector<StateId> merged;
  merged.reserve(ids_.size() + o.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                 std::back_inserter(merged));
  ids_ = std::move(merged);
}

std::string StateSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) os << ",";
    os << ids_[i];
  }
  os << "}";
  return os.str();
}

const StateSet& FiniteSystem::post(StateId x, InputId u) const {
  if (u >= num_inputs)
    throw UnknownInput("input id " + std::to_string(u) + " out of range");
  if (x >= num_states)
    throw Error("state id " + std::to_string(x) + " out of range");
  return trans[std::size_t(x) * num_inputs + u];
}

std::string Trajectory::to_string() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < states.size(); ++t) {
    if (t) os << " -(" << inputs[t - 1] << ")-> ";
    os << states[t];
  }
  return os.str();
}

std::string ValidationReport::to_string() const {
  if (valid()) return "valid";
  std::ostringstream os;
  if (!table_complete) os << "transition table incomplete; ";
  for (const auto& e : empty_posts)
    os << "empty successor set at (" << e.state << "," << e.input << "); ";
  for (StateId x : out_of_range_successors)
    os << "out-of-range successor " << x << "; ";
  return os.str();
}

ValidationReport validate_system(const FiniteSystem& sys) {
  ValidationReport rep;
  rep.table_complete =
      sys.trans.size() == sys.num_states * sys.num_inputs;
  const std::size_t n =
      std::min(sys.trans.size(), sys.num_states * sys.num_inputs);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const auto x = StateId(idx / sys.num_inputs);
    const auto u = InputId(idx % sys.num_inputs);
    if (sys.trans[idx].empty()) rep.empty_posts.push_back({x, u});
    for (StateId y : sys.trans[idx])
      if (y >= sys.num_states) rep.out_of_range_successors.push_back(y);
  }
  std::sort(rep.out_of_range_successors.begin(),
            rep.out_of_range_successors.end());
  rep.out_of_range_successors.erase(
      std::unique(rep.out_of_range_successors.begin(),
                  rep.out_of_range_successors.end()),
      rep.out_of_range_successors.end());
  return rep;
}

StateSet post_set(const FiniteSystem& sys, const StateSet& src, InputId u) {
  if (u >= sys.num_inputs)
    throw UnknownInput("input id " + std::to_string(u) + " out of range");
  StateSet out;
  for (StateId x : src) out.unite(sys.post(x, u));
  return out;
}

ControlledInvariance is_controlled_invariant(const FiniteSystem& sys,
                                             const TargetSet& Q) {
  ControlledInvariance res;
  res.invariant = true;
  for (StateId x : Q.members) {
    bool found = false;
    for (InputId u = 0; u < sys.num_inputs; ++u) {
      if (sys.post(x, u).is_subset_of(Q.members)) {
        res.witness[x] = u;  // smallest input id wins
        found = true;
        break;
      }
    }
    if (!found) {
      res.invariant = false;
      res.stuck.push_back(x);
    }
  }
  return res;
}

bool is_deterministic(const FiniteSystem& sys) {
  for (const auto& post : sys.trans)
    if (post.size() != 1) return false;
  return true;
}

bool is_trajectory(const FiniteSystem& sys, const Trajectory& tr) {
  if (tr.states.empty()) return false;
  if (tr.inputs.size() + 1 != tr.states.size()) return false;
  for (std::size_t t = 0; t < tr.inputs.size(); ++t) {
    if (tr.states[t] >= sys.num_states || tr.inputs[t] >= sys.num_inputs)
      return false;
    if (!sys.post(tr.states[t], tr.inputs[t]).contains(tr.states[t + 1]))
      return false;
  }
  return tr.states.back() < sys.num_states;
}

StateSet invariance_fixpoint(const FiniteSystem& sys, const StateSet& seed) {
  StateSet current = seed;
  for (;;) {
    std::vector<StateId> keep;
    for (StateId x : current) {
      for (InputId u = 0; u < sys.num_inputs; ++u) {
        if (sys.post(x, u).is_subset_of(current)) {
          keep.push_back(x);
          break;
        }
      }
    }
    if (keep.size() == current.size()) return current;
    current = StateSet(std::move(keep));
  }
}

}  // namespace ifent
