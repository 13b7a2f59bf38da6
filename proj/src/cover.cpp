#include "ifent/cover.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

void InvariantCover::canonicalize() {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
}

std::string InvariantCover::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) os << " ";
    os << elements[i].set.to_string() << "->" << elements[i].input;
  }
  return os.str();
}

CoverCheck check_invariant_cover(const FiniteSystem& sys, const TargetSet& Q,
                                 const InvariantCover& cover) {
  CoverCheck res;
  std::set<std::pair<StateSet, InputId>> seen;
  StateSet covered;
  for (std::size_t i = 0; i < cover.elements.size(); ++i) {
    const auto& el = cover.elements[i];
    if (el.set.empty()) {
      res.element = i;
      res.message = "element " + std::to_string(i) + " is empty";
      return res;
    }
    if (el.input >= sys.num_inputs || !el.set.is_subset_of(Q.members)) {
      res.element = i;
      res.message = "element " + std::to_string(i) +
                    " has an out-of-range input or escapes Q";
      return res;
    }
    if (!seen.insert({el.set, el.input}).second) {
      res.element = i;
      res.message = "duplicate (set,input) pair at " + std::to_string(i);
      return res;
    }
    covered.unite(el.set);
  }
  res.covers = Q.members.is_subset_of(covered);
  res.invariant = true;
  for (std::size_t i = 0; i < cover.elements.size() && res.invariant; ++i) {
    const auto& el = cover.elements[i];
    const StateSet post = post_set(sys, el.set, el.input);
    for (StateId y : post) {
      if (!Q.members.contains(y)) {
        res.invariant = false;
        res.element = i;
        res.escaping_state = y;
        res.message = "element " + std::to_string(i) + " drives state " +
                      std::to_string(y) + " outside Q";
        break;
      }
    }
  }
  if (!res.covers && res.message.empty()) res.message = "elements do not cover Q";
  res.ok = res.covers && res.invariant;
  if (res.ok) res.message = "ok";
  return res;
}

InvariantCover singleton_cover(const FiniteSystem& sys, const TargetSet& Q) {
  const auto ci = is_controlled_invariant(sys, Q);
  if (!ci.invariant) {
    std::ostringstream os;
    os << "Q is not controlled invariant; stuck states:";
    for (StateId x : ci.stuck) os << " " << x;
    throw NotControlledInvariant(os.str());
  }
  InvariantCover cover;
  for (StateId x : Q.members)
    cover.elements.push_back({StateSet{x}, ci.witness.at(x)});
  cover.canonicalize();
  return cover;
}

std::vector<InvariantCover::Element> controllable_family(
    const FiniteSystem& sys, const TargetSet& Q) {
  std::vector<InvariantCover::Element> out;
  for (InputId u = 0; u < sys.num_inputs; ++u) {
    StateSet a_u;
    for (StateId x : Q.members)
      if (sys.post(x, u).is_subset_of(Q.members)) a_u.insert(x);
    if (!a_u.empty()) out.push_back({a_u, u});
  }
  return out;
}

std::vector<InvariantCover::Element> all_cover_candidates(
    const FiniteSystem& sys, const TargetSet& Q) {
  std::vector<InvariantCover::Element> out;
  for (const auto& max_el : controllable_family(sys, Q)) {
    const auto& ids = max_el.set.ids();
    const std::size_t n = ids.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
      std::vector<StateId> subset;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t(1) << b)) subset.push_back(ids[b]);
      out.push_back({StateSet(std::move(subset)), max_el.input});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// DFS over candidate indices, include/exclude, visiting every covering
// subset with at most max_elements elements. Redundant covers are kept:
// extra elements can strictly lower r_inv.
struct SubsetCoverSearch {
  const std::vector<InvariantCover::Element>& candidates;
  const StateSet& target;
  const CoverLimits& limits;
  CoverEnumeration& result;
  std::vector<std::size_t> chosen;
  // suffix_union[i] = union of candidate sets i..end
  std::vector<StateSet> suffix_union;

  void run() {
    suffix_union.assign(candidates.size() + 1, StateSet{});
    for (std::size_t i = candidates.size(); i-- > 0;) {
      suffix_union[i] = suffix_union[i + 1];
      suffix_union[i].unite(candidates[i].set);
    }
    StateSet covered;
    dfs(0, covered);
  }

  // Each subset is visited exactly once, at its terminal node.
  void dfs(std::size_t idx, const StateSet& covered) {
    if (!result.complete) return;
    if (++result.nodes > limits.node_budget) {
      result.complete = false;
      return;
    }
    if (idx == candidates.size() || chosen.size() >= limits.max_elements) {
      if (target.is_subset_of(covered)) emit();
      return;
    }
    // feasibility: remaining candidates must be able to finish the cover
    StateSet reach = covered;
    reach.unite(suffix_union[idx]);
    if (!target.is_subset_of(reach)) return;
    // include idx
    chosen.push_back(idx);
    StateSet next = covered;
    next.unite(candidates[idx].set);
    dfs(idx + 1, next);
    chosen.pop_back();
    // exclude idx
    dfs(idx + 1, covered);
  }

  void emit() {
    InvariantCover cover;
    for (std::size_t i : chosen) cover.elements.push_back(candidates[i]);
    cover.canonicalize();
    result.covers.push_back(std::move(cover));
  }
};

}  // namespace

CoverEnumeration enumerate_covers(const FiniteSystem& sys, const TargetSet& Q,
                                  const CoverLimits& limits) {
  CoverEnumeration result;
  result.exact_mode = limits.exact && Q.members.size() <= limits.exact_state_limit;

  std::vector<InvariantCover::Element> pool;
  if (result.exact_mode) {
    pool = all_cover_candidates(sys, Q);
  } else {
    // maximal controllable sets plus singletons
    pool = controllable_family(sys, Q);
    for (const auto& max_el : controllable_family(sys, Q))
      for (StateId x : max_el.set)
        pool.push_back({StateSet{x}, max_el.input});
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  }

  SubsetCoverSearch search{pool, Q.members, limits, result, {}, {}};
  search.run();

  std::sort(result.covers.begin(), result.covers.end());
  result.covers.erase(std::unique(result.covers.begin(), result.covers.end()),
                      result.covers.end());
  return result;
}

}  // namespace ifent
