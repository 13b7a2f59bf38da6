#include "ifent/refine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

StateSet RefinementRelation::image(const StateSet& s1) const {
  StateSet out;
  for (const auto& [x1, x2] : pairs)
    if (s1.contains(x1)) out.insert(x2);
  return out;
}

StateSet RefinementRelation::preimage(const StateSet& s2) const {
  StateSet out;
  for (const auto& [x1, x2] : pairs)
    if (s2.contains(x2)) out.insert(x1);
  return out;
}

FrrCheck check_frr(const FiniteSystem& sys1, const FiniteSystem& sys2,
                   const RefinementRelation& rel) {
  FrrCheck res;
  if (rel.input_map.size() != sys2.num_inputs) {
    res.message = "input map must cover every input of the second system";
    return res;
  }
  for (InputId u1 : rel.input_map)
    if (u1 >= sys1.num_inputs) {
      res.message = "input map target out of range";
      return res;
    }
  for (const auto& [x1, x2] : rel.pairs)
    if (x1 >= sys1.num_states || x2 >= sys2.num_states) {
      res.message = "relation pair out of range";
      return res;
    }

  std::vector<bool> related(sys1.num_states, false);
  for (const auto& [x1, x2] : rel.pairs) related[x1] = true;
  for (StateId x1 = 0; x1 < sys1.num_states; ++x1)
    if (!related[x1]) res.unrelated.push_back(x1);
  res.strict = res.unrelated.empty();
  if (!res.strict) {
    std::ostringstream os;
    os << "relation is not strict; unrelated states:";
    for (StateId x : res.unrelated) os << " " << x;
    res.message = os.str();
    return res;
  }

  // canonical order over (x1, x2, u2) for a deterministic first violation
  auto sorted = rel.pairs;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [x1, x2] : sorted) {
    for (InputId u2 = 0; u2 < sys2.num_inputs; ++u2) {
      const StateSet lhs = rel.image(sys1.post(x1, rel.input_map[u2]));
      if (!lhs.is_subset_of(sys2.post(x2, u2))) {
        res.violation = {x1, x2, u2};
        std::ostringstream os;
        os << "refinement inclusion fails at (" << x1 << "," << x2 << ") under input "
           << u2;
        res.message = os.str();
        return res;
      }
    }
  }
  res.ok = true;
  res.message = "ok";
  return res;
}

bool check_q_compat(const RefinementRelation& rel, const TargetSet& Q1,
                    const TargetSet& Q2) {
  return rel.preimage(Q2.members) == Q1.members;
}

InvariantCover transport_cover(const FiniteSystem& sys1,
                               const FiniteSystem& sys2,
                               const RefinementRelation& rel,
                               const TargetSet& Q1, const TargetSet& Q2,
                               const InvariantCover& cover2) {
  const auto frr = check_frr(sys1, sys2, rel);
  if (!frr.ok) throw Error("transport_cover: " + frr.message);
  if (!check_q_compat(rel, Q1, Q2))
    throw Error("transport_cover: Q1 differs from the preimage of Q2");
  const auto c2 = check_invariant_cover(sys2, Q2, cover2);
  if (!c2.ok)
    throw Error("transport_cover: second cover invalid: " + c2.message);

  InvariantCover out;
  for (const auto& el : cover2.elements) {
    StateSet pre = rel.preimage(el.set);
    if (pre.empty()) continue;
    out.elements.push_back({std::move(pre), rel.input_map[el.input]});
  }
  out.canonicalize();
  return out;
}

}  // namespace ifent
