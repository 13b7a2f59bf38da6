#include "ifent/det.hpp"

#include <algorithm>

#include "ifent/errors.hpp"

namespace ifent {

namespace {

// K(nu) = states of Q whose orbit under nu stays in Q through step tau
StateSet safe_states(const FiniteSystem& sys, const TargetSet& Q,
                     const std::vector<InputId>& nu) {
  StateSet out;
  for (StateId x : Q.members) {
    StateId cur = x;
    bool safe = true;
    for (InputId u : nu) {
      cur = sys.post(cur, u).min();  // deterministic: singleton
      if (!Q.members.contains(cur)) {
        safe = false;
        break;
      }
    }
    if (safe) out.insert(x);
  }
  return out;
}

struct CoverInstance {
  std::vector<StateSet> sets;
  std::vector<std::vector<InputId>> seqs;
  StateSet target;
};

// exact minimum set cover, branch-and-bound seeded by greedy; lexicographic
// tie-breaks via enumeration order
struct ExactCover {
  const CoverInstance& inst;
  std::size_t best = 0;  // 0 = none
  std::vector<std::size_t> best_pick;
  std::vector<std::size_t> pick;

  void run() {
    greedy_seed();
    recurse(StateSet{});
  }

  void greedy_seed() {
    StateSet covered;
    std::vector<std::size_t> chosen;
    while (!inst.target.is_subset_of(covered)) {
      std::size_t best_j = inst.sets.size();
      std::size_t best_gain = 0;
      for (std::size_t j = 0; j < inst.sets.size(); ++j) {
        std::size_t gain = 0;
        for (StateId x : inst.sets[j])
          if (inst.target.contains(x) && !covered.contains(x)) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best_j = j;
        }
      }
      if (best_j == inst.sets.size()) return;  // uncoverable
      chosen.push_back(best_j);
      covered.unite(inst.sets[best_j]);
    }
    best = chosen.size();
    std::sort(chosen.begin(), chosen.end());
    best_pick = std::move(chosen);
  }

  void recurse(const StateSet& covered) {
    if (inst.target.is_subset_of(covered)) {
      if (best == 0 || pick.size() < best) {
        best = pick.size();
        best_pick = pick;
      }
      return;
    }
    // one more set is needed; prune against the incumbent
    if (best != 0 && pick.size() + 1 >= best) return;
    StateId pivot = 0;
    for (StateId x : inst.target)
      if (!covered.contains(x)) {
        pivot = x;
        break;
      }
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      if (!inst.sets[j].contains(pivot)) continue;
      pick.push_back(j);
      StateSet next = covered;
      next.unite(inst.sets[j]);
      recurse(next);
      pick.pop_back();
    }
  }
};

void input_sequences(const FiniteSystem& sys, unsigned tau,
                     std::vector<std::vector<InputId>>& out) {
  std::vector<InputId> nu(tau, 0);
  for (;;) {
    out.push_back(nu);
    unsigned pos = 0;
    while (pos < tau) {
      if (++nu[pos] < sys.num_inputs) break;
      nu[pos] = 0;
      ++pos;
    }
    if (pos == tau) return;
  }
}

}  // namespace

RDetResult r_det(const FiniteSystem& sys, const TargetSet& Q, unsigned tau,
                 const DetLimits& limits) {
  if (!is_deterministic(sys))
    throw NotDeterministic("r_det requires a deterministic system");
  if (Q.members.empty()) throw Error("r_det requires a nonempty Q");
  if (tau < 1) throw Error("r_det requires tau >= 1");

  CoverInstance inst;
  inst.target = Q.members;
  std::vector<std::vector<InputId>> seqs;
  input_sequences(sys, tau, seqs);
  for (auto& nu : seqs) {
    StateSet k = safe_states(sys, Q, nu);
    if (k.empty()) continue;
    inst.sets.push_back(std::move(k));
    inst.seqs.push_back(std::move(nu));
  }

  RDetResult res;
  StateSet reachable;
  for (const auto& s : inst.sets) reachable.unite(s);
  if (!Q.members.is_subset_of(reachable)) {
    res.finite = false;  // some state has no safe sequence: r_det infinite
    return res;
  }

  const bool within_caps = Q.members.size() <= limits.max_q &&
                           seqs.size() <= limits.max_seqs;
  ExactCover solver{inst};
  if (within_caps) {
    solver.run();
    res.exact = true;
  } else {
    solver.greedy_seed();
    res.exact = false;
  }
  res.finite = true;
  res.value = Big(solver.best);
  for (std::size_t j : solver.best_pick) res.witnesses.push_back(inst.seqs[j]);
  return res;
}

DetSpanReport h_det_bounds(const FiniteSystem& sys, const TargetSet& Q,
                           unsigned tau_max, const DetLimits& limits) {
  DetSpanReport rep;
  for (unsigned tau = 1; tau <= tau_max; ++tau) {
    auto r = r_det(sys, Q, tau, limits);
    DetSpanReport::Row row;
    row.tau = tau;
    row.finite = r.finite;
    row.exact = r.exact;
    if (r.finite) {
      row.r = r.value;
      row.rate = LogRate(r.value, tau);
      row.witnesses = std::move(r.witnesses);
    } else {
      row.rate = LogRate::infinity();
    }
    rep.all_exact = rep.all_exact && row.exact;
    rep.per_tau.push_back(std::move(row));
  }
  for (const auto& row : rep.per_tau) rep.ub = std::min(rep.ub, row.rate);
  rep.label = rep.all_exact ? "exact" : "upper bound only";
  return rep;
}

}  // namespace ifent
