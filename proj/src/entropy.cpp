#include "ifent/entropy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ifent/codec.hpp"
#include "ifent/errors.hpp"

namespace ifent {

const std::optional<std::vector<std::size_t>>& SpanningPolicy::family(
    std::size_t element, unsigned steps_remaining) const {
  static const std::optional<std::vector<std::size_t>> none;
  if (steps_remaining < 2 || steps_remaining > horizon) return none;
  const auto& level = succ[steps_remaining - 2];
  if (element >= level.size()) return none;
  return level[element];
}

Big expansion_number(const SpanningPolicy& policy) {
  const unsigned tau = policy.horizon;
  if (policy.initial.empty()) throw IncompletePolicy("empty initial family");
  // c[k][i], computed bottom-up over reachable elements only
  std::map<std::pair<unsigned, std::size_t>, Big> memo;
  auto c = [&](auto&& self, std::size_t i, unsigned k) -> Big {
    if (k <= 1) return 1;
    const auto key = std::make_pair(k, i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& fam = policy.family(i, k);
    if (!fam || fam->empty())
      throw IncompletePolicy("element " + std::to_string(i) + " with " +
                             std::to_string(k) + " steps remaining lacks a family");
    Big best = 0;
    for (std::size_t j : *fam) best = std::max(best, self(self, j, k - 1));
    const Big value = Big(fam->size()) * best;
    memo[key] = value;
    return value;
  };
  Big worst = 0;
  for (std::size_t i : policy.initial)
    worst = std::max(worst, c(c, i, tau));
  return Big(policy.initial.size()) * worst;
}

PolicyCheck validate_policy(const FiniteSystem& sys, const TargetSet& Q,
                            const InvariantCover& cover,
                            const SpanningPolicy& policy) {
  PolicyCheck res;
  StateSet covered;
  for (std::size_t i : policy.initial) {
    if (i >= cover.elements.size()) {
      res.message = "initial family references element " + std::to_string(i);
      return res;
    }
    covered.unite(cover.elements[i].set);
  }
  if (!Q.members.is_subset_of(covered)) {
    res.message = "initial family does not cover Q";
    return res;
  }
  // walk reachable (element, steps remaining) pairs
  std::vector<std::vector<bool>> seen(policy.horizon + 1);
  for (auto& v : seen) v.assign(cover.elements.size(), false);
  std::vector<std::pair<std::size_t, unsigned>> stack;
  for (std::size_t i : policy.initial) stack.push_back({i, policy.horizon});
  while (!stack.empty()) {
    auto [i, k] = stack.back();
    stack.pop_back();
    if (k <= 1 || seen[k][i]) continue;
    seen[k][i] = true;
    const auto& fam = policy.family(i, k);
    if (!fam) {
      res.message = "missing family for element " + std::to_string(i) +
                    " at " + std::to_string(k) + " steps remaining";
      return res;
    }
    const StateSet post =
        post_set(sys, cover.elements[i].set, cover.elements[i].input);
    StateSet union_of_family;
    for (std::size_t j : *fam) {
      if (j >= cover.elements.size()) {
        res.message = "family references element " + std::to_string(j);
        return res;
      }
      union_of_family.unite(cover.elements[j].set);
      stack.push_back({j, k - 1});
    }
    if (!post.is_subset_of(union_of_family)) {
      res.message = "family of element " + std::to_string(i) + " at " +
                    std::to_string(k) + " steps remaining misses part of its post set";
      return res;
    }
  }
  res.ok = true;
  res.message = "ok";
  return res;
}

std::vector<std::vector<std::size_t>> expand_policy(
    const SpanningPolicy& policy, const ExpandLimits& limits) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> branch;
  auto rec = [&](auto&& self, std::size_t i, unsigned k) -> void {
    branch.push_back(i);
    if (k <= 1) {
      if (out.size() >= limits.max_branches)
        throw ExplosionGuard("policy expansion exceeds " +
                             std::to_string(limits.max_branches) + " branches");
      out.push_back(branch);
    } else {
      const auto& fam = policy.family(i, k);
      if (!fam)
        throw IncompletePolicy("missing family during expansion");
      for (std::size_t j : *fam) self(self, j, k - 1);
    }
    branch.pop_back();
  };
  for (std::size_t i : policy.initial) rec(rec, i, policy.horizon);
  return out;
}

namespace {

// Minimal-cover style enumeration of subfamilies covering `target`
// (least uncovered state drives the branching), minimizing
// #family * max(scores[j]) with branch-and-bound: the partial objective is
// monotone along the recursion, so pruning is sound.
struct FamilySearch {
  const std::vector<const StateSet*>& candidate_sets;
  const StateSet& target;
  const std::vector<Big>& scores;

  Big best_value = 0;  // 0 = none found yet
  std::vector<std::size_t> best_family;

  std::vector<std::size_t> chosen;

  void run() { recurse(StateSet{}, Big(0)); }

  void recurse(const StateSet& covered, const Big& max_score) {
    if (target.is_subset_of(covered)) {
      const Big value = Big(chosen.size()) * max_score;
      if (best_value == 0 || value < best_value) {
        best_value = value;
        best_family = chosen;
      }
      return;
    }
    // least uncovered target state drives the branching
    StateId pivot = 0;
    for (StateId x : target)
      if (!covered.contains(x)) {
        pivot = x;
        break;
      }
    for (std::size_t j = 0; j < candidate_sets.size(); ++j) {
      if (!candidate_sets[j]->contains(pivot)) continue;
      const Big next_max = std::max(max_score, scores[j]);
      const Big lower = Big(chosen.size() + 1) * next_max;
      if (best_value != 0 && lower >= best_value) continue;
      chosen.push_back(j);
      StateSet next = covered;
      next.unite(*candidate_sets[j]);
      recurse(next, next_max);
      chosen.pop_back();
    }
  }
};

Big minimize_family(const std::vector<const StateSet*>& candidate_sets,
                    const StateSet& target, const std::vector<Big>& scores,
                    std::vector<std::size_t>* family_out) {
  FamilySearch search{candidate_sets, target, scores};
  search.run();
  if (search.best_value == 0) return 0;  // uncoverable
  std::sort(search.best_family.begin(), search.best_family.end());
  if (family_out) *family_out = std::move(search.best_family);
  return search.best_value;
}

struct DpTables {
  // c[k][i] for k = 1..tau; family[k][i] the argmin (k >= 2)
  std::vector<std::vector<Big>> c;
  std::vector<std::vector<std::optional<std::vector<std::size_t>>>> families;
};

DpTables run_dp(const FiniteSystem& sys, const InvariantCover& cover,
                unsigned tau) {
  const std::size_t n = cover.elements.size();
  std::vector<StateSet> posts(n);
  std::vector<const StateSet*> sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    posts[i] = post_set(sys, cover.elements[i].set, cover.elements[i].input);
    sets[i] = &cover.elements[i].set;
  }
  DpTables dp;
  dp.c.assign(tau + 1, {});
  dp.families.assign(tau + 1, {});
  dp.c[1].assign(n, Big(1));
  for (unsigned k = 2; k <= tau; ++k) {
    dp.c[k].assign(n, Big(0));
    dp.families[k].assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> family;
      const Big value = minimize_family(sets, posts[i], dp.c[k - 1], &family);
      if (value == 0)
        throw UncoverableSet(
            "post set of element " + std::to_string(i) +
                " is not covered by any subfamily of the cover",
            i);
      dp.c[k][i] = value;
      dp.families[k][i] = std::move(family);
    }
  }
  return dp;
}

}  // namespace

RInvResult r_inv(const FiniteSystem& sys, const TargetSet& Q,
                 const InvariantCover& cover, unsigned tau) {
  if (tau < 1) throw Error("r_inv requires tau >= 1");
  if (cover.elements.empty()) throw UncoverableSet("empty cover", 0);
  const std::size_t n = cover.elements.size();
  DpTables dp = run_dp(sys, cover, tau);

  std::vector<const StateSet*> sets(n);
  for (std::size_t i = 0; i < n; ++i) sets[i] = &cover.elements[i].set;
  std::vector<std::size_t> initial;
  const Big value = minimize_family(sets, Q.members, dp.c[tau], &initial);
  if (value == 0)
    throw UncoverableSet("Q is not covered by the cover elements", 0);

  RInvResult res;
  res.value = value;
  res.policy.horizon = tau;
  res.policy.initial = std::move(initial);
  res.policy.succ.assign(tau >= 2 ? tau - 1 : 0, {});
  for (unsigned k = 2; k <= tau; ++k)
    res.policy.succ[k - 2] = dp.families[k];
  return res;
}

EntropyReport cover_entropy(const FiniteSystem& sys, const TargetSet& Q,
                            const InvariantCover& cover, unsigned tau_max) {
  if (tau_max < 1) throw Error("cover_entropy requires tau_max >= 1");
  EntropyReport rep;
  for (unsigned tau = 1; tau <= tau_max; ++tau) {
    const auto r = r_inv(sys, Q, cover, tau);
    rep.per_tau.push_back({tau, r.value, LogRate(r.value, tau)});
  }
  rep.ub = rep.per_tau.front().rate;
  for (const auto& row : rep.per_tau) rep.ub = std::min(rep.ub, row.rate);
  const Big r1 = rep.per_tau.front().r;
  rep.exact = true;
  for (const auto& row : rep.per_tau)
    if (row.r != big_pow(r1, row.tau)) {
      rep.exact = false;
      break;
    }
  rep.certificate =
      rep.exact
          ? "r(tau) = r(1)^tau for all computed tau; the bound equals the cover entropy"
          : "upper bound only (finite-horizon infimum)";
  return rep;
}

Big min_r_inv_over_covers(const FiniteSystem& sys, const TargetSet& Q,
                          unsigned tau) {
  const auto candidates = all_cover_candidates(sys, Q);
  InvariantCover maximal;
  maximal.elements = candidates;
  const auto check = check_invariant_cover(sys, Q, maximal);
  if (!check.ok)
    throw NotControlledInvariant(
        "no invariant cover exists: " + check.message);
  return r_inv(sys, Q, maximal, tau).value;
}

EntropyUpperBound invariance_entropy_ub(const FiniteSystem& sys,
                                        const TargetSet& Q,
                                        const EntropyLimits& limits) {
  EntropyUpperBound out;
  const auto ci = is_controlled_invariant(sys, Q);
  if (!ci.invariant) {
    out.ub = LogRate::infinity();
    out.exact = true;  // infinite exactly: no invariant cover exists
    out.source = "none";
    out.certificate = "Q is not controlled invariant; the entropy is infinite";
    return out;
  }

  out.enumeration = enumerate_covers(sys, Q, limits.covers);
  bool unique_cover = out.enumeration.complete &&
                      out.enumeration.exact_mode &&
                      out.enumeration.covers.size() == 1;

  bool have = false;
  for (const auto& cover : out.enumeration.covers) {
    EntropyReport rep = cover_entropy(sys, Q, cover, limits.tau_max);
    if (!have || rep.ub < out.ub ||
        (rep.ub == out.ub && rep.exact && !out.exact)) {
      have = true;
      out.ub = rep.ub;
      out.best_cover = cover;
      out.best_report = std::move(rep);
      out.source = "cover-dp";
    }
  }
  if (!have) {
    // enumeration yielded nothing within budget; fall back to singletons
    const InvariantCover fallback = singleton_cover(sys, Q);
    out.best_report = cover_entropy(sys, Q, fallback, limits.tau_max);
    out.ub = out.best_report.ub;
    out.best_cover = fallback;
    out.source = "cover-dp";
  }

  bool dp_exact = out.best_report.exact && unique_cover;

  // data-rate route: any admissible coder-controller's transmission rate
  // upper-bounds the entropy
  if (limits.codec_refine) {
    std::size_t synthesized = 0;
    for (const auto& cover : out.enumeration.covers) {
      for (unsigned tau = 1;
           tau <= limits.tau_max && synthesized < limits.codec_max_synth;
           ++tau) {
        ++synthesized;
        const auto rr = r_inv(sys, Q, cover, tau);
        const auto H = from_spanning(sys, Q, cover, rr.policy);
        RateOptions opts;
        opts.require_admissible = true;
        opts.Q = &Q;
        const auto rate = transmission_rate(sys, H, opts);
        if (rate.rate < out.ub) {
          out.ub = rate.rate;
          out.source = "codec";
          dp_exact = false;
        }
      }
      if (synthesized >= limits.codec_max_synth) break;
    }
  }

  out.exact = dp_exact;
  if (out.exact)
    out.certificate =
        "multiplicative cover with exhaustive single-cover enumeration";
  else
    out.certificate = "upper bound only";
  return out;
}

}  // namespace ifent
