/*
 * entropy.hpp
 *
 * Exact r_inv(tau,Q) for a given invariant cover via dynamic programming
 * over (element, steps remaining), spanning policies with their expansion
 * numbers, per-cover entropy tables and the global upper bound.
 */

#ifndef IFENT_ENTROPY_HPP_
#define IFENT_ENTROPY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifent/cover.hpp"
#include "ifent/numbers.hpp"
#include "ifent/system.hpp"

namespace ifent {

/// Compact (tau,Q)-spanning set: an initial family of cover-element
/// indices covering Q, and for every reachable element with k >= 2 steps
/// remaining a successor family whose union contains post_set(A_i, G_i).
/// The families depend only on (element, steps remaining); that loses no
/// optimality because the covering constraint after a prefix constrains
/// only the prefix's last element.
struct SpanningPolicy {
  unsigned horizon = 1;
  std::vector<std::size_t> initial;
  /// succ[k-2][i]: family of element i with k steps remaining, k in
  /// [2;horizon]; disengaged when the element is unreachable at that level.
  std::vector<std::vector<std::optional<std::vector<std::size_t>>>> succ;

  const std::optional<std::vector<std::size_t>>& family(
      std::size_t element, unsigned steps_remaining) const;
};

/// N = #initial * max over branches of the product of successor-family
/// sizes, by the recursion c_1(i) = 1, c_k(i) = #succ(i,k) * max c_{k-1}.
/// Throws IncompletePolicy when a reachable (i,k) lacks a family.
Big expansion_number(const SpanningPolicy& policy);

struct PolicyCheck {
  bool ok = false;
  std::string message;
};

/// Covering conditions: initial family covers Q and every reachable
/// family's union contains its element's post set.
PolicyCheck validate_policy(const FiniteSystem& sys, const TargetSet& Q,
                            const InvariantCover& cover,
                            const SpanningPolicy& policy);

struct ExpandLimits {
  std::uint64_t max_branches = 1u << 20;
};

/// Materializes the branch sequences (element indices, length = horizon).
/// Throws ExplosionGuard past the budget.
std::vector<std::vector<std::size_t>> expand_policy(
    const SpanningPolicy& policy, const ExpandLimits& limits = {});

struct RInvResult {
  Big value;
  SpanningPolicy policy;
};

/// Exact minimum of N over all (tau,Q)-spanning sets in the cover, with a
/// witness policy. Family minimization enumerates irredundant covering
/// subfamilies with branch-and-bound. Throws UncoverableSet when some post
/// set cannot be covered by the cover at all.
RInvResult r_inv(const FiniteSystem& sys, const TargetSet& Q,
                 const InvariantCover& cover, unsigned tau);

struct EntropyReport {
  struct Row {
    unsigned tau = 0;
    Big r;
    LogRate rate;  // (1/tau) log2 r, exact
  };
  std::vector<Row> per_tau;
  LogRate ub;  // min over computed tau
  /// true iff r(tau) = r(1)^tau for every computed tau; then ub equals the
  /// cover's entropy and the certificate says so.
  bool exact = false;
  std::string certificate;
};

EntropyReport cover_entropy(const FiniteSystem& sys, const TargetSet& Q,
                            const InvariantCover& cover, unsigned tau_max);

/// min over covers of r_inv(tau), computed as the DP on the maximal
/// candidate family (which dominates every cover).
/// Throws NotControlledInvariant when no cover exists.
Big min_r_inv_over_covers(const FiniteSystem& sys, const TargetSet& Q,
                          unsigned tau);

struct EntropyLimits {
  unsigned tau_max = 8;
  CoverLimits covers;
  /// also synthesize coder-controllers from optimal policies and use their
  /// transmission rates as upper bounds (data rate theorem)
  bool codec_refine = true;
  std::size_t codec_max_synth = 64;
};

struct EntropyUpperBound {
  LogRate ub = LogRate::infinity();  // infinite iff Q not controlled invariant
  bool exact = false;
  std::optional<InvariantCover> best_cover;
  EntropyReport best_report;       // per-tau table of the best cover
  std::string source;              // "cover-dp", "codec" or "none"
  CoverEnumeration enumeration;
  std::string certificate;
};

EntropyUpperBound invariance_entropy_ub(const FiniteSystem& sys,
                                        const TargetSet& Q,
                                        const EntropyLimits& limits);

}  // namespace ifent

#endif
