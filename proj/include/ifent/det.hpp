/*
 * det.hpp
 *
 * Deterministic invariance entropy as an independent oracle: minimal
 * spanning-set cardinality via exact set cover over input sequences.
 */

#ifndef IFENT_DET_HPP_
#define IFENT_DET_HPP_

#include <string>
#include <vector>

#include "ifent/numbers.hpp"
#include "ifent/system.hpp"

namespace ifent {

struct DetLimits {
  std::size_t max_q = 12;       // exact cover gated to #Q <= this
  std::size_t max_seqs = 4096;  // and #U^tau <= this
};

struct RDetResult {
  bool finite = false;  // false: some state has no safe sequence (r = inf)
  Big value;
  std::vector<std::vector<InputId>> witnesses;
  bool exact = true;  // false when only the greedy upper bound was computed
};

/// r_det(tau,Q): minimum number of input sequences nu in U^tau such that
/// every x in Q has one keeping its orbit inside Q through step tau.
/// Exact branch-and-bound set cover within DetLimits, greedy beyond.
/// Throws NotDeterministic.
RDetResult r_det(const FiniteSystem& sys, const TargetSet& Q, unsigned tau,
                 const DetLimits& limits = {});

struct DetSpanReport {
  struct Row {
    unsigned tau = 0;
    bool finite = false;
    Big r;
    LogRate rate;
    std::vector<std::vector<InputId>> witnesses;
    bool exact = true;
  };
  std::vector<Row> per_tau;
  LogRate ub = LogRate::infinity();
  bool all_exact = true;
  std::string label;  // "exact" or "upper bound only"
};

DetSpanReport h_det_bounds(const FiniteSystem& sys, const TargetSet& Q,
                           unsigned tau_max, const DetLimits& limits = {});

}  // namespace ifent

#endif
