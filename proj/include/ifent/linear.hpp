/*
 * linear.hpp
 *
 * Uncertain linear systems: the universal and static lower bounds on the
 * invariance entropy, the scalar static synthesis with interval
 * verification, the static-vs-dynamic loss bound, and the quotient
 * abstraction into a finite system.
 */

#ifndef IFENT_LINEAR_HPP_
#define IFENT_LINEAR_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifent/numbers.hpp"
#include "ifent/system.hpp"

namespace ifent {

/// The scalars the volume bounds depend on. B drops out of both bounds and
/// has no representation here.
struct LinearBoundInput {
  unsigned n = 1;     // dimension, >= 1
  Rat abs_det_A = 0;  // >= 0
  Rat mu_Q = 1;       // > 0
  Rat mu_W = 0;       // 0 <= mu_W <= mu_Q

  void validate() const;  // throws Error on violated invariants
};

/// Extended value log2(arg): finite with positive rational arg, +inf, or
/// "no bound" (-inf, the |det A| = 0 case). Exact when arg is rational;
/// otherwise only the double approximation is meaningful.
struct BoundValue {
  enum class Kind { no_bound, finite, infinite } kind = Kind::finite;
  bool exact = true;
  Rat arg = 1;       // 2^value when finite and exact
  double approx = 0;

  bool is_finite() const { return kind == Kind::finite; }
  std::string to_string() const;  // "log2(p/q)" exact forms, decimals
};

/// log2( |det A| mu(Q) / (mu(Q)^{1/n} - mu(W)^{1/n})^n ); +inf when
/// mu_W = mu_Q with abs_det_A > 0, no bound when abs_det_A = 0.
BoundValue entropy_lower_bound(const LinearBoundInput& in);

/// Same quantity under a ceiling: log2(ceil(...)). Exact rational ceiling
/// for n = 1 and perfect n-th power measures; bracketed n-th roots
/// otherwise, refined until the ceiling is determined.
BoundValue static_rate_lower_bound(const LinearBoundInput& in);

/// Scalar inclusion a*x + u + [w1,w2] with constraint interval [q1,q2];
/// hypotheses q1 < w1 <= w2 < q2, a != 0.
struct ScalarPlant {
  Rat a;
  Rat w1, w2;
  Rat q1, q2;

  void validate() const;  // throws Error on violated hypotheses
  Rat delta_q() const { return q2 - q1; }
  Rat delta_w() const { return w2 - w1; }
};

struct IntervalCover {
  std::vector<std::pair<Rat, Rat>> cells;  // closed intervals, ascending
  std::vector<Rat> inputs;                 // H(C_i) per cell
  Big m = 1;                               // cell count
  Rat d = 0;                               // cell width
};

/// The quantizer construction: m = ceil(|a| dq / (dq - dw)) cells of width
/// dq/m around the interval midpoints, inputs recentering each cell image.
/// The result verifies and its rate log2 m attains the static lower bound.
IntervalCover synth_scalar_static(const ScalarPlant& p);

struct ScalarCoverCheck {
  bool ok = false;
  bool covers = false;
  bool invariant = false;
  std::optional<std::size_t> failing_cell;
  std::string message;
};

/// Closed-interval arithmetic check of covering and invariance; exact on
/// rational data. `slack` widens the containment for inexact inputs.
ScalarCoverCheck verify_scalar_cover(const ScalarPlant& p,
                                     const IntervalCover& c,
                                     const Rat& slack = 0);

struct LossBound {
  bool ok = false;
  /// loss actually incurred: static - max(lb, 0)
  BoundValue loss;
  /// margin left under the corollary cap: max(lb, 0) + 1 - static
  BoundValue headroom;
};

/// Checks static <= lb' + log2(1 + 2^{-lb'}) <= lb' + 1 with
/// lb' = max(lb, 0) (entropy is nonnegative; the raw bound may not be).
/// Requires both values finite and exact.
LossBound loss_bound_check(const BoundValue& lb, const BoundValue& static_rate);

struct ScalarAbstraction {
  FiniteSystem sys;
  TargetSet Q;                 // all cells; the sink is the extra state
  StateId sink = 0;
  std::vector<Rat> input_values;  // deduplicated cell inputs, ascending
};

/// Finite quotient: one state per cell plus a sink; cell i under input v
/// reaches every cell its image a*C_i + v + W touches, and the sink if the
/// image escapes Q. Closed intervals, so boundary contact counts.
ScalarAbstraction abstract_scalar(const ScalarPlant& p, const IntervalCover& c);

}  // namespace ifent

#endif
