#include "ifent/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

namespace {

double rat_double(const Rat& q) {
  return q.convert_to<double>();
}

/// floor of the integer n-th root
Big integer_nth_root(const Big& v, unsigned n) {
  if (v <= 1 || n == 1) return v;
  Big lo = 0, hi = v;
  while (lo < hi) {
    const Big mid = (lo + hi + 1) / 2;
    if (big_pow(mid, n) <= v)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

/// v^{1/n} when it is rational (perfect n-th power of a rational)
std::optional<Rat> exact_nth_root(const Rat& v, unsigned n) {
  const Big num = boost::multiprecision::numerator(v);
  const Big den = boost::multiprecision::denominator(v);
  const Big rn = integer_nth_root(num, n);
  const Big rd = integer_nth_root(den, n);
  if (big_pow(rn, n) == num && big_pow(rd, n) == den) return Rat(rn, rd);
  return std::nullopt;
}

/// brackets v^{1/n} within 1/2^bits
std::pair<Rat, Rat> nth_root_bracket(const Rat& v, unsigned n, unsigned bits) {
  if (v == 0) return {0, 0};
  const Big scale = Big(1) << bits;
  // floor of (v * 2^(n*bits))^(1/n) gives the root scaled by 2^bits
  const Rat scaled = v * Rat(big_pow(scale, n));
  const Big num = boost::multiprecision::numerator(scaled);
  const Big den = boost::multiprecision::denominator(scaled);
  const Big lo = integer_nth_root(num / den, n);
  return {Rat(lo, scale), Rat(lo + 1, scale)};
}

}  // namespace

void LinearBoundInput::validate() const {
  if (n < 1) throw Error("dimension must be positive");
  if (abs_det_A < 0) throw Error("|det A| must be nonnegative");
  if (mu_Q <= 0) throw Error("mu(Q) must be positive");
  if (mu_W < 0 || mu_W > mu_Q)
    throw Error("mu(W) must satisfy 0 <= mu(W) <= mu(Q)");
}

std::string BoundValue::to_string() const {
  switch (kind) {
    case Kind::no_bound:
      return "no bound";
    case Kind::infinite:
      return "inf";
    case Kind::finite:
      break;
  }
  if (exact) {
    // integer-valued logs print as plain numbers
    const Big num = boost::multiprecision::numerator(arg);
    const Big den = boost::multiprecision::denominator(arg);
    unsigned en = 0, ed = 0;
    if (power_of_two_exponent(num, &en) && power_of_two_exponent(den, &ed)) {
      std::ostringstream os;
      os << (long(en) - long(ed));
      return os.str();
    }
    std::ostringstream os;
    os << "log2(" << rat_string(arg) << ")~" << decimal_string(approx);
    return os.str();
  }
  return decimal_string(approx);
}

namespace {

BoundValue finite_bound(const Rat& arg) {
  BoundValue v;
  v.kind = BoundValue::Kind::finite;
  v.exact = true;
  v.arg = arg;
  v.approx = std::log2(rat_double(arg));
  return v;
}

BoundValue approx_bound(double value) {
  BoundValue v;
  v.kind = BoundValue::Kind::finite;
  v.exact = false;
  v.approx = value;
  return v;
}

}  // namespace

BoundValue entropy_lower_bound(const LinearBoundInput& in) {
  in.validate();
  BoundValue v;
  if (in.abs_det_A == 0) {
    v.kind = BoundValue::Kind::no_bound;
    v.approx = -std::numeric_limits<double>::infinity();
    return v;
  }
  if (in.mu_W == in.mu_Q) {
    v.kind = BoundValue::Kind::infinite;
    v.approx = std::numeric_limits<double>::infinity();
    return v;
  }
  if (in.mu_W == 0) return finite_bound(in.abs_det_A);
  if (in.n == 1)
    return finite_bound(in.abs_det_A * in.mu_Q / (in.mu_Q - in.mu_W));
  const auto rq = exact_nth_root(in.mu_Q, in.n);
  const auto rw = exact_nth_root(in.mu_W, in.n);
  if (rq && rw) {
    Rat diff = *rq - *rw;
    Rat denom = 1;
    for (unsigned i = 0; i < in.n; ++i) denom *= diff;
    return finite_bound(in.abs_det_A * in.mu_Q / denom);
  }
  const double qroot = std::pow(rat_double(in.mu_Q), 1.0 / in.n);
  const double wroot = std::pow(rat_double(in.mu_W), 1.0 / in.n);
  return approx_bound(std::log2(rat_double(in.abs_det_A) *
                                rat_double(in.mu_Q) /
                                std::pow(qroot - wroot, in.n)));
}

BoundValue static_rate_lower_bound(const LinearBoundInput& in) {
  BoundValue lb = entropy_lower_bound(in);
  if (lb.kind != BoundValue::Kind::finite) return lb;
  if (lb.exact) return finite_bound(Rat(rat_ceil(lb.arg)));

  // bracket the n-th roots until the ceiling is pinned down; an irrational
  // argument cannot sit exactly on an integer, so this terminates
  for (unsigned bits = 16; bits <= 4096; bits *= 2) {
    const auto [qlo, qhi] = nth_root_bracket(in.mu_Q, in.n, bits);
    const auto [wlo, whi] = nth_root_bracket(in.mu_W, in.n, bits);
    const Rat dlo = qlo - whi;
    const Rat dhi = qhi - wlo;
    if (dlo <= 0) continue;
    Rat dlo_n = 1, dhi_n = 1;
    for (unsigned i = 0; i < in.n; ++i) {
      dlo_n *= dlo;
      dhi_n *= dhi;
    }
    const Rat arg_lo = in.abs_det_A * in.mu_Q / dhi_n;
    const Rat arg_hi = in.abs_det_A * in.mu_Q / dlo_n;
    if (rat_ceil(arg_lo) == rat_ceil(arg_hi))
      return finite_bound(Rat(rat_ceil(arg_lo)));
  }
  BoundValue v = approx_bound(std::log2(std::ceil(std::exp2(lb.approx))));
  return v;
}

void ScalarPlant::validate() const {
  if (a == 0) throw Error("a must be nonzero");
  if (w1 > w2) throw Error("w1 must not exceed w2");
  if (!(q1 < w1 && w2 < q2))
    throw Error("the constraint interval must satisfy q1 < w1 <= w2 < q2");
}

IntervalCover synth_scalar_static(const ScalarPlant& p) {
  p.validate();
  const Rat dq = p.delta_q();
  const Rat dw = p.delta_w();
  const Rat abs_a = p.a < 0 ? Rat(-p.a) : p.a;
  const Big m = rat_ceil(abs_a * dq / (dq - dw));
  const Rat d = dq / Rat(m);
  const Rat q_c = (p.q1 + p.q2) / 2;
  const Rat w_c = (p.w1 + p.w2) / 2;

  IntervalCover cover;
  cover.m = m;
  cover.d = d;
  const bool even = (m % 2) == 0;
  const Big half = m / 2;  // m even: i in [-m/2; m/2); odd: i in [-(m-1)/2; (m-1)/2]
  for (Big i = even ? -half : -half; i <= (even ? half - 1 : half); ++i) {
    Rat lo, hi;
    if (even) {
      lo = q_c + Rat(i) * d;
      hi = q_c + Rat(i + 1) * d;
    } else {
      lo = q_c + (Rat(i) - Rat(1, 2)) * d;
      hi = q_c + (Rat(i) + Rat(1, 2)) * d;
    }
    lo = std::max(lo, p.q1);
    hi = std::min(hi, p.q2);
    cover.cells.emplace_back(lo, hi);
    const Rat offset = even ? (Rat(i) + Rat(1, 2)) * d : Rat(i) * d;
    cover.inputs.push_back(q_c - p.a * q_c - w_c - p.a * offset);
  }
  return cover;
}

ScalarCoverCheck verify_scalar_cover(const ScalarPlant& p,
                                     const IntervalCover& c,
                                     const Rat& slack) {
  ScalarCoverCheck res;
  if (c.cells.empty() || c.cells.size() != c.inputs.size()) {
    res.message = "malformed cover";
    return res;
  }
  // covering: the closed cells, in order, must tile [q1, q2]
  auto cells = c.cells;
  std::sort(cells.begin(), cells.end());
  res.covers = cells.front().first <= p.q1 + slack;
  Rat reach = cells.front().second;
  for (std::size_t i = 1; i < cells.size() && res.covers; ++i) {
    if (cells[i].first > reach + slack) res.covers = false;
    reach = std::max(reach, cells[i].second);
  }
  if (reach + slack < p.q2) res.covers = false;
  if (!res.covers) res.message = "cells do not cover the constraint interval";

  res.invariant = true;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    const auto& [lo, hi] = c.cells[i];
    const Rat img_lo = std::min(p.a * lo, p.a * hi) + c.inputs[i] + p.w1;
    const Rat img_hi = std::max(p.a * lo, p.a * hi) + c.inputs[i] + p.w2;
    if (img_lo < p.q1 - slack || img_hi > p.q2 + slack) {
      res.invariant = false;
      res.failing_cell = i;
      std::ostringstream os;
      os << "cell " << i << " maps to [" << rat_string(img_lo) << ","
         << rat_string(img_hi) << "] outside the constraint interval";
      res.message = os.str();
      break;
    }
  }
  res.ok = res.covers && res.invariant;
  if (res.ok) res.message = "ok";
  return res;
}

LossBound loss_bound_check(const BoundValue& lb,
                           const BoundValue& static_rate) {
  if (!lb.is_finite() || !static_rate.is_finite() || !lb.exact ||
      !static_rate.exact)
    throw Error("loss_bound_check requires finite exact values");
  LossBound res;
  // entropy is nonnegative; clamp the proxy from below
  const Rat proxy = std::max(lb.arg, Rat(1));
  const Rat s = static_rate.arg;
  // static <= proxy' + log2(1 + 1/proxy') <= proxy' + 1, multiplicatively
  res.ok = s <= proxy + 1 && proxy + 1 <= 2 * proxy;
  res.loss = finite_bound(s / proxy);
  res.headroom = finite_bound(2 * proxy / s);
  return res;
}

ScalarAbstraction abstract_scalar(const ScalarPlant& p,
                                  const IntervalCover& c) {
  const auto check = verify_scalar_cover(p, c);
  if (!check.ok)
    throw Error("abstract_scalar requires a verified cover: " + check.message);

  ScalarAbstraction out;
  auto inputs = c.inputs;
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  out.input_values = inputs;

  const std::size_t ncells = c.cells.size();
  out.sink = StateId(ncells);
  out.sys.num_states = ncells + 1;
  out.sys.num_inputs = inputs.size();
  out.sys.trans.assign(out.sys.num_states * out.sys.num_inputs, {});

  for (std::size_t i = 0; i < ncells; ++i) {
    const auto& [lo, hi] = c.cells[i];
    for (std::size_t ui = 0; ui < inputs.size(); ++ui) {
      const Rat img_lo = std::min(p.a * lo, p.a * hi) + inputs[ui] + p.w1;
      const Rat img_hi = std::max(p.a * lo, p.a * hi) + inputs[ui] + p.w2;
      StateSet succ;
      for (std::size_t j = 0; j < ncells; ++j) {
        const auto& [jlo, jhi] = c.cells[j];
        if (img_hi >= jlo && jhi >= img_lo) succ.insert(StateId(j));
      }
      if (img_lo < p.q1 || img_hi > p.q2) succ.insert(out.sink);
      out.sys.trans[i * inputs.size() + ui] = std::move(succ);
    }
    out.Q.members.insert(StateId(i));
  }
  for (std::size_t ui = 0; ui < inputs.size(); ++ui)
    out.sys.trans[ncells * inputs.size() + ui] = StateSet{out.sink};
  return out;
}

}  // namespace ifent
