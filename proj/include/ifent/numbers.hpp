/*
 * numbers.hpp
 *
 * Exact arithmetic used throughout: arbitrary-precision integers and
 * rationals, and rate values of the form log2(r)/tau kept exact.
 */

#ifndef IFENT_NUMBERS_HPP_
#define IFENT_NUMBERS_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ifent {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Big big_pow(const Big& base, unsigned exp);

/// True iff v == 2^e for some e >= 0; e is stored in *exp.
bool power_of_two_exponent(const Big& v, unsigned* exp);

double big_log2(const Big& v);

/// Exact rate value log2(r)/tau with r >= 1, tau >= 1, or +infinity.
/// Comparisons cross-exponentiate (r1^t2 vs r2^t1); no floating point.
class LogRate {
 public:
  LogRate() = default;  // zero: log2(1)/1
  LogRate(Big r, unsigned tau);
  static LogRate infinity();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && r_ == 1; }
  const Big& radix() const { return r_; }
  unsigned horizon() const { return tau_; }

  // value comparison, not representation comparison
  int compare(const LogRate& o) const;
  bool operator==(const LogRate& o) const { return compare(o) == 0; }
  bool operator!=(const LogRate& o) const { return compare(o) != 0; }
  bool operator<(const LogRate& o) const { return compare(o) < 0; }
  bool operator<=(const LogRate& o) const { return compare(o) <= 0; }
  bool operator>(const LogRate& o) const { return compare(o) > 0; }
  bool operator>=(const LogRate& o) const { return compare(o) >= 0; }

  /// True iff the value is rational, i.e. r is a power of two; then the
  /// value equals num/den in lowest terms.
  bool dyadic(std::uint64_t* num, std::uint64_t* den) const;

  double to_double() const;
  /// "p/q", "log2(r)/tau" or "inf".
  std::string exact_string() const;
  /// 12 significant digits, trailing zeros trimmed; "inf" when infinite.
  std::string decimal_string() const;

 private:
  bool infinite_ = false;
  Big r_ = 1;
  unsigned tau_ = 1;
};

std::string rat_string(const Rat& q);
Rat parse_rat(const std::string& text);  // "p/q", integers, decimals
Big rat_ceil(const Rat& q);
std::string decimal_string(double v);

}  // namespace ifent

#endif
