#include "ifent/numbers.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ifent/errors.hpp"

namespace ifent {

Big big_pow(const Big& base, unsigned exp) {
  Big result = 1;
  Big b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

bool power_of_two_exponent(const Big& v, unsigned* exp) {
  if (v < 1) return false;
  const unsigned msb = boost::multiprecision::msb(v);
  if ((Big(1) << msb) != v) return false;
  if (exp) *exp = msb;
  return true;
}

double big_log2(const Big& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb <= 900) return std::log2(v.convert_to<double>());
  const Big scaled = v >> (msb - 64);
  return std::log2(scaled.convert_to<double>()) + double(msb - 64);
}

LogRate::LogRate(Big r, unsigned tau) : r_(std::move(r)), tau_(tau) {
  if (r_ < 1 || tau_ < 1) throw Error("LogRate requires r >= 1 and tau >= 1");
}

LogRate LogRate::infinity() {
  LogRate v;
  v.infinite_ = true;
  return v;
}

int LogRate::compare(const LogRate& o) const {
  if (infinite_ && o.infinite_) return 0;
  if (infinite_) return 1;
  if (o.infinite_) return -1;
  const Big lhs = big_pow(r_, o.tau_);
  const Big rhs = big_pow(o.r_, tau_);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

bool LogRate::dyadic(std::uint64_t* num, std::uint64_t* den) const {
  if (infinite_) return false;
  unsigned e = 0;
  if (!power_of_two_exponent(r_, &e)) return false;
  std::uint64_t n = e, d = tau_;
  const std::uint64_t g = std::gcd(n, d);
  if (num) *num = g ? n / g : 0;
  if (den) *den = g ? d / g : 1;
  if (n == 0) {
    if (num) *num = 0;
    if (den) *den = 1;
  }
  return true;
}

double LogRate::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return big_log2(r_) / double(tau_);
}

std::string LogRate::exact_string() const {
  if (infinite_) return "inf";
  std::uint64_t n = 0, d = 1;
  if (dyadic(&n, &d)) {
    std::ostringstream os;
    os << n;
    if (d != 1) os << "/" << d;
    return os.str();
  }
  std::ostringstream os;
  os << "log2(" << r_ << ")/" << tau_;
  return os.str();
}

std::string LogRate::decimal_string() const {
  if (infinite_) return "inf";
  return ifent::decimal_string(to_double());
}

std::string decimal_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string rat_string(const Rat& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1)
    os << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

Rat parse_rat(const std::string& text) {
  const auto bad = [&] { return Error("cannot parse rational '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const Big num(text.substr(0, slash));
      const Big den(text.substr(slash + 1));
      if (den == 0) throw bad();
      return Rat(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(Big(text));
    // decimal: sign, integer part, fractional part
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    const Big num(digits);
    return Rat(num, big_pow(10, unsigned(text.size() - dot - 1)));
  } catch (const std::exception&) {
    throw bad();
  }
}

Big rat_ceil(const Rat& q) {
  const Big num = boost::multiprecision::numerator(q);
  const Big den = boost::multiprecision::denominator(q);
  Big quot = num / den;
  if (quot * den < num) ++quot;  // num/den truncates toward zero
  return quot;
}

}  // namespace ifent
