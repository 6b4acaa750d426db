// Arithmetic modes: exact rationals for oracle identities, doubles (log-domain
// where magnitudes demand it) for production paths.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "hcps/errors.hpp"

namespace hcps {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// q^e for integer e (negative exponents allowed; q != 0 when e < 0).
inline Rat rat_pow(const Rat& q, long long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long long k = inv ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Rat base = q, acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (inv) {
    if (acc == 0) throw ConfigError("rat_pow: zero base with negative exponent");
    acc = Rat(1) / acc;
  }
  return acc;
}

// log of a positive rational whose magnitude may far exceed double range.
inline double log_rat(const Rat& q) {
  if (q <= 0) throw ConfigError("log_rat: non-positive argument");
  BigFloat f(q);
  return static_cast<double>(log(f));
}

inline double to_double(const Rat& q) { return static_cast<double>(BigFloat(q)); }

// Exact conversion: every finite double is a rational.
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw ConfigError("rat_from_double: non-finite");
  Rat r(x);
  return r;
}

// Parse decimal strings like "3", "1/2", "0.25" exactly.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat num(BigInt(s.substr(0, slash)));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ConfigError("parse_rat: zero denominator in '" + s + "'");
    return num / Rat(den);
  }
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    Rat mant = parse_rat(s.substr(0, epos));
    long long ex = std::stoll(s.substr(epos + 1));
    return mant * rat_pow(Rat(10), ex);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(BigInt(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  long long frac_len = static_cast<long long>(s.size() - dot - 1);
  return Rat(BigInt(digits)) / rat_pow(Rat(10), frac_len);
}

// Kahan-compensated accumulator for signed double sums.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace hcps
