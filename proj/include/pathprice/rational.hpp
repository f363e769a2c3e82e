#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pathprice {

// All instance-level arithmetic is exact. Weights, budgets and profits are
// rationals; the dynamic programs work on plain 64-bit integers internally
// (level weights are small by construction).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or a plain integer literal. Throws std::invalid_argument on
// anything else (in particular on floating-point literals).
Rat parse_rat(const std::string& s);

// "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& r);

inline Int rat_floor(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline long long to_i64(const Int& v) { return static_cast<long long>(v); }

}  // namespace pathprice
