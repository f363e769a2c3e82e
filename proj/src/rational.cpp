#include "pathprice/rational.hpp"

#include <stdexcept>

namespace pathprice {

namespace {

bool is_int_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int_literal(s)) throw std::invalid_argument("not a rational literal: " + s);
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int_literal(num) || !is_int_literal(den))
    throw std::invalid_argument("not a rational literal: " + s);
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rat(Int(num), d);
}

std::string rat_str(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace pathprice
