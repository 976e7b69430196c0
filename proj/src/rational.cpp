#include "torgamma/rational.hpp"

#include <cstdio>

namespace torgamma {

long to_long(const Int& n) {
  if (n > std::numeric_limits<long>::max() || n < std::numeric_limits<long>::min())
    throw ToricError("Overflow", "integer too large for machine word");
  return n.convert_to<long>();
}

Rational parse_rational(const std::string& s) {
  auto bad = [&] { return ToricError("BadInput", "cannot parse rational '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw bad();
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(t));
    Int p(t.substr(0, slash)), q(t.substr(slash + 1));
    if (q == 0) throw bad();
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string format_rational(const Rational& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

Rational rat_pow(const Rational& b, long e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (b == 0) throw ToricError("DivideByZero", "0^negative");
    return Rational(1) / rat_pow(b, -e);
  }
  Rational acc(1), base = b;
  long k = e;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace torgamma
