#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torgamma {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

// error with a stable machine-readable code ("NonSimplicial", "NotGorenstein", ...)
struct ToricError : std::runtime_error {
  std::string code;
  ToricError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rational& r) { return floor_div(rat_num(r), rat_den(r)); }
inline Rational frac_part(const Rational& r) { return r - Rational(rat_floor(r)); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

long to_long(const Int& n);

// "p/q" or "p"; optional sign; q > 0 after normalization
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& r);

Rational rat_pow(const Rational& b, long e);

// 15 significant digits, shortest form (%.15g)
std::string format_double(double x);

}  // namespace torgamma
