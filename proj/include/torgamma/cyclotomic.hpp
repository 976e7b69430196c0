#pragma once

#include "torgamma/rational.hpp"

#include <complex>

namespace torgamma {

// element of Q(zeta_n) on the power basis 1, z, ..., z^(phi(n)-1)
// reduced modulo the n-th cyclotomic polynomial.  Binary operations align
// operands into Q(zeta_lcm) automatically.
class Cyclotomic {
 public:
  Cyclotomic() : n_(1), c_(1, Rational(0)) {}
  explicit Cyclotomic(Rational r, long order = 1);

  static Cyclotomic zero(long order) { return Cyclotomic(Rational(0), order); }
  static Cyclotomic one(long order) { return Cyclotomic(Rational(1), order); }
  // zeta_order^num
  static Cyclotomic root_of_unity(long order, long num);
  // e^{2 pi i turns}; den(turns) must divide order (order = den(turns) if 0)
  static Cyclotomic root_phase(const Rational& turns, long order = 0);

  long order() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyclotomic embedded(long new_order) const;  // requires order() | new_order

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }

  Cyclotomic& operator*=(const Rational& r);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }

  Cyclotomic inverse() const;  // throws ToricError("DivideByZero") on 0

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const;  // throws if not rational

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::complex<double> complex_value() const;

  // coefficients of the n-th cyclotomic polynomial (monic, degree phi(n))
  static const std::vector<Int>& cyclo_poly(long n);
  static long phi(long n);

 private:
  long n_;
  std::vector<Rational> c_;  // size phi(n_)

  static void align(Cyclotomic& a, Cyclotomic& b);
  static Cyclotomic from_poly(std::vector<Rational> p, long order);
};

}  // namespace torgamma
