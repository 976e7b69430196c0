#pragma once

#include "torgamma/cyclotomic.hpp"

namespace torgamma {

// truncated Laurent series in eps with coefficients in Q(zeta_n).
// Coefficients are stored for exponents lo .. valid_to; everything above
// valid_to is unknown (O(eps^{valid_to+1})), everything below lo is zero.
class EpsSeries {
 public:
  EpsSeries(long cyclo_order, int valid_to)
      : n_(cyclo_order), lo_(0), valid_(valid_to) {}

  static EpsSeries constant(const Cyclotomic& c, int valid_to);
  // exp(a·eps), computed through eps^valid_to
  static EpsSeries exp_rational(const Rational& a, long cyclo_order, int valid_to);

  long cyclo_order() const { return n_; }
  int valid_to() const { return valid_; }
  int lowest() const;  // exponent of first exactly-nonzero coefficient; valid_+1 if none

  Cyclotomic coeff(int e) const;  // zero outside stored range

  EpsSeries& operator+=(const EpsSeries& o);
  EpsSeries& operator-=(const EpsSeries& o);
  friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
  friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
  EpsSeries operator*(const EpsSeries& o) const;
  EpsSeries& operator*=(const EpsSeries& o) { return *this = *this * o; }
  EpsSeries& operator*=(const Cyclotomic& c);
  EpsSeries& operator*=(const Rational& r);

  // reciprocal; throws ToricError("DivideByZero") when no nonzero coefficient
  // is known.  The leading exponent flips sign and the validity window shrinks
  // accordingly.
  EpsSeries inverse() const;

  // exact constant term; throws ToricError("PoleRemains") if a nonzero
  // negative-exponent coefficient survives, ToricError("TruncationTooSmall")
  // if eps^0 lies outside the validity window.
  Cyclotomic constant_term() const;

 private:
  long n_;
  int lo_;
  int valid_;
  std::vector<Cyclotomic> c_;  // c_[k] = coefficient of eps^{lo_+k}

  void set_coeff(int e, Cyclotomic v);
  void normalize();  // strip exact-zero leading coefficients
};

}  // namespace torgamma
