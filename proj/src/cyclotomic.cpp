#include "torgamma/cyclotomic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

namespace torgamma {

namespace {

// exact division of integer polynomials (remainder must vanish); little-endian
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  const Int lead = den.back();
  for (size_t i = q.size(); i-- > 0;) {
    Int c = num[i + den.size() - 1];
    if (c == 0) continue;
    if (c % lead != 0) throw ToricError("Internal", "inexact polynomial division");
    q[i] = c / lead;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw ToricError("Internal", "nonzero remainder in polynomial division");
  return q;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

void poly_trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// p mod q (q monic up to leading unit), rational coefficients
std::vector<Rational> poly_mod(std::vector<Rational> p, const std::vector<Rational>& q) {
  poly_trim(p);
  while (p.size() >= q.size()) {
    Rational f = p.back() / q.back();
    size_t off = p.size() - q.size();
    for (size_t j = 0; j < q.size(); ++j) p[off + j] -= f * q[j];
    poly_trim(p);
  }
  return p;
}

}  // namespace

long Cyclotomic::phi(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

const std::vector<Int>& Cyclotomic::cyclo_poly(long n) {
  static std::map<long, std::vector<Int>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::function<const std::vector<Int>&(long)> get = [&](long m) -> const std::vector<Int>& {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    std::vector<Int> num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d)
      if (m % d == 0) num = poly_div_exact(std::move(num), get(d));
    return cache.emplace(m, std::move(num)).first->second;
  };
  return get(n);
}

Cyclotomic Cyclotomic::from_poly(std::vector<Rational> p, long order) {
  const auto& phi_poly = cyclo_poly(order);
  std::vector<Rational> q(phi_poly.begin(), phi_poly.end());
  p = poly_mod(std::move(p), q);
  Cyclotomic c;
  c.n_ = order;
  c.c_.assign(static_cast<size_t>(phi(order)), Rational(0));
  for (size_t i = 0; i < p.size(); ++i) c.c_[i] = p[i];
  return c;
}

Cyclotomic::Cyclotomic(Rational r, long order) : n_(order) {
  if (order < 1) throw ToricError("BadInput", "cyclotomic order must be positive");
  c_.assign(static_cast<size_t>(phi(order)), Rational(0));
  c_[0] = std::move(r);
}

Cyclotomic Cyclotomic::root_of_unity(long order, long num) {
  num %= order;
  if (num < 0) num += order;
  std::vector<Rational> p(static_cast<size_t>(num) + 1, Rational(0));
  p[num] = 1;
  return from_poly(std::move(p), order);
}

Cyclotomic Cyclotomic::root_phase(const Rational& turns, long order) {
  Rational t = frac_part(turns);
  long den = to_long(rat_den(t));
  long num = to_long(rat_num(t));
  if (order == 0) order = den;
  if (order % den != 0)
    throw ToricError("BadInput", "phase denominator does not divide cyclotomic order");
  return root_of_unity(order, num * (order / den));
}

Cyclotomic Cyclotomic::embedded(long new_order) const {
  if (new_order == n_) return *this;
  if (new_order % n_ != 0)
    throw ToricError("BadInput", "cyclotomic embedding requires divisible orders");
  long k = new_order / n_;
  std::vector<Rational> p(static_cast<size_t>((c_.size() - 1) * k) + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) p[i * k] = c_[i];
  return from_poly(std::move(p), new_order);
}

void Cyclotomic::align(Cyclotomic& a, Cyclotomic& b) {
  if (a.n_ == b.n_) return;
  long n = to_long(int_lcm(Int(a.n_), Int(b.n_)));
  a = a.embedded(n);
  b = b.embedded(n);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  Cyclotomic rhs = o;
  align(*this, rhs);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  Cyclotomic rhs = o;
  align(*this, rhs);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  Cyclotomic rhs = o;
  align(*this, rhs);
  std::vector<Rational> p = poly_mul(c_, rhs.c_);
  *this = from_poly(std::move(p), n_);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (auto& c : c_) c *= r;
  return *this;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_part() const {
  if (!is_rational()) throw ToricError("NonInteger", "cyclotomic value is not rational");
  return c_[0];
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  Cyclotomic a = *this, b = o;
  align(a, b);
  return a.c_ == b.c_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw ToricError("DivideByZero", "inverse of zero cyclotomic");
  if (is_rational()) {
    Cyclotomic r = zero(n_);
    r.c_[0] = Rational(1) / c_[0];
    return r;
  }
  // extended Euclid in Q[x] against Phi_n: s·f + t·Phi = gcd = const
  const auto& phi_poly = cyclo_poly(n_);
  std::vector<Rational> r0(phi_poly.begin(), phi_poly.end());
  std::vector<Rational> r1(c_);
  poly_trim(r1);
  std::vector<Rational> s0{}, s1{Rational(1)};  // coefficients of f
  while (true) {
    // divide r0 by r1
    std::vector<Rational> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
    std::vector<Rational> rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rational f = rem.back() / r1.back();
      size_t off = rem.size() - r1.size();
      q[off] = f;
      for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= f * r1[j];
      poly_trim(rem);
    }
    // s_next = s0 - q·s1
    std::vector<Rational> qs = poly_mul(q, s1);
    std::vector<Rational> s2(std::max(s0.size(), qs.size()), Rational(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    poly_trim(s2);
    if (rem.empty()) {
      // r1 is the gcd; must be a nonzero constant since Phi_n is irreducible
      if (r1.size() != 1)
        throw ToricError("Internal", "cyclotomic gcd not constant");
      std::vector<Rational> inv = s1;
      Rational scale = Rational(1) / r1[0];
      for (auto& c : inv) c *= scale;
      return from_poly(std::move(inv), n_);
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
}

std::complex<double> Cyclotomic::complex_value() const {
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(n_);
  const std::complex<double> z(std::cos(theta), std::sin(theta));
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * z + to_double(c_[i]);
  return acc;
}

}  // namespace torgamma
