#include "torgamma/eps_series.hpp"

#include <algorithm>

namespace torgamma {

EpsSeries EpsSeries::constant(const Cyclotomic& c, int valid_to) {
  EpsSeries s(c.order(), valid_to);
  s.set_coeff(0, c);
  return s;
}

EpsSeries EpsSeries::exp_rational(const Rational& a, long cyclo_order, int valid_to) {
  EpsSeries s(cyclo_order, valid_to);
  Rational term(1);
  for (int k = 0; k <= valid_to; ++k) {
    s.set_coeff(k, Cyclotomic(term, cyclo_order));
    term *= a;
    term /= (k + 1);
  }
  return s;
}

int EpsSeries::lowest() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return lo_ + static_cast<int>(k);
  return valid_ + 1;
}

Cyclotomic EpsSeries::coeff(int e) const {
  if (e < lo_ || e >= lo_ + static_cast<int>(c_.size())) return Cyclotomic::zero(n_);
  return c_[e - lo_];
}

void EpsSeries::set_coeff(int e, Cyclotomic v) {
  if (c_.empty()) {
    lo_ = e;
    c_.push_back(std::move(v));
    return;
  }
  if (e < lo_) {
    c_.insert(c_.begin(), static_cast<size_t>(lo_ - e), Cyclotomic::zero(n_));
    lo_ = e;
  } else if (e >= lo_ + static_cast<int>(c_.size())) {
    c_.resize(static_cast<size_t>(e - lo_) + 1, Cyclotomic::zero(n_));
  }
  c_[e - lo_] = std::move(v);
}

void EpsSeries::normalize() {
  size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) ++k;
  if (k > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
    lo_ += static_cast<int>(k);
  }
  // drop stored coefficients beyond the validity window
  if (lo_ + static_cast<int>(c_.size()) - 1 > valid_) {
    long keep = valid_ - lo_ + 1;
    c_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
  }
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
  valid_ = std::min(valid_, o.valid_);
  n_ = to_long(int_lcm(Int(n_), Int(o.n_)));
  for (size_t k = 0; k < o.c_.size(); ++k) {
    int e = o.lo_ + static_cast<int>(k);
    if (e > valid_) break;
    set_coeff(e, coeff(e) + o.c_[k]);
  }
  normalize();
  return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
  valid_ = std::min(valid_, o.valid_);
  n_ = to_long(int_lcm(Int(n_), Int(o.n_)));
  for (size_t k = 0; k < o.c_.size(); ++k) {
    int e = o.lo_ + static_cast<int>(k);
    if (e > valid_) break;
    set_coeff(e, coeff(e) - o.c_[k]);
  }
  normalize();
  return *this;
}

EpsSeries EpsSeries::operator*(const EpsSeries& o) const {
  EpsSeries a = *this, b = o;
  a.normalize();
  b.normalize();
  long n = to_long(int_lcm(Int(a.n_), Int(b.n_)));
  // validity: a = A + O(eps^{va+1}), b = B + O(eps^{vb+1});
  // a·b is known through min(va + lob, vb + loa)
  int va = a.valid_, vb = b.valid_;
  int la = a.c_.empty() ? va + 1 : a.lo_;
  int lb = b.c_.empty() ? vb + 1 : b.lo_;
  int valid = std::min(va + lb, vb + la);
  EpsSeries r(n, valid);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      int e = a.lo_ + static_cast<int>(i) + b.lo_ + static_cast<int>(j);
      if (e > valid) break;
      if (b.c_[j].is_zero()) continue;
      r.set_coeff(e, r.coeff(e) + a.c_[i] * b.c_[j]);
    }
  }
  r.normalize();
  return r;
}

EpsSeries& EpsSeries::operator*=(const Cyclotomic& c) {
  n_ = to_long(int_lcm(Int(n_), Int(c.order())));
  for (auto& x : c_) x *= c;
  normalize();
  return *this;
}

EpsSeries& EpsSeries::operator*=(const Rational& r) {
  for (auto& x : c_) x *= r;
  normalize();
  return *this;
}

EpsSeries EpsSeries::inverse() const {
  EpsSeries a = *this;
  a.normalize();
  if (a.c_.empty())
    throw ToricError("DivideByZero", "inverse of eps-series with no known nonzero term");
  const int l = a.lo_;
  const int terms = a.valid_ - l;  // number of known terms beyond the leading one
  // write a = c·eps^l·(1 + u); invert the unit part by the geometric series
  Cyclotomic lead = a.c_[0];
  Cyclotomic lead_inv = lead.inverse();
  EpsSeries r(a.n_, terms - l);  // result exponents -l .. terms-l
  r.set_coeff(-l, lead_inv);
  // Newton-free direct recurrence: (sum_k r_k eps^{k-l}) · a = 1
  // r_m (coefficient at exponent m-l) for m = 1..terms:
  //   r_m = -lead_inv · sum_{j=1..m} a_{l+j} · r_{m-j}
  std::vector<Cyclotomic> rc(static_cast<size_t>(std::max(terms, 0)) + 1, Cyclotomic::zero(a.n_));
  rc[0] = lead_inv;
  for (int m = 1; m <= terms; ++m) {
    Cyclotomic acc = Cyclotomic::zero(a.n_);
    for (int j = 1; j <= m; ++j) acc += a.coeff(l + j) * rc[m - j];
    rc[m] = -(lead_inv * acc);
    r.set_coeff(m - l, rc[m]);
  }
  r.normalize();
  return r;
}

Cyclotomic EpsSeries::constant_term() const {
  if (valid_ < 0)
    throw ToricError("TruncationTooSmall", "eps^0 outside validity window");
  for (size_t k = 0; k < c_.size(); ++k) {
    int e = lo_ + static_cast<int>(k);
    if (e >= 0) break;
    if (!c_[k].is_zero())
      throw ToricError("PoleRemains", "nonzero coefficient at eps^" + std::to_string(e));
  }
  return coeff(0);
}

}  // namespace torgamma
